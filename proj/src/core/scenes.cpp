#include "core/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/cloud.hpp"
#include "core/error.hpp"
#include "core/objective.hpp"
#include "core/projection.hpp"
#include "core/raster.hpp"
#include "core/rng.hpp"

namespace sparkproj {

namespace {

using json = nlohmann::json;

Vec3 read_vec3(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) {
    fail(ErrorCode::kBadSpec, "\"" + field + "\" must be a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double surface_area(const Vec3& size) {
  return 2.0 * (size.x * size.y + size.x * size.z + size.y * size.z);
}

}  // namespace

SceneSpec parse_scene_spec(const std::string& json_text,
                           const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kBadSpec, origin + ": " + e.what());
  }
  try {
    SceneSpec spec;
    spec.seed = root.value("seed", 0ULL);
    if (root.contains("room")) spec.room_extents = read_vec3(root["room"], "room");
    spec.wall_thickness = root.value("wall_thickness", 0.0);
    spec.point_density = root.value("point_density", 0.0);
    if (root.contains("boxes")) {
      for (const json& jb : root["boxes"]) {
        BoxSpec box;
        box.center = read_vec3(jb.at("center"), "center");
        box.size = read_vec3(jb.at("size"), "size");
        box.label = jb.value("label", 0);
        if (box.label < 0) {
          fail(ErrorCode::kBadSpec, origin + ": negative box label");
        }
        if (jb.contains("color")) {
          const Vec3 c = read_vec3(jb["color"], "color");
          box.color = {c.x, c.y, c.z};
        }
        box.points = jb.value("points", 0ULL);
        spec.boxes.push_back(box);
      }
    }
    return spec;
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    fail(ErrorCode::kBadSpec, origin + ": " + e.what());
  }
}

SceneSpec load_scene_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::kIo, "cannot open " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene_spec(text.str(), path);
}

std::string serialize_scene_spec(const SceneSpec& spec) {
  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  out << "{\n";
  out << "  \"seed\": " << spec.seed << ",\n";
  out << "  \"room\": [" << num(spec.room_extents.x) << ", "
      << num(spec.room_extents.y) << ", " << num(spec.room_extents.z) << "],\n";
  out << "  \"wall_thickness\": " << num(spec.wall_thickness) << ",\n";
  out << "  \"point_density\": " << num(spec.point_density) << ",\n";
  out << "  \"boxes\": [\n";
  for (size_t i = 0; i < spec.boxes.size(); ++i) {
    const BoxSpec& b = spec.boxes[i];
    out << "    {\"center\": [" << num(b.center.x) << ", " << num(b.center.y)
        << ", " << num(b.center.z) << "], \"size\": [" << num(b.size.x) << ", "
        << num(b.size.y) << ", " << num(b.size.z) << "], \"label\": " << b.label
        << ", \"color\": [" << num(b.color.r) << ", " << num(b.color.g) << ", "
        << num(b.color.b) << "], \"points\": " << b.points << "}"
        << (i + 1 < spec.boxes.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"two-wall"};
  return names;
}

SceneSpec preset_scene(const std::string& name) {
  if (name == "two-wall") {
    // A front wall occluding an identical rear wall on the +X side, over a
    // floor that fixes the room bounds. Under straight rays most rear-wall
    // points land on pixels the front wall already owns; bending the rays
    // moves the rear wall into empty image space.
    SceneSpec spec;
    spec.seed = 42;
    spec.room_extents = {2.0, 2.0, 1.76};
    spec.wall_thickness = 0.0;
    spec.point_density = 100.0;
    spec.boxes = {
        {{0.3, 0.0, -0.18}, {0.0, 0.36, 0.36}, 1, {0.80, 0.20, 0.20}, 3000},
        {{0.8, 0.0, -0.18}, {0.0, 0.36, 0.36}, 2, {0.20, 0.30, 0.80}, 3000},
    };
    return spec;
  }
  fail(ErrorCode::kBadSpec, "unknown preset \"" + name + "\"");
}

namespace {

void sample_box_surface(const BoxSpec& box, size_t count, Rng& rng,
                        std::vector<Point>& points) {
  // Face order: +X, -X, +Y, -Y, +Z, -Z; picked by cumulative area.
  const double face_areas[3] = {box.size.y * box.size.z,
                                box.size.x * box.size.z,
                                box.size.x * box.size.y};
  double cumulative[6];
  double total = 0.0;
  for (int f = 0; f < 6; ++f) {
    total += face_areas[f / 2];
    cumulative[f] = total;
  }
  if (total <= 0.0) {
    fail(ErrorCode::kBadSpec, "degenerate box (zero size on all axes)");
  }
  for (size_t i = 0; i < count; ++i) {
    const double pick = rng.next_unit() * total;
    int face = 0;
    while (face < 5 && pick >= cumulative[face]) ++face;
    const int axis = face / 2;
    const double sign = face % 2 == 0 ? 1.0 : -1.0;
    const double a = rng.next_unit() - 0.5;
    const double b = rng.next_unit() - 0.5;
    Vec3 offset;
    offset[axis] = sign * box.size[axis] / 2.0;
    const int axis_a = axis == 0 ? 1 : 0;
    const int axis_b = axis == 2 ? 1 : 2;
    offset[axis_a] = a * box.size[axis_a];
    offset[axis_b] = b * box.size[axis_b];
    Point p;
    p.position = {box.center.x + offset.x, box.center.y + offset.y,
                  box.center.z + offset.z};
    p.color = box.color;
    p.label = box.label;
    points.push_back(p);
  }
}

}  // namespace

PointCloud synth_room(const SceneSpec& spec) {
  Rng rng(spec.seed);
  PointCloud cloud;
  int max_label = -1;

  const bool has_floor = spec.room_extents.x > 0.0 &&
                         spec.room_extents.y > 0.0 && spec.point_density > 0.0;
  if (has_floor) {
    BoxSpec floor;
    floor.center = {0.0, 0.0, -spec.room_extents.z / 2.0};
    floor.size = {spec.room_extents.x, spec.room_extents.y,
                  spec.wall_thickness};
    floor.label = 0;
    floor.color = {0.5, 0.5, 0.5};
    floor.points = static_cast<size_t>(
        std::llround(spec.point_density * floor.size.x * floor.size.y));
    if (floor.points == 0) floor.points = 1;
    sample_box_surface(floor, floor.points, rng, cloud.points);
    max_label = std::max(max_label, floor.label);
  }

  for (const BoxSpec& box : spec.boxes) {
    size_t count = box.points;
    if (count == 0) {
      count = static_cast<size_t>(
          std::llround(spec.point_density * surface_area(box.size)));
      if (count == 0) count = 1;
    }
    sample_box_surface(box, count, rng, cloud.points);
    max_label = std::max(max_label, box.label);
  }

  if (cloud.points.size() < 2) {
    fail(ErrorCode::kBadSpec, "scene produced fewer than 2 points");
  }
  cloud.class_count = max_label + 1;
  for (int axis = 0; axis < 3; ++axis) {
    double lo = cloud.points.front().position[axis];
    double hi = lo;
    for (const Point& p : cloud.points) {
      lo = std::min(lo, p.position[axis]);
      hi = std::max(hi, p.position[axis]);
    }
    cloud.source_bounds[static_cast<size_t>(axis)] = {lo, hi};
  }
  return cloud;
}

std::vector<SweepRow> sweep_grid(const PointCloud& cloud,
                                 const ViewPlane& plane,
                                 const std::vector<double>& grid, int rows,
                                 int cols, double tau) {
  if (grid.empty()) {
    fail(ErrorCode::kInvalidArgument, "sweep_grid: empty grid");
  }
  const std::vector<size_t> subset = partition_view(cloud, plane);
  const bool semantic = cloud.has_labels();
  const auto [grid_lo, grid_hi] = std::minmax_element(grid.begin(), grid.end());

  std::vector<SweepRow> out;
  out.reserve(grid.size() * grid.size());
  size_t best_index = 0;
  for (const double kh : grid) {
    for (const double kw : grid) {
      const RayParams ray{kh, kw, std::min(*grid_lo, -5.0),
                          std::max(*grid_hi, 5.0)};
      const RasterImage img =
          render_view(cloud, subset, plane, ray, rows, cols,
                      semantic ? ColorMode::kSemantic : ColorMode::kReal);
      SweepRow row;
      row.kappa_h = kh;
      row.kappa_w = kw;
      row.fraction = static_cast<double>(img.occupied_count()) /
                     (static_cast<double>(rows) * static_cast<double>(cols));
      row.u_space = u_space_from_fraction(row.fraction, tau);
      row.reg = row.u_space > 0.0 ? gauss_reg(kh, kw, row.u_space) : 0.0;
      row.direction = direction_name(classify_ray(ray));
      out.push_back(row);

      const SweepRow& best = out[best_index];
      const double norm_new = kh * kh + kw * kw;
      const double norm_best = best.kappa_h * best.kappa_h +
                               best.kappa_w * best.kappa_w;
      if (row.u_space > best.u_space ||
          (row.u_space == best.u_space &&
           (norm_new < norm_best ||
            (norm_new == norm_best &&
             (kh < best.kappa_h ||
              (kh == best.kappa_h && kw < best.kappa_w)))))) {
        best_index = out.size() - 1;
      }
    }
  }
  out[best_index].best = true;
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "kappa_h,kappa_w,fraction,u_space,reg,direction\n";
  char buf[40];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };
  for (const SweepRow& row : rows) {
    out << num(row.kappa_h) << ',' << num(row.kappa_w) << ','
        << num(row.fraction) << ',' << num(row.u_space) << ','
        << num(row.reg) << ',' << row.direction << "\n";
  }
  return out.str();
}

}  // namespace sparkproj
