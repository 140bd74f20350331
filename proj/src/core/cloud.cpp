#include "core/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace sparkproj {

bool PointCloud::has_labels() const {
  if (points.empty()) return false;
  return std::all_of(points.begin(), points.end(),
                     [](const Point& p) { return p.label.has_value(); });
}

namespace {

AxisBounds compute_bounds(const std::vector<Point>& points) {
  AxisBounds bounds;
  for (int axis = 0; axis < 3; ++axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const Point& p : points) {
      lo = std::min(lo, p.position[axis]);
      hi = std::max(hi, p.position[axis]);
    }
    bounds[static_cast<size_t>(axis)] = {lo, hi};
  }
  return bounds;
}

}  // namespace

PointCloud parse_xyz(std::istream& in, const std::string& origin) {
  PointCloud cloud;
  int max_label = -1;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    double x, y, z;
    double r, g, b;
    if (!(fields >> x >> y >> z >> r >> g >> b)) {
      fail(ErrorCode::kParse, origin + ": line " + std::to_string(line_no) +
                                  ": expected \"x y z r g b [label]\"");
    }
    for (double ch : {r, g, b}) {
      if (ch < 0.0 || ch > 255.0) {
        fail(ErrorCode::kParse, origin + ": line " + std::to_string(line_no) +
                                    ": color channel outside [0, 255]");
      }
    }
    Point p;
    p.position = {x, y, z};
    p.color = {r / 255.0, g / 255.0, b / 255.0};
    long long label;
    if (fields >> label) {
      if (label < 0) {
        fail(ErrorCode::kParse, origin + ": line " + std::to_string(line_no) +
                                    ": negative label");
      }
      p.label = static_cast<int>(label);
      max_label = std::max(max_label, p.label.value());
    }
    std::string trailing;
    if (fields >> trailing) {
      fail(ErrorCode::kParse, origin + ": line " + std::to_string(line_no) +
                                  ": trailing fields after label");
    }
    cloud.points.push_back(p);
  }
  if (cloud.points.empty()) {
    fail(ErrorCode::kParse, origin + ": no points");
  }
  cloud.class_count = max_label + 1;
  cloud.source_bounds = compute_bounds(cloud.points);
  return cloud;
}

PointCloud load_xyz(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::kIo, "cannot open " + path);
  }
  return parse_xyz(in, path);
}

std::string serialize_xyz(const PointCloud& cloud) {
  std::ostringstream out;
  char buf[160];
  for (const Point& p : cloud.points) {
    const int r = static_cast<int>(std::lround(p.color.r * 255.0));
    const int g = static_cast<int>(std::lround(p.color.g * 255.0));
    const int b = static_cast<int>(std::lround(p.color.b * 255.0));
    int n = std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g %d %d %d",
                          p.position.x, p.position.y, p.position.z, r, g, b);
    out.write(buf, n);
    if (p.label) {
      n = std::snprintf(buf, sizeof(buf), " %d", *p.label);
      out.write(buf, n);
    }
    out.put('\n');
  }
  return out.str();
}

void write_xyz(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::kIo, "cannot write " + path);
  }
  const std::string text = serialize_xyz(cloud);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    fail(ErrorCode::kIo, "write failed: " + path);
  }
}

PointCloud normalize(const PointCloud& cloud) {
  if (cloud.empty()) {
    fail(ErrorCode::kInvalidArgument, "normalize: empty cloud");
  }
  const AxisBounds bounds = compute_bounds(cloud.points);
  PointCloud out = cloud;
  out.source_bounds = bounds;
  out.normalized = true;
  for (int axis = 0; axis < 3; ++axis) {
    const auto [lo, hi] = bounds[static_cast<size_t>(axis)];
    if (lo == hi) {
      for (Point& p : out.points) p.position[axis] = 0.0;
    } else if (lo == -0.5 && hi == 0.5) {
      // The affine map is the identity here; applying it in floating point
      // would perturb interior values and break idempotence.
    } else {
      const double range = hi - lo;
      for (Point& p : out.points) {
        p.position[axis] = (p.position[axis] - lo) / range - 0.5;
      }
    }
  }
  return out;
}

std::vector<size_t> partition_view(const PointCloud& cloud,
                                   const ViewPlane& plane) {
  const int axis = axis_index(plane.depth_axis);
  const double sign = plane.depth_sign >= 0 ? 1.0 : -1.0;
  std::vector<size_t> subset;
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    if (sign * cloud.points[i].position[axis] > 0.0) subset.push_back(i);
  }
  return subset;
}

namespace {

double squared_distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

std::vector<size_t> farthest_point_sample(const PointCloud& cloud,
                                          const std::vector<size_t>& subset,
                                          size_t count) {
  if (count < 1 || count > subset.size()) {
    fail(ErrorCode::kInvalidArgument,
         "farthest_point_sample: count " + std::to_string(count) +
             " outside [1, " + std::to_string(subset.size()) + "]");
  }
  const size_t start = *std::min_element(subset.begin(), subset.end());

  std::vector<size_t> centers;
  centers.reserve(count);
  centers.push_back(start);

  // min squared distance from each subset point to the chosen centers;
  // -1 marks a slot that is already a center
  std::vector<double> min_d2(subset.size());
  for (size_t k = 0; k < subset.size(); ++k) {
    min_d2[k] = subset[k] == start
                    ? -1.0
                    : squared_distance(cloud.points[subset[k]].position,
                                       cloud.points[start].position);
  }

  while (centers.size() < count) {
    double best_d2 = -1.0;
    size_t best_index = 0;  // point index, not subset slot
    size_t best_slot = 0;
    for (size_t k = 0; k < subset.size(); ++k) {
      const size_t idx = subset[k];
      if (min_d2[k] > best_d2 ||
          (min_d2[k] == best_d2 && idx < best_index)) {
        best_d2 = min_d2[k];
        best_index = idx;
        best_slot = k;
      }
    }
    centers.push_back(best_index);
    min_d2[best_slot] = -1.0;  // chosen; never selected again
    for (size_t k = 0; k < subset.size(); ++k) {
      if (min_d2[k] < 0.0) continue;
      const double d2 = squared_distance(cloud.points[subset[k]].position,
                                         cloud.points[best_index].position);
      min_d2[k] = std::min(min_d2[k], d2);
    }
  }
  return centers;
}

std::vector<BallSummary> ball_aggregate(const PointCloud& cloud,
                                        const std::vector<size_t>& subset,
                                        const std::vector<size_t>& centers,
                                        double radius) {
  if (radius <= 0.0) {
    fail(ErrorCode::kInvalidArgument, "ball_aggregate: radius must be > 0");
  }
  const double r2 = radius * radius;
  std::vector<BallSummary> balls;
  balls.reserve(centers.size());
  for (const size_t center : centers) {
    const Vec3& c = cloud.points[center].position;
    Vec3 sum;
    size_t members = 0;
    for (const size_t idx : subset) {
      const Vec3& q = cloud.points[idx].position;
      if (squared_distance(c, q) <= r2) {
        sum.x += q.x;
        sum.y += q.y;
        sum.z += q.z;
        ++members;
      }
    }
    BallSummary ball;
    ball.center_index = center;
    ball.theta = {sum.x / static_cast<double>(members),
                  sum.y / static_cast<double>(members),
                  sum.z / static_cast<double>(members)};
    ball.theta_xy = {ball.theta.x, ball.theta.y};
    ball.theta_xz = {ball.theta.x, ball.theta.z};
    balls.push_back(ball);
  }
  return balls;
}

namespace {

ViewPlane make_plane(int id, Axis depth, int sign) {
  ViewPlane plane;
  plane.id = id;
  plane.depth_axis = depth;
  plane.depth_sign = sign;
  switch (depth) {
    case Axis::X:
      plane.height_axis = Axis::Z;
      plane.width_axis = Axis::Y;
      break;
    case Axis::Y:
      plane.height_axis = Axis::Z;
      plane.width_axis = Axis::X;
      break;
    case Axis::Z:
      plane.height_axis = Axis::Y;
      plane.width_axis = Axis::X;
      break;
  }
  return plane;
}

}  // namespace

std::vector<ViewPlane> default_planes(int count) {
  if (count < 1 || count > 6) {
    fail(ErrorCode::kInvalidArgument, "plane count must be in [1, 6]");
  }
  static constexpr std::pair<Axis, int> kOrder[6] = {
      {Axis::X, +1}, {Axis::X, -1}, {Axis::Y, +1},
      {Axis::Y, -1}, {Axis::Z, +1}, {Axis::Z, -1},
  };
  std::vector<ViewPlane> planes;
  for (int m = 0; m < count; ++m) {
    planes.push_back(make_plane(m + 1, kOrder[m].first, kOrder[m].second));
  }
  return planes;
}

std::vector<ViewPlane> parse_plane_list(const std::string& text) {
  std::vector<ViewPlane> planes;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const size_t first = item.find_first_not_of(" \t");
    const size_t last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      fail(ErrorCode::kInvalidArgument, "empty plane entry in \"" + text + "\"");
    }
    const std::string tok = item.substr(first, last - first + 1);
    if (tok.size() != 2 || (tok[0] != '+' && tok[0] != '-')) {
      fail(ErrorCode::kInvalidArgument,
           "bad plane \"" + tok + "\" (expected e.g. +X or -Y)");
    }
    Axis depth;
    switch (tok[1]) {
      case 'X': case 'x': depth = Axis::X; break;
      case 'Y': case 'y': depth = Axis::Y; break;
      case 'Z': case 'z': depth = Axis::Z; break;
      default:
        fail(ErrorCode::kInvalidArgument, "bad plane axis in \"" + tok + "\"");
    }
    const int sign = tok[0] == '+' ? +1 : -1;
    planes.push_back(make_plane(static_cast<int>(planes.size()) + 1, depth, sign));
  }
  if (planes.empty()) {
    fail(ErrorCode::kInvalidArgument, "empty plane list");
  }
  return planes;
}

}  // namespace sparkproj
