// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Oracles here are standalone implementations, independent of the
// library code paths they check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/cloud.hpp"
#include "core/fireworks.hpp"
#include "core/objective.hpp"
#include "core/pipeline.hpp"
#include "core/projection.hpp"
#include "core/raster.hpp"
#include "core/rng.hpp"
#include "core/scenes.hpp"

using namespace sparkproj;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
 public:
  explicit Criterion(int number, std::string label)
      : number_(number), label_(std::move(label)),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    if (!ok) {
      failed_ = true;
      details_.push_back(detail);
    }
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_).count();
  }

  ~Criterion() {
    std::printf("[%s] criterion %d: %s (%.2f s)\n", failed_ ? "FAIL" : "PASS",
                number_, label_.c_str(), seconds());
    for (const std::string& d : details_) {
      std::printf("       %s\n", d.c_str());
    }
    if (failed_) ++g_failures;
    std::fflush(stdout);
  }

 private:
  int number_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
  bool failed_ = false;
  std::vector<std::string> details_;
};

Point point_at(double depth, double height, double width,
               const ViewPlane& plane, int label = 0) {
  Point p;
  p.position[axis_index(plane.depth_axis)] = depth;
  p.position[axis_index(plane.height_axis)] = height;
  p.position[axis_index(plane.width_axis)] = width;
  p.label = label;
  p.color = {0.5, 0.5, 0.5};
  return p;
}

// --- criterion 1: regularization column of the diversity analysis --------

void criterion_1() {
  Criterion c(1, "regularization values reproduce the diversity table");
  const double fractions[6] = {0.371, 0.722, 0.778, 0.853, 0.802, 0.745};
  const double expected[6] = {0.88, 0.52, 0.49, 0.45, 0.48, 0.50};
  for (int i = 0; i < 6; ++i) {
    const double u = u_space_from_fraction(fractions[i], 0.8);
    const double reg = gauss_reg(0.0, 0.0, u);
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "fraction %.3f -> reg %.6f, expected %.2f", fractions[i],
                  reg, expected[i]);
    c.expect(std::abs(reg - expected[i]) < 0.01, detail);
    c.expect(std::round(reg * 100.0) / 100.0 == expected[i], detail);
  }
  c.expect(c.seconds() < 1.0, "runtime exceeded 1 s");
}

// --- criterion 2: projection equivalence ---------------------------------

// Standalone mappings written directly from the straight-line and
// upward-curve formulas, min = -0.5, max = 0.5.
double straight_map(double coord, int size) {
  return (coord - (-0.5)) / (0.5 - (-0.5)) * size;
}

double curved_map(double coord, double depth, double k, int size) {
  return (coord + k * (depth * depth) - (-0.5)) / (0.5 - (-0.5)) * size;
}

void criterion_2() {
  Criterion c(2, "projection reduces to the straight and mirage formulas");
  std::mt19937_64 rng(20260809);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  std::uniform_real_distribution<double> curve(0.0, 4.0);
  const std::vector<ViewPlane> planes = default_planes(6);
  size_t straight_mismatch = 0;
  size_t curved_mismatch = 0;
  for (int i = 0; i < 100000; ++i) {
    const ViewPlane& plane = planes[static_cast<size_t>(i) % planes.size()];
    const Point p = point_at(coord(rng), coord(rng), coord(rng), plane);
    const double d = p.position[axis_index(plane.depth_axis)];
    const double u = p.position[axis_index(plane.height_axis)];
    const double v = p.position[axis_index(plane.width_axis)];

    const PixelCoord straight =
        project_point(p, plane, {0.0, 0.0, -5, 5}, 224, 224);
    if (straight.h_cont != straight_map(u, 224) ||
        straight.w_cont != straight_map(v, 224)) {
      ++straight_mismatch;
    }

    const double k = curve(rng);
    const PixelCoord mirage =
        project_point(p, plane, {k, 0.0, -5, 5}, 224, 224);
    if (mirage.h_cont != curved_map(u, d, k, 224) ||
        mirage.w_cont != straight_map(v, 224)) {
      ++curved_mismatch;
    }
  }
  c.expect(straight_mismatch == 0,
           "straight-ray mismatches: " + std::to_string(straight_mismatch));
  c.expect(curved_mismatch == 0,
           "curved-ray mismatches: " + std::to_string(curved_mismatch));
  c.expect(c.seconds() < 5.0, "runtime exceeded 5 s");
}

// --- criterion 3: mutation safety ----------------------------------------

void criterion_3() {
  Criterion c(3, "mutation never leaves its bounds; wrap examples hold");
  const MutationConfig worked{-5.0, 5.0, 0};
  c.expect(mutate_with_gaussian(2.0, worked, 2.0) == 1.0,
           "raw 6 must wrap to exactly 1");
  c.expect(mutate_with_gaussian(2.0, worked, -4.0) == 1.0,
           "raw -6 must wrap to exactly 1");

  std::mt19937_64 meta(333);
  std::uniform_real_distribution<double> lo_draw(-20.0, -0.1);
  std::uniform_real_distribution<double> hi_draw(0.1, 20.0);
  size_t escapes = 0;
  for (int round = 0; round < 100; ++round) {
    const MutationConfig config{lo_draw(meta), hi_draw(meta), 0};
    Rng rng(static_cast<uint64_t>(round) + 1);
    std::uniform_real_distribution<double> start(config.kappa_min,
                                                 config.kappa_max);
    double kappa = start(meta);
    for (int i = 0; i < 10000; ++i) {
      kappa = mutate(kappa, config, rng);
      if (kappa < config.kappa_min || kappa > config.kappa_max) ++escapes;
    }
  }
  c.expect(escapes == 0,
           "out-of-bounds results: " + std::to_string(escapes));
}

// --- criterion 4: occlusion oracle ---------------------------------------

void criterion_4() {
  Criterion c(4, "rendering equals the per-pixel min-depth oracle");
  std::mt19937_64 rng(444);
  std::uniform_int_distribution<size_t> size_draw(1, 1000);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  std::uniform_real_distribution<double> curve(-2.0, 2.0);
  std::uniform_int_distribution<int> label_draw(0, 5);
  const std::vector<ViewPlane> planes = default_planes(6);

  size_t bad_clouds = 0;
  for (int round = 0; round < 100; ++round) {
    const size_t n = size_draw(rng);
    std::vector<Point> points;
    points.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      // snap to a coarse grid so exact depth ties occur regularly
      const double x = std::round(coord(rng) * 16.0) / 16.0;
      const double y = std::round(coord(rng) * 16.0) / 16.0;
      const double z = std::round(coord(rng) * 16.0) / 16.0;
      Point p;
      p.position = {x, y, z};
      p.label = label_draw(rng);
      p.color = {coord(rng) + 0.5, coord(rng) + 0.5, coord(rng) + 0.5};
      points.push_back(p);
    }
    PointCloud cloud;
    cloud.points = std::move(points);
    cloud.class_count = 6;
    cloud.normalized = true;

    const ViewPlane& plane = planes[static_cast<size_t>(round) % planes.size()];
    const std::vector<size_t> subset = partition_view(cloud, plane);
    const RayParams ray{curve(rng), curve(rng), -5, 5};
    const int rows = 56, cols = 56;
    const RasterImage img = render_view(cloud, subset, plane, ray, rows, cols,
                                        ColorMode::kSemantic);

    // oracle: bucket points per pixel, take the (depth, index) minimum
    std::map<std::pair<int, int>, std::pair<double, size_t>> best;
    for (const size_t idx : subset) {
      const PixelCoord pc =
          project_point(cloud.points[idx], plane, ray, rows, cols);
      if (!pc.in_frame) continue;
      const auto key = std::make_pair(pc.h, pc.w);
      const auto it = best.find(key);
      if (it == best.end() || pc.depth < it->second.first ||
          (pc.depth == it->second.first && idx < it->second.second)) {
        best[key] = {pc.depth, idx};
      }
    }
    bool cloud_ok = img.occupied_count() == best.size();
    for (const auto& [cell, winner] : best) {
      const size_t flat =
          static_cast<size_t>(cell.first) * cols + cell.second;
      if (img.winner[flat] != static_cast<int64_t>(winner.second)) {
        cloud_ok = false;
      }
      if (img.depth[flat] != winner.first) cloud_ok = false;
      const Rgb want = palette_color(*cloud.points[winner.second].label);
      if (!(img.pixels[flat] == want)) cloud_ok = false;
    }
    if (!cloud_ok) ++bad_clouds;
  }
  c.expect(bad_clouds == 0,
           "clouds with mismatched renders: " + std::to_string(bad_clouds));
}

// --- criterion 5: FPS oracle ----------------------------------------------

std::vector<size_t> fps_oracle(const PointCloud& cloud,
                               const std::vector<size_t>& subset,
                               size_t count) {
  std::vector<size_t> centers = {
      *std::min_element(subset.begin(), subset.end())};
  while (centers.size() < count) {
    double best_d = -1.0;
    size_t best_idx = 0;
    for (const size_t idx : subset) {
      if (std::find(centers.begin(), centers.end(), idx) != centers.end()) {
        continue;
      }
      double dmin = std::numeric_limits<double>::infinity();
      for (const size_t center : centers) {
        const Vec3& a = cloud.points[idx].position;
        const Vec3& b = cloud.points[center].position;
        dmin = std::min(dmin, (a.x - b.x) * (a.x - b.x) +
                                  (a.y - b.y) * (a.y - b.y) +
                                  (a.z - b.z) * (a.z - b.z));
      }
      if (dmin > best_d || (dmin == best_d && idx < best_idx)) {
        best_d = dmin;
        best_idx = idx;
      }
    }
    centers.push_back(best_idx);
  }
  return centers;
}

void criterion_5() {
  Criterion c(5, "farthest point sampling equals the greedy oracle");
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<size_t> size_draw(1, 64);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  size_t mismatches = 0;
  for (int round = 0; round < 100; ++round) {
    const size_t n = size_draw(rng);
    std::vector<Point> points;
    for (size_t i = 0; i < n; ++i) {
      // coarse grid so distance ties are common
      points.push_back(point_at(std::round(coord(rng) * 8.0) / 8.0,
                                std::round(coord(rng) * 8.0) / 8.0,
                                std::round(coord(rng) * 8.0) / 8.0,
                                default_planes(1)[0]));
    }
    PointCloud cloud;
    cloud.points = std::move(points);
    cloud.normalized = true;
    std::vector<size_t> subset(n);
    for (size_t i = 0; i < n; ++i) subset[i] = i;
    std::uniform_int_distribution<size_t> count_draw(1, n);
    const size_t count = count_draw(rng);
    if (farthest_point_sample(cloud, subset, count) !=
        fps_oracle(cloud, subset, count)) {
      ++mismatches;
    }
  }
  c.expect(mismatches == 0,
           "clouds with diverging centers: " + std::to_string(mismatches));
}

// --- criterion 6: gradient check -------------------------------------------

void criterion_6() {
  Criterion c(6, "analytic regularization gradient matches finite differences");
  std::mt19937_64 rng(666);
  std::uniform_real_distribution<double> curve(0.25, 3.0);
  std::uniform_real_distribution<double> sigma(0.3, 1.2);
  std::uniform_int_distribution<int> sign(0, 1);
  const double step = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double kh = (sign(rng) ? 1 : -1) * curve(rng);
    const double kw = (sign(rng) ? 1 : -1) * curve(rng);
    const double u = sigma(rng);
    const auto [dh, dw] = grad_gauss_reg(kh, kw, u);
    const double fd_h =
        (gauss_reg(kh + step, kw, u) - gauss_reg(kh - step, kw, u)) /
        (2 * step);
    const double fd_w =
        (gauss_reg(kh, kw + step, u) - gauss_reg(kh, kw - step, u)) /
        (2 * step);
    worst = std::max(worst, std::abs(dh - fd_h) / std::abs(fd_h));
    worst = std::max(worst, std::abs(dw - fd_w) / std::abs(fd_w));
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "worst relative error %.3g", worst);
  c.expect(worst < 1e-5, detail);
}

// --- criterion 7: optimizer efficacy ----------------------------------------

void criterion_7() {
  Criterion c(7, "fireworks search reaches the grid optimum on two-wall");
  const PointCloud cloud = normalize(synth_room(preset_scene("two-wall")));
  const ViewPlane plane = default_planes(1)[0];
  const std::vector<size_t> subset = partition_view(cloud, plane);
  const int rows = 224, cols = 224;
  const double tau = 0.8;

  const RasterImage straight_img = render_view(
      cloud, subset, plane, {0, 0, -5, 5}, rows, cols, ColorMode::kSemantic);
  const double straight = u_space(straight_img, tau);

  const auto search_start = std::chrono::steady_clock::now();
  const MutationConfig config{-5.0, 5.0, 7};
  const SearchResult result = optimize_plane(cloud, subset, plane, rows, cols,
                                             tau, config, 16, 30,
                                             {0, 0, -5, 5});
  const double search_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    search_start).count();

  // independent oracle: exhaustive 101x101 grid over [-5,5]^2, scored by
  // rendering + the non-black-pixel utilization
  double grid_best = -1.0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double kh = -5.0 + 0.1 * i;
      const double kw = -5.0 + 0.1 * j;
      const RasterImage img =
          render_view(cloud, subset, plane, {kh, kw, -5, 5}, rows, cols,
                      ColorMode::kSemantic);
      grid_best = std::max(grid_best, u_space(img, tau));
    }
  }

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "straight %.5f, search %.5f at (%.3f, %.3f), grid best %.5f, "
                "search time %.1f s",
                straight, result.best_score, result.best.kappa_h,
                result.best.kappa_w, grid_best, search_seconds);
  c.expect(result.best_score > straight, detail);
  c.expect(result.best_score >= grid_best - 0.02, detail);
  c.expect(search_seconds < 60.0, "search exceeded 60 s single-threaded");
}

// --- criterion 8: cross-entropy closed form ---------------------------------

void criterion_8() {
  Criterion c(8, "cross-entropy closed form and duplication invariance");
  const double uniform = cross_entropy({{2.0, 2.0}}, {{1, 0}});
  char detail[64];
  std::snprintf(detail, sizeof(detail), "uniform-logit loss %.9f", uniform);
  c.expect(std::abs(uniform - 0.346574) < 1e-6, detail);
  c.expect(std::abs(uniform - std::log(2.0) / 2.0) < 1e-9, detail);

  const std::vector<double> row = {0.4, -0.9, 2.2, 0.0};
  const std::vector<double> onehot = {0, 0, 1, 0};
  const double once = cross_entropy({row}, {onehot});
  const double twice = cross_entropy({row, row}, {onehot, onehot});
  const double quad = cross_entropy({row, row, row, row},
                                    {onehot, onehot, onehot, onehot});
  c.expect(once == twice, "2-row duplication must be exact");
  c.expect(once == quad, "4-row duplication must be exact");
}

// --- criterion 9: end-to-end determinism ------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void criterion_9() {
  Criterion c(9, "synth -> optimize -> report is byte-identical across runs");
  const fs::path base =
      fs::temp_directory_path() / "sparkproj_acceptance_e2e";
  fs::remove_all(base);
  fs::create_directories(base);

  RunOptions synth;
  synth.preset = "two-wall";
  synth.synth_out = (base / "scene.xyz").string();
  cmd_synth(synth);

  std::vector<std::map<std::string, std::string>> outputs;
  const int thread_counts[4] = {1, 4, 1, 4};
  for (int run = 0; run < 4; ++run) {
    const fs::path dir = base / ("run" + std::to_string(run));
    fs::create_directories(dir);
    RunOptions options;
    options.input_path = synth.synth_out;
    options.out_dir = dir.string();
    options.seed = 7;
    options.population = 8;
    options.iterations = 10;
    options.threads = thread_counts[run];
    cmd_optimize(options);

    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      files[entry.path().filename().string()] = slurp(entry.path());
    }
    outputs.push_back(std::move(files));
  }

  c.expect(outputs[0].size() >= 9, "expected report.json plus 8 images");
  for (size_t run = 1; run < outputs.size(); ++run) {
    c.expect(outputs[run].size() == outputs[0].size(),
             "run " + std::to_string(run) + " produced a different file set");
    for (const auto& [name, bytes] : outputs[0]) {
      const auto it = outputs[run].find(name);
      if (it == outputs[run].end() || it->second != bytes) {
        c.expect(false, "run " + std::to_string(run) + " differs in " + name);
        break;
      }
    }
  }
  fs::remove_all(base);
}

}  // namespace

int main() {
  std::printf("sparkproj acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
