#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparkproj {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
};

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  bool operator==(const Rgb& o) const {
    return r == o.r && g == o.g && b == o.b;
  }
};

enum class Axis : int { X = 0, Y = 1, Z = 2 };

constexpr int axis_index(Axis a) { return static_cast<int>(a); }

struct Point {
  Vec3 position;
  Rgb color;                 // channels in [0, 1]
  std::optional<int> label;  // class index in [0, class_count)
};

// Per-axis (min, max) of the cloud before normalization.
using AxisBounds = std::array<std::pair<double, double>, 3>;

struct PointCloud {
  std::vector<Point> points;   // ingestion order, never reordered
  int class_count = 0;         // 0 when no point carries a label
  AxisBounds source_bounds{};  // bounds of the input this cloud came from
  bool normalized = false;

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_labels() const;  // true iff every point is labeled
};

// One oriented projection plane: points on the depth axis' chosen side are
// projected, rows come from the height axis and columns from the width axis.
struct ViewPlane {
  int id = 1;  // m in [1, M]
  Axis depth_axis = Axis::X;
  int depth_sign = +1;  // +1 keeps coord > 0, -1 keeps coord < 0
  Axis height_axis = Axis::Z;
  Axis width_axis = Axis::Y;
};

// Curvature pair for one plane's rays, with the shared bounds it must obey.
struct RayParams {
  double kappa_h = 0.0;
  double kappa_w = 0.0;
  double kappa_min = -5.0;
  double kappa_max = 5.0;

  bool within_bounds() const {
    return kappa_min <= kappa_h && kappa_h <= kappa_max &&
           kappa_min <= kappa_w && kappa_w <= kappa_max;
  }
};

struct PixelCoord {
  int h = 0;
  int w = 0;
  double h_cont = 0.0;
  double w_cont = 0.0;
  double depth = 0.0;  // |depth-axis coordinate|
  bool in_frame = false;
};

// Mean position of one ball-query neighborhood plus its 2-dim slices.
struct BallSummary {
  size_t center_index = 0;
  Vec3 theta;
  std::array<double, 2> theta_xy{};  // (theta.x, theta.y)
  std::array<double, 2> theta_xz{};  // (theta.x, theta.z)
};

}  // namespace sparkproj
