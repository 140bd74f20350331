#pragma once

#include <string>

#include "core/types.hpp"

namespace sparkproj {

// Normalized clouds live in [-0.5, 0.5] per axis; projection maps that
// interval onto [0, H] (rows) and [0, W] (columns).
inline constexpr double kNormMin = -0.5;
inline constexpr double kNormMax = 0.5;

// Curved-ray projection of one point: with d the depth coordinate, u the
// height coordinate and v the width coordinate under the plane's axis
// mapping,
//   h_cont = (u + kappa_h * d^2 - min) / (max - min) * H
//   w_cont = (v + kappa_w * d^2 - min) / (max - min) * W
// Discrete indices are floor of the continuous values; a continuous value
// exactly at the upper edge clamps to the last index. in_frame is true iff
// both continuous values lie in [0, axis size]. depth is |d|.
PixelCoord project_point(const Point& p, const ViewPlane& plane,
                         const RayParams& ray, int rows, int cols);

struct RayDirection {
  bool h_pos = false;  // kappa_h > 0, "upward"
  bool h_neg = false;  // kappa_h < 0, "downward"
  bool w_pos = false;  // kappa_w > 0, "leftward"
  bool w_neg = false;  // kappa_w < 0, "rightward"
  bool straight = false;
};

RayDirection classify_ray(const RayParams& ray);

// e.g. "Straight-Line Ray", "Upward-Curve Ray", "Downward-Leftward-Curve Ray"
std::string direction_name(const RayDirection& dir);

// True iff the bent height and width coordinates both stay inside the
// normalized bounds: u + kappa_h*d^2 in [min, max] and likewise for width.
// Equivalent to project_point(...).in_frame.
bool boundary_check(const Point& p, const ViewPlane& plane,
                    const RayParams& ray);

}  // namespace sparkproj
