#include "core/projection.hpp"

#include <algorithm>
#include <cmath>

namespace sparkproj {

PixelCoord project_point(const Point& p, const ViewPlane& plane,
                         const RayParams& ray, int rows, int cols) {
  const double d = p.position[axis_index(plane.depth_axis)];
  const double u = p.position[axis_index(plane.height_axis)];
  const double v = p.position[axis_index(plane.width_axis)];

  const double d2 = d * d;
  const double h_cont = (u + ray.kappa_h * d2 - kNormMin) /
                        (kNormMax - kNormMin) * static_cast<double>(rows);
  const double w_cont = (v + ray.kappa_w * d2 - kNormMin) /
                        (kNormMax - kNormMin) * static_cast<double>(cols);

  PixelCoord out;
  out.h_cont = h_cont;
  out.w_cont = w_cont;
  out.depth = std::abs(d);
  out.in_frame = h_cont >= 0.0 && h_cont <= static_cast<double>(rows) &&
                 w_cont >= 0.0 && w_cont <= static_cast<double>(cols);
  if (out.in_frame) {
    out.h = std::min(static_cast<int>(std::floor(h_cont)), rows - 1);
    out.w = std::min(static_cast<int>(std::floor(w_cont)), cols - 1);
  }
  return out;
}

RayDirection classify_ray(const RayParams& ray) {
  RayDirection dir;
  dir.h_pos = ray.kappa_h > 0.0;
  dir.h_neg = ray.kappa_h < 0.0;
  dir.w_pos = ray.kappa_w > 0.0;
  dir.w_neg = ray.kappa_w < 0.0;
  dir.straight = ray.kappa_h == 0.0 && ray.kappa_w == 0.0;
  return dir;
}

std::string direction_name(const RayDirection& dir) {
  if (dir.straight) return "Straight-Line Ray";
  std::string name;
  if (dir.h_pos) name += "Upward-";
  if (dir.h_neg) name += "Downward-";
  if (dir.w_pos) name += "Leftward-";
  if (dir.w_neg) name += "Rightward-";
  return name + "Curve Ray";
}

bool boundary_check(const Point& p, const ViewPlane& plane,
                    const RayParams& ray) {
  const double d = p.position[axis_index(plane.depth_axis)];
  const double u = p.position[axis_index(plane.height_axis)];
  const double v = p.position[axis_index(plane.width_axis)];
  const double d2 = d * d;
  const double bent_u = u + ray.kappa_h * d2;
  const double bent_v = v + ray.kappa_w * d2;
  return bent_u >= kNormMin && bent_u <= kNormMax && bent_v >= kNormMin &&
         bent_v <= kNormMax;
}

}  // namespace sparkproj
