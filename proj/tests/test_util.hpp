#pragma once

#include <random>
#include <vector>

#include "core/cloud.hpp"
#include "core/types.hpp"

namespace sparkproj::test {

inline Point make_point(double x, double y, double z, int label = -1,
                        Rgb color = {0.5, 0.5, 0.5}) {
  Point p;
  p.position = {x, y, z};
  p.color = color;
  if (label >= 0) p.label = label;
  return p;
}

inline PointCloud make_cloud(std::vector<Point> points) {
  PointCloud cloud;
  cloud.points = std::move(points);
  int max_label = -1;
  for (const Point& p : cloud.points) {
    if (p.label) max_label = std::max(max_label, *p.label);
  }
  cloud.class_count = max_label + 1;
  return cloud;
}

// Random labeled cloud, normalized. `quantize` snaps coordinates to a grid
// so exact depth ties occur.
inline PointCloud random_cloud(std::mt19937_64& rng, size_t count,
                               int classes = 4, bool quantize = false) {
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  std::uniform_int_distribution<int> label(0, classes - 1);
  std::uniform_real_distribution<double> channel(0.0, 1.0);
  std::vector<Point> points;
  points.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    double x = coord(rng), y = coord(rng), z = coord(rng);
    if (quantize) {
      x = std::round(x * 16.0) / 16.0;
      y = std::round(y * 16.0) / 16.0;
      z = std::round(z * 16.0) / 16.0;
    }
    Point p = make_point(x, y, z, label(rng),
                         {channel(rng), channel(rng), channel(rng)});
    points.push_back(p);
  }
  return normalize(make_cloud(std::move(points)));
}

}  // namespace sparkproj::test
