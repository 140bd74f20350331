#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace sparkproj {

// Parses the "xyz-ascii" format: one point per line, fields
// "x y z r g b [label]" separated by whitespace, '#' starts a comment line,
// colors are integers 0-255. The returned cloud is NOT normalized.
PointCloud load_xyz(const std::string& path);
PointCloud parse_xyz(std::istream& in, const std::string& origin);

// Writes the same format back (colors quantized with round(v*255)).
void write_xyz(const PointCloud& cloud, const std::string& path);
std::string serialize_xyz(const PointCloud& cloud);

// Per-axis affine map onto [-0.5, 0.5]: v -> (v - min)/(max - min) - 0.5.
// A degenerate axis (max == min) maps to 0 everywhere. An axis whose bounds
// are already exactly (-0.5, 0.5) passes through unchanged, which makes the
// map idempotent in floating point.
PointCloud normalize(const PointCloud& cloud);

// Indices of points strictly on the plane's side of the depth axis
// (sign * coordinate > 0). Ascending order; may be empty.
std::vector<size_t> partition_view(const PointCloud& cloud,
                                   const ViewPlane& plane);

// Greedy max-min farthest point sampling over `subset`. The first center is
// the lowest subset index; each next center maximizes its minimum Euclidean
// distance to the chosen centers, distance ties broken by lowest index.
std::vector<size_t> farthest_point_sample(const PointCloud& cloud,
                                          const std::vector<size_t>& subset,
                                          size_t count);

// Radius-r ball query around each center (within `subset`), averaged into
// one BallSummary per center. A center always contains itself.
std::vector<BallSummary> ball_aggregate(const PointCloud& cloud,
                                        const std::vector<size_t>& subset,
                                        const std::vector<size_t>& centers,
                                        double radius);

// The fixed plane enumeration: (+X,YZ), (-X,YZ), (+Y,XZ), (-Y,XZ),
// (+Z,XY), (-Z,XY). `count` in [1, 6]; ids are 1-based.
std::vector<ViewPlane> default_planes(int count);

// Parses a comma-separated plane list such as "+X,-X,+Y". Height/width axes
// are derived per depth axis: X -> (Z, Y), Y -> (Z, X), Z -> (Y, X).
std::vector<ViewPlane> parse_plane_list(const std::string& text);

}  // namespace sparkproj
