#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace sparkproj {

struct BoxSpec {
  Vec3 center;
  Vec3 size;       // per-axis extent; zero axes collapse the box to a slab
  int label = 0;
  Rgb color;
  size_t points = 0;  // 0 = derive from point_density * surface area
};

// Synthetic indoor scene: an optional floor slab spanning the room extents
// plus labeled boxes. Sampling is uniform over box surfaces with a single
// sequential RNG stream, so a spec is fully reproducible from its seed.
struct SceneSpec {
  uint64_t seed = 0;
  Vec3 room_extents;          // floor spans x,y; floor sits at z = -ez/2
  double wall_thickness = 0.0;  // floor slab thickness
  double point_density = 0.0;   // points per unit surface area (floor + fallback)
  std::vector<BoxSpec> boxes;
};

SceneSpec parse_scene_spec(const std::string& json_text,
                           const std::string& origin);
SceneSpec load_scene_spec(const std::string& path);
std::string serialize_scene_spec(const SceneSpec& spec);

// Built-in presets, compiled in and dumpable to JSON. Currently: "two-wall".
const std::vector<std::string>& preset_names();
SceneSpec preset_scene(const std::string& name);

// Samples the spec into an unnormalized cloud (caller normalizes). Point
// counts are exact: floor points + each box's points.
PointCloud synth_room(const SceneSpec& spec);

struct SweepRow {
  double kappa_h = 0.0;
  double kappa_w = 0.0;
  double fraction = 0.0;
  double u_space = 0.0;
  double reg = 0.0;        // 0 when fraction is 0
  std::string direction;
  bool best = false;
};

// Renders and scores every (kappa_h, kappa_w) pair of grid x grid, in
// lexicographic order. The max-U_Space row is flagged (ties prefer smaller
// kappa_h^2+kappa_w^2, then smaller kappa_h, then smaller kappa_w).
std::vector<SweepRow> sweep_grid(const PointCloud& cloud,
                                 const ViewPlane& plane,
                                 const std::vector<double>& grid, int rows,
                                 int cols, double tau);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace sparkproj
