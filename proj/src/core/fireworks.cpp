#include "core/fireworks.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "core/error.hpp"
#include "core/objective.hpp"
#include "core/projection.hpp"

namespace sparkproj {

double mutate_with_gaussian(double kappa, const MutationConfig& config,
                            double gaussian) {
  const double raw = kappa * (1.0 + gaussian);
  if (raw > config.kappa_max || raw < config.kappa_min) {
    const double range = config.kappa_max - config.kappa_min;
    const double magnitude = std::abs(raw);
    const double wrapped =
        magnitude - std::floor(magnitude / range) * range;
    return config.kappa_min + wrapped;
  }
  return raw;
}

double mutate(double kappa, const MutationConfig& config, Rng& rng) {
  return mutate_with_gaussian(kappa, config, rng.next_gaussian());
}

namespace {

// Marks hit pixels with a per-call epoch instead of clearing the grid, so a
// candidate costs O(points) rather than O(pixels).
struct StampGrid {
  std::vector<uint32_t> stamp;
  uint32_t epoch = 0;

  void reset(size_t cells) { stamp.assign(cells, 0); }
};

double score_candidate(const PointCloud& cloud,
                       const std::vector<size_t>& subset,
                       const ViewPlane& plane, const RayParams& ray, int rows,
                       int cols, double tau, StampGrid& grid) {
  ++grid.epoch;
  size_t cells = 0;
  for (const size_t idx : subset) {
    const PixelCoord pc = project_point(cloud.points[idx], plane, ray, rows, cols);
    if (!pc.in_frame) continue;
    uint32_t& mark = grid.stamp[static_cast<size_t>(pc.h) * cols + pc.w];
    if (mark != grid.epoch) {
      mark = grid.epoch;
      ++cells;
    }
  }
  const double fraction = static_cast<double>(cells) /
                          (static_cast<double>(rows) * static_cast<double>(cols));
  return u_space_from_fraction(fraction, tau);
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  const double na = a.kappa_h * a.kappa_h + a.kappa_w * a.kappa_w;
  const double nb = b.kappa_h * b.kappa_h + b.kappa_w * b.kappa_w;
  if (na != nb) return na < nb;
  if (a.kappa_h != b.kappa_h) return a.kappa_h < b.kappa_h;
  return a.kappa_w < b.kappa_w;
}

double mutate_component(double parent, const MutationConfig& config,
                        Rng& rng) {
  if (parent == 0.0) {
    // 0 is a fixed point of kappa*(1+g); restart from a uniform draw.
    return rng.next_uniform(config.kappa_min, config.kappa_max);
  }
  return mutate(parent, config, rng);
}

}  // namespace

SearchResult optimize_plane(const PointCloud& cloud,
                            const std::vector<size_t>& subset,
                            const ViewPlane& plane, int rows, int cols,
                            double tau, const MutationConfig& config,
                            int population, int iterations,
                            const RayParams& init) {
  if (population < 1 || iterations < 0) {
    fail(ErrorCode::kInvalidArgument,
         "optimize_plane: need population >= 1 and iterations >= 0");
  }
  if (config.kappa_min >= config.kappa_max) {
    fail(ErrorCode::kInvalidArgument, "optimize_plane: bad kappa bounds");
  }

  SearchResult result;
  result.best = init;
  result.best.kappa_min = config.kappa_min;
  result.best.kappa_max = config.kappa_max;

  if (subset.empty()) {
    Candidate scored{init.kappa_h, init.kappa_w, 0.0, 0.0};
    SearchIteration iteration;
    iteration.candidates.push_back(scored);
    iteration.best_so_far = scored;
    result.trace.iterations.push_back(iteration);
    result.trace.empty_subset = true;
    result.best_score = 0.0;
    return result;
  }

  StampGrid grid;
  grid.reset(static_cast<size_t>(rows) * static_cast<size_t>(cols));

  auto evaluate = [&](double kh, double kw) {
    RayParams ray{kh, kw, config.kappa_min, config.kappa_max};
    Candidate c;
    c.kappa_h = kh;
    c.kappa_w = kw;
    c.score = score_candidate(cloud, subset, plane, ray, rows, cols, tau, grid);
    c.reg = c.score > 0.0 ? gauss_reg(kh, kw, c.score) : 0.0;
    return c;
  };

  Candidate best = evaluate(init.kappa_h, init.kappa_w);
  for (int t = 0; t <= iterations; ++t) {
    SearchIteration iteration;
    const Candidate parent = best;
    const int count = t == 0 ? population - 1 : population;
    if (t == 0) iteration.candidates.push_back(best);
    for (int j = 0; j < count; ++j) {
      Rng rng(Rng::derive(config.seed, static_cast<uint64_t>(t),
                          static_cast<uint64_t>(j)));
      const double kh = mutate_component(parent.kappa_h, config, rng);
      const double kw = mutate_component(parent.kappa_w, config, rng);
      const Candidate c = evaluate(kh, kw);
      iteration.candidates.push_back(c);
      if (better(c, best)) best = c;
    }
    iteration.best_so_far = best;
    result.trace.iterations.push_back(iteration);
  }

  result.best.kappa_h = best.kappa_h;
  result.best.kappa_w = best.kappa_w;
  result.best_score = best.score;
  return result;
}

}  // namespace sparkproj
