#pragma once

#include <cstdint>
#include <vector>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace sparkproj {

struct MutationConfig {
  double kappa_min = -5.0;
  double kappa_max = 5.0;
  uint64_t seed = 0;
};

// Bounded Gaussian mutation: kappa * (1 + g) with g ~ N(0,1); a result
// outside [kappa_min, kappa_max] is remapped to
//   kappa_min + (|raw| mod (kappa_max - kappa_min))
// with the real-valued modulus r - floor(r/range)*range. Note that 0 is a
// fixed point of the multiplicative step; optimize_plane escapes it with a
// fresh uniform draw.
double mutate(double kappa, const MutationConfig& config, Rng& rng);

// The deterministic part of mutate, with the Gaussian injected.
double mutate_with_gaussian(double kappa, const MutationConfig& config,
                            double gaussian);

struct Candidate {
  double kappa_h = 0.0;
  double kappa_w = 0.0;
  double score = 0.0;  // U_Space of the candidate's render
  double reg = 0.0;    // gauss_reg at (kappa_h, kappa_w, score); 0 if score 0
};

struct SearchIteration {
  std::vector<Candidate> candidates;
  Candidate best_so_far;
};

struct SearchTrace {
  std::vector<SearchIteration> iterations;
  bool empty_subset = false;
};

struct SearchResult {
  RayParams best;
  double best_score = 0.0;
  SearchTrace trace;
};

// Elitist population search over (kappa_h, kappa_w) maximizing the U_Space
// of the plane's render. Iteration 0 scores `init` plus pop-1 mutations of
// it; each later iteration scores pop componentwise mutations of the best so
// far. Score ties prefer smaller kappa_h^2+kappa_w^2, then smaller kappa_h,
// then smaller kappa_w. Candidate RNG streams derive from
// (seed, iteration, candidate), so traces are reproducible.
SearchResult optimize_plane(const PointCloud& cloud,
                            const std::vector<size_t>& subset,
                            const ViewPlane& plane, int rows, int cols,
                            double tau, const MutationConfig& config,
                            int population, int iterations,
                            const RayParams& init);

}  // namespace sparkproj
