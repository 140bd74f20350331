#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace sparkproj {

using Mat2 = std::array<std::array<double, 2>, 2>;

struct AttentionParams {
  Mat2 wq{};
  Mat2 wk{};
  Mat2 wv{};
};

// 2 -> 9 -> 1 with a Sigmoid after each layer.
struct MlpParams {
  std::array<std::array<double, 2>, 9> w1{};
  std::array<double, 9> b1{};
  std::array<double, 9> w2{};
  double b2 = 0.0;
};

struct BranchWeights {
  AttentionParams self_attn;
  AttentionParams cross_attn;
  MlpParams mlp;
};

// Loadable parameters for both prediction branches. The H branch reads the
// XZ ball slices, the W branch the XY slices.
struct PredictorWeights {
  BranchWeights h;
  BranchWeights w;

  static PredictorWeights zeros() { return PredictorWeights{}; }
};

// JSON weight file: one named object per matrix/vector with explicit
// "shape" and row-major "data". load rejects shape mismatches naming the
// offending field.
PredictorWeights load_weights(const std::string& path);
PredictorWeights parse_weights(const std::string& json_text,
                               const std::string& origin);
std::string serialize_weights(const PredictorWeights& weights);
void save_weights(const PredictorWeights& weights, const std::string& path);

struct AttentionOutput {
  // one 2-dim embedding per ball
  std::vector<std::array<double, 2>> mu_h;
  std::vector<std::array<double, 2>> mu_w;
};

// Single-head scaled dot-product attention over the ball sequence
// (dimension-2 tokens, scale 1/sqrt(2)). For the H branch the self block
// attends XZ->XZ and the cross block queries XZ against XY keys/values; the
// W branch mirrors that. Outputs blend as omega*self + (1-omega)*cross.
AttentionOutput attention_embed(const std::vector<BallSummary>& balls,
                                const PredictorWeights& weights, double omega);

struct PredictConfig {
  size_t centers = 32;    // FPS count S
  double radius = 0.2;    // ball query radius r
  double omega = 0.8;     // attention blend
  double kappa_min = -5.0;
  double kappa_max = 5.0;
  bool mutate = false;
  uint64_t seed = 0;      // mutation stream, derived per plane
};

// Full forward pass for one plane: partition -> FPS -> ball aggregation ->
// attention -> per-branch MLP -> mean pool -> affine rescale of the Sigmoid
// output onto [kappa_min, kappa_max]; optionally one mutation step.
RayParams predict_kappa(const PointCloud& cloud, const ViewPlane& plane,
                        const PredictorWeights& weights,
                        const PredictConfig& config);

}  // namespace sparkproj
