#include "core/predictor.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/cloud.hpp"
#include "core/error.hpp"
#include "core/fireworks.hpp"
#include "core/rng.hpp"

namespace sparkproj {

namespace {

using json = nlohmann::json;

std::vector<double> expect_array(const json& object, const std::string& field,
                                 const std::vector<size_t>& shape) {
  if (!object.contains(field)) {
    fail(ErrorCode::kBadWeights, "missing field \"" + field + "\"");
  }
  const json& entry = object.at(field);
  if (!entry.is_object() || !entry.contains("shape") ||
      !entry.contains("data")) {
    fail(ErrorCode::kBadWeights,
         "field \"" + field + "\" must be {\"shape\": [...], \"data\": [...]}");
  }
  std::vector<size_t> got;
  for (const json& d : entry.at("shape")) got.push_back(d.get<size_t>());
  if (got != shape) {
    std::ostringstream want;
    want << "field \"" << field << "\" has wrong shape, expected [";
    for (size_t i = 0; i < shape.size(); ++i) {
      want << (i ? "," : "") << shape[i];
    }
    want << "]";
    fail(ErrorCode::kBadWeights, want.str());
  }
  size_t total = 1;
  for (const size_t d : shape) total *= d;
  const json& data = entry.at("data");
  if (!data.is_array() || data.size() != total) {
    fail(ErrorCode::kBadWeights,
         "field \"" + field + "\" data length does not match its shape");
  }
  std::vector<double> values;
  values.reserve(total);
  for (const json& v : data) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(ErrorCode::kBadWeights, "field \"" + field + "\" has non-finite value");
    }
    values.push_back(x);
  }
  return values;
}

Mat2 read_mat2(const json& object, const std::string& field) {
  const std::vector<double> v = expect_array(object, field, {2, 2});
  return {{{v[0], v[1]}, {v[2], v[3]}}};
}

AttentionParams read_attention(const json& object, const std::string& prefix) {
  AttentionParams params;
  params.wq = read_mat2(object, prefix + "_wq");
  params.wk = read_mat2(object, prefix + "_wk");
  params.wv = read_mat2(object, prefix + "_wv");
  return params;
}

MlpParams read_mlp(const json& object, const std::string& prefix) {
  MlpParams mlp;
  const std::vector<double> w1 = expect_array(object, prefix + "_w1", {9, 2});
  for (size_t i = 0; i < 9; ++i) {
    mlp.w1[i] = {w1[i * 2], w1[i * 2 + 1]};
  }
  const std::vector<double> b1 = expect_array(object, prefix + "_b1", {9});
  std::copy(b1.begin(), b1.end(), mlp.b1.begin());
  const std::vector<double> w2 = expect_array(object, prefix + "_w2", {1, 9});
  std::copy(w2.begin(), w2.end(), mlp.w2.begin());
  mlp.b2 = expect_array(object, prefix + "_b2", {1})[0];
  return mlp;
}

BranchWeights read_branch(const json& root, const std::string& branch) {
  if (!root.contains(branch) || !root.at(branch).is_object()) {
    fail(ErrorCode::kBadWeights, "missing branch object \"" + branch + "\"");
  }
  const json& object = root.at(branch);
  BranchWeights out;
  out.self_attn = read_attention(object, "self");
  out.cross_attn = read_attention(object, "cross");
  out.mlp = read_mlp(object, "mlp");
  return out;
}

void dump_array(std::ostringstream& out, const std::string& field,
                const std::vector<size_t>& shape,
                const std::vector<double>& data, bool last) {
  out << "    \"" << field << "\": {\"shape\": [";
  for (size_t i = 0; i < shape.size(); ++i) out << (i ? "," : "") << shape[i];
  out << "], \"data\": [";
  char buf[40];
  for (size_t i = 0; i < data.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", data[i]);
    out << (i ? "," : "") << buf;
  }
  out << "]}" << (last ? "" : ",") << "\n";
}

void dump_branch(std::ostringstream& out, const std::string& name,
                 const BranchWeights& b, bool last) {
  out << "  \"" << name << "\": {\n";
  auto flat2 = [](const Mat2& m) {
    return std::vector<double>{m[0][0], m[0][1], m[1][0], m[1][1]};
  };
  dump_array(out, "self_wq", {2, 2}, flat2(b.self_attn.wq), false);
  dump_array(out, "self_wk", {2, 2}, flat2(b.self_attn.wk), false);
  dump_array(out, "self_wv", {2, 2}, flat2(b.self_attn.wv), false);
  dump_array(out, "cross_wq", {2, 2}, flat2(b.cross_attn.wq), false);
  dump_array(out, "cross_wk", {2, 2}, flat2(b.cross_attn.wk), false);
  dump_array(out, "cross_wv", {2, 2}, flat2(b.cross_attn.wv), false);
  std::vector<double> w1;
  for (const auto& row : b.mlp.w1) {
    w1.push_back(row[0]);
    w1.push_back(row[1]);
  }
  dump_array(out, "mlp_w1", {9, 2}, w1, false);
  dump_array(out, "mlp_b1", {9},
             std::vector<double>(b.mlp.b1.begin(), b.mlp.b1.end()), false);
  dump_array(out, "mlp_w2", {1, 9},
             std::vector<double>(b.mlp.w2.begin(), b.mlp.w2.end()), false);
  dump_array(out, "mlp_b2", {1}, {b.mlp.b2}, true);
  out << "  }" << (last ? "" : ",") << "\n";
}

}  // namespace

PredictorWeights parse_weights(const std::string& json_text,
                               const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kBadWeights, origin + ": " + e.what());
  }
  try {
    PredictorWeights weights;
    weights.h = read_branch(root, "h");
    weights.w = read_branch(root, "w");
    return weights;
  } catch (const Error& e) {
    fail(e.code(), origin + ": " + e.what());
  } catch (const json::exception& e) {
    fail(ErrorCode::kBadWeights, origin + ": " + e.what());
  }
}

PredictorWeights load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::kIo, "cannot open " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_weights(text.str(), path);
}

std::string serialize_weights(const PredictorWeights& weights) {
  std::ostringstream out;
  out << "{\n";
  dump_branch(out, "h", weights.h, false);
  dump_branch(out, "w", weights.w, true);
  out << "}\n";
  return out.str();
}

void save_weights(const PredictorWeights& weights, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::kIo, "cannot write " + path);
  }
  out << serialize_weights(weights);
}

namespace {

using Token = std::array<double, 2>;

Token apply(const Mat2& m, const Token& x) {
  return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]};
}

// queries from `q_tokens`, keys/values from `kv_tokens`
std::vector<Token> scaled_dot_attention(const AttentionParams& params,
                                        const std::vector<Token>& q_tokens,
                                        const std::vector<Token>& kv_tokens) {
  const size_t n = q_tokens.size();
  std::vector<Token> queries(n), keys(n), values(n);
  for (size_t i = 0; i < n; ++i) {
    queries[i] = apply(params.wq, q_tokens[i]);
    keys[i] = apply(params.wk, kv_tokens[i]);
    values[i] = apply(params.wv, kv_tokens[i]);
  }
  const double scale = 1.0 / std::sqrt(2.0);
  std::vector<Token> out(n);
  std::vector<double> weights(n);
  for (size_t i = 0; i < n; ++i) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < n; ++j) {
      weights[j] =
          (queries[i][0] * keys[j][0] + queries[i][1] * keys[j][1]) * scale;
      row_max = std::max(row_max, weights[j]);
    }
    double denom = 0.0;
    for (size_t j = 0; j < n; ++j) {
      weights[j] = std::exp(weights[j] - row_max);
      denom += weights[j];
    }
    Token acc{0.0, 0.0};
    for (size_t j = 0; j < n; ++j) {
      const double a = weights[j] / denom;
      acc[0] += a * values[j][0];
      acc[1] += a * values[j][1];
    }
    out[i] = acc;
  }
  return out;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double mlp_forward(const MlpParams& mlp, const Token& x) {
  std::array<double, 9> hidden;
  for (size_t i = 0; i < 9; ++i) {
    hidden[i] = sigmoid(mlp.w1[i][0] * x[0] + mlp.w1[i][1] * x[1] + mlp.b1[i]);
  }
  double out = mlp.b2;
  for (size_t i = 0; i < 9; ++i) out += mlp.w2[i] * hidden[i];
  return sigmoid(out);
}

}  // namespace

AttentionOutput attention_embed(const std::vector<BallSummary>& balls,
                                const PredictorWeights& weights, double omega) {
  if (balls.empty()) {
    fail(ErrorCode::kInvalidArgument, "attention_embed: need >= 1 ball");
  }
  if (omega < 0.0 || omega > 1.0) {
    fail(ErrorCode::kInvalidArgument, "attention_embed: omega outside [0, 1]");
  }
  const size_t n = balls.size();
  std::vector<Token> xz(n), xy(n);
  for (size_t i = 0; i < n; ++i) {
    xz[i] = balls[i].theta_xz;
    xy[i] = balls[i].theta_xy;
  }
  const std::vector<Token> self_h =
      scaled_dot_attention(weights.h.self_attn, xz, xz);
  const std::vector<Token> self_w =
      scaled_dot_attention(weights.w.self_attn, xy, xy);
  const std::vector<Token> cross_h =
      scaled_dot_attention(weights.h.cross_attn, xz, xy);
  const std::vector<Token> cross_w =
      scaled_dot_attention(weights.w.cross_attn, xy, xz);

  AttentionOutput out;
  out.mu_h.resize(n);
  out.mu_w.resize(n);
  for (size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 2; ++c) {
      out.mu_h[i][c] = omega * self_h[i][c] + (1.0 - omega) * cross_h[i][c];
      out.mu_w[i][c] = omega * self_w[i][c] + (1.0 - omega) * cross_w[i][c];
    }
  }
  return out;
}

RayParams predict_kappa(const PointCloud& cloud, const ViewPlane& plane,
                        const PredictorWeights& weights,
                        const PredictConfig& config) {
  const std::vector<size_t> subset = partition_view(cloud, plane);
  if (subset.size() < config.centers) {
    fail(ErrorCode::kInvalidArgument,
         "predict_kappa: plane " + std::to_string(plane.id) + " has " +
             std::to_string(subset.size()) + " points, need >= " +
             std::to_string(config.centers));
  }
  const std::vector<size_t> centers =
      farthest_point_sample(cloud, subset, config.centers);
  const std::vector<BallSummary> balls =
      ball_aggregate(cloud, subset, centers, config.radius);
  const AttentionOutput attn = attention_embed(balls, weights, config.omega);

  double sum_h = 0.0;
  double sum_w = 0.0;
  for (size_t i = 0; i < balls.size(); ++i) {
    sum_h += mlp_forward(weights.h.mlp, attn.mu_h[i]);
    sum_w += mlp_forward(weights.w.mlp, attn.mu_w[i]);
  }
  const double n = static_cast<double>(balls.size());
  const double span = config.kappa_max - config.kappa_min;

  RayParams ray;
  ray.kappa_min = config.kappa_min;
  ray.kappa_max = config.kappa_max;
  ray.kappa_h = config.kappa_min + (sum_h / n) * span;
  ray.kappa_w = config.kappa_min + (sum_w / n) * span;

  if (config.mutate) {
    MutationConfig mutation;
    mutation.kappa_min = config.kappa_min;
    mutation.kappa_max = config.kappa_max;
    mutation.seed = config.seed;
    Rng rng(Rng::derive(config.seed, static_cast<uint64_t>(plane.id)));
    ray.kappa_h = mutate(ray.kappa_h, mutation, rng);
    ray.kappa_w = mutate(ray.kappa_w, mutation, rng);
  }
  return ray;
}

}  // namespace sparkproj
