#include "core/objective.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace sparkproj {

double u_space_from_fraction(double fraction, double tau) {
  if (fraction < 0.0 || tau < 0.0) {
    fail(ErrorCode::kDomain, "u_space: fraction and tau must be >= 0");
  }
  if (fraction == 0.0) return 0.0;
  return std::pow(fraction, tau);
}

double u_space(const RasterImage& img, double tau) {
  const std::vector<bool> mask = black_mask(img);
  size_t semantic = 0;
  for (const bool black : mask) {
    if (!black) ++semantic;
  }
  const double fraction =
      static_cast<double>(semantic) / static_cast<double>(mask.size());
  return u_space_from_fraction(fraction, tau);
}

namespace {
constexpr double kSqrt2Pi = 2.506628274631000502;
}

double gauss_reg(double kappa_h, double kappa_w, double u) {
  if (u <= 0.0) {
    fail(ErrorCode::kDomain, "gauss_reg: u_space must be > 0");
  }
  const double q = (kappa_h * kappa_h + kappa_w * kappa_w) / (2.0 * u * u);
  return 1.0 / (kSqrt2Pi * u) * std::exp(-q);
}

std::pair<double, double> grad_gauss_reg(double kappa_h, double kappa_w,
                                         double u) {
  const double l = gauss_reg(kappa_h, kappa_w, u);
  const double inv_u2 = 1.0 / (u * u);
  return {-kappa_h * inv_u2 * l, -kappa_w * inv_u2 * l};
}

double l_sparks(const std::vector<UtilizationReport>& reports) {
  double sum = 0.0;
  for (const UtilizationReport& report : reports) {
    if (report.u_space > 0.0) {
      sum += gauss_reg(report.kappa.kappa_h, report.kappa.kappa_w,
                       report.u_space);
    }
  }
  return sum;
}

double cross_entropy(const std::vector<std::vector<double>>& logits,
                     const std::vector<std::vector<double>>& labels) {
  if (logits.empty() || logits.size() != labels.size()) {
    fail(ErrorCode::kInvalidArgument,
         "cross_entropy: need matching, non-empty logits and labels");
  }
  const size_t classes = logits.front().size();
  if (classes < 2) {
    fail(ErrorCode::kInvalidArgument, "cross_entropy: need >= 2 classes");
  }
  double total = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    const std::vector<double>& row = logits[i];
    if (row.size() != classes || labels[i].size() != classes) {
      fail(ErrorCode::kInvalidArgument, "cross_entropy: ragged rows");
    }
    double row_max = row[0];
    for (const double v : row) {
      if (!std::isfinite(v)) {
        fail(ErrorCode::kDomain, "cross_entropy: non-finite logit");
      }
      row_max = std::max(row_max, v);
    }
    double denom = 0.0;
    for (const double v : row) denom += std::exp(v - row_max);
    const double log_denom = std::log(denom);
    for (size_t c = 0; c < classes; ++c) {
      if (labels[i][c] != 0.0) {
        total += labels[i][c] * (row[c] - row_max - log_denom);
      }
    }
  }
  const double n = static_cast<double>(logits.size());
  return -total / (n * static_cast<double>(classes));
}

double total_loss(double cross_entropy_value, double sparks, double lambda) {
  if (lambda < 0.0) {
    fail(ErrorCode::kInvalidArgument, "total_loss: lambda must be >= 0");
  }
  return cross_entropy_value + lambda * sparks;
}

}  // namespace sparkproj
