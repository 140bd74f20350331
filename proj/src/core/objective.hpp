#pragma once

#include <utility>
#include <vector>

#include "core/raster.hpp"
#include "core/types.hpp"

namespace sparkproj {

// Per-plane scoring summary, the unit of CLI report output.
struct UtilizationReport {
  int plane_id = 0;
  double semantic_fraction = 0.0;  // non-black pixels / (H*W)
  double tau = 0.0;
  double u_space = 0.0;    // semantic_fraction ^ tau
  double reg_peak = 0.0;   // l(0, 0); 0 when u_space == 0
  double reg_value = 0.0;  // l(kappa_h, kappa_w); 0 when u_space == 0
  RayParams kappa;
  bool empty_subset = false;
};

// fraction^tau with the convention 0^0 = 0: an all-black image scores 0 at
// any tau. fraction is the non-black pixel share of a semantic image.
double u_space(const RasterImage& img, double tau);
double u_space_from_fraction(double fraction, double tau);

// 2D Gaussian kernel with standard deviation u:
//   l(kh, kw) = 1/(sqrt(2*pi)*u) * exp(-(kh^2 + kw^2)/(2*u^2))
// Requires u > 0; callers must handle all-black images before scoring.
double gauss_reg(double kappa_h, double kappa_w, double u);

// Analytic gradient of gauss_reg with u held constant:
//   dl/dkh = -(kh/u^2) * l(kh, kw), likewise for kw.
std::pair<double, double> grad_gauss_reg(double kappa_h, double kappa_w,
                                         double u);

// Sum of gauss_reg over planes, each with its own u_space. Planes whose
// u_space is 0 (degenerate) contribute nothing.
double l_sparks(const std::vector<UtilizationReport>& reports);

// Cross-entropy with the -1/(n*C) prefactor over one-hot label rows:
//   L = -1/(n*C) * sum_i sum_c label[i][c] * log softmax(logits[i])[c]
double cross_entropy(const std::vector<std::vector<double>>& logits,
                     const std::vector<std::vector<double>>& labels);

double total_loss(double cross_entropy_value, double sparks, double lambda);

}  // namespace sparkproj
