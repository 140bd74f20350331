#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "core/error.hpp"
#include "core/objective.hpp"

using namespace sparkproj;

namespace {

RasterImage image_with_fraction(int rows, int cols, size_t colored) {
  RasterImage img;
  img.height = rows;
  img.width = cols;
  img.mode = ColorMode::kSemantic;
  const size_t n = static_cast<size_t>(rows) * cols;
  img.pixels.assign(n, Rgb{});
  img.depth.assign(n, std::numeric_limits<double>::infinity());
  img.winner.assign(n, -1);
  for (size_t i = 0; i < colored; ++i) {
    img.pixels[i] = {0.2, 0.8, 0.1};
    img.depth[i] = 0.1;
    img.winner[i] = static_cast<int64_t>(i);
  }
  return img;
}

}  // namespace

TEST_CASE("u_space basics") {
  CHECK(u_space(image_with_fraction(224, 224, 0), 0.8) == 0.0);
  // zero fraction scores zero at any exponent, including tau = 0
  CHECK(u_space(image_with_fraction(8, 8, 0), 0.0) == 0.0);
  CHECK(u_space(image_with_fraction(8, 8, 32), 1.0) == 0.5);
  CHECK(u_space(image_with_fraction(8, 8, 32), 0.0) == 1.0);
  // 0.371^0.8 (independent calculator: 0.4523755537066463)
  CHECK(u_space_from_fraction(0.371, 0.8) ==
        doctest::Approx(0.4523755537066463).epsilon(1e-12));
}

TEST_CASE("u_space is monotone in the fraction") {
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double value = u_space_from_fraction(i / 20.0, 0.8);
    CHECK(value > prev);
    prev = value;
  }
  CHECK(u_space_from_fraction(0.37, 0.0) == 1.0);
}

TEST_CASE("gauss_reg reproduces the anchored values") {
  // fraction 0.722, tau 0.8 -> peak ~0.52
  const double u = std::pow(0.722, 0.8);
  CHECK(gauss_reg(0, 0, u) == doctest::Approx(0.5177025543).epsilon(1e-9));
  // closed-form inversion: u = 1/sqrt(2*pi) gives peak exactly 1
  CHECK(gauss_reg(0, 0, 0.3989422804014327) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // deep tail vanishes
  CHECK(gauss_reg(10, 10, 0.5) < 1e-30);
  // degenerate kernel is a domain error
  CHECK_THROWS_AS(gauss_reg(0, 0, 0.0), Error);
  CHECK_THROWS_AS(gauss_reg(0, 0, -0.2), Error);
}

TEST_CASE("gauss_reg peaks at zero curvature and decays with |kappa| and u") {
  const double u = 0.6;
  const double peak = gauss_reg(0, 0, u);
  double prev = peak;
  for (double k = 0.5; k <= 3.0; k += 0.5) {
    const double v = gauss_reg(k, 0, u);
    CHECK(v < prev);
    CHECK(gauss_reg(-k, 0, u) == v);
    CHECK(gauss_reg(0, k, u) < peak);
    prev = v;
  }
  // larger utilization lowers the peak
  CHECK(gauss_reg(0, 0, 0.8) < gauss_reg(0, 0, 0.5));
}

TEST_CASE("grad_gauss_reg matches finite differences") {
  auto [dh0, dw0] = grad_gauss_reg(0, 0, 0.7);
  CHECK(dh0 == 0.0);
  CHECK(dw0 == 0.0);

  auto [dh_pos, dw_unused] = grad_gauss_reg(0.8, 0.3, 0.6);
  (void)dw_unused;
  CHECK(dh_pos < 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> curve(0.25, 3.0);
  std::uniform_real_distribution<double> sigma(0.3, 1.2);
  std::uniform_int_distribution<int> sign(0, 1);
  const double step = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const double kh = (sign(rng) ? 1 : -1) * curve(rng);
    const double kw = (sign(rng) ? 1 : -1) * curve(rng);
    const double u = sigma(rng);
    const auto [dh, dw] = grad_gauss_reg(kh, kw, u);
    const double fd_h =
        (gauss_reg(kh + step, kw, u) - gauss_reg(kh - step, kw, u)) /
        (2 * step);
    const double fd_w =
        (gauss_reg(kh, kw + step, u) - gauss_reg(kh, kw - step, u)) /
        (2 * step);
    CHECK(std::abs(dh - fd_h) / std::abs(fd_h) < 1e-5);
    CHECK(std::abs(dw - fd_w) / std::abs(fd_w) < 1e-5);
  }
}

TEST_CASE("l_sparks sums per-plane kernels") {
  CHECK(l_sparks({}) == 0.0);

  UtilizationReport one;
  one.kappa = {0, 0, -5, 5};
  one.u_space = std::pow(0.722, 0.8);
  CHECK(l_sparks({one}) == gauss_reg(0, 0, one.u_space));

  // two planes anchored at ~0.52 and ~0.45 sum to ~0.97
  UtilizationReport a = one;
  UtilizationReport b = one;
  b.u_space = std::pow(0.853, 0.8);
  CHECK(l_sparks({a, b}) == doctest::Approx(0.97).epsilon(0.01));

  // degenerate planes contribute nothing
  UtilizationReport empty;
  empty.u_space = 0.0;
  CHECK(l_sparks({empty, one}) == gauss_reg(0, 0, one.u_space));
}

TEST_CASE("cross entropy closed forms") {
  // n=1, C=2, equal logits: ln(2)/2
  CHECK(cross_entropy({{1.5, 1.5}}, {{1, 0}}) ==
        doctest::Approx(0.34657359027997264).epsilon(1e-12));
  CHECK(cross_entropy({{1.5, 1.5}}, {{0, 1}}) ==
        doctest::Approx(0.34657359027997264).epsilon(1e-12));

  // a strongly correct logit drives the loss to zero
  CHECK(cross_entropy({{60.0, 0.0}}, {{1, 0}}) < 1e-12);

  // duplicating identical rows changes nothing, exactly
  const double single = cross_entropy({{0.3, -1.2, 0.8}}, {{0, 0, 1}});
  const double doubled = cross_entropy({{0.3, -1.2, 0.8}, {0.3, -1.2, 0.8}},
                                       {{0, 0, 1}, {0, 0, 1}});
  CHECK(single == doubled);

  CHECK_THROWS_AS(
      cross_entropy({{std::numeric_limits<double>::infinity(), 0.0}}, {{1, 0}}),
      Error);
  CHECK_THROWS_AS(cross_entropy({}, {}), Error);
}

TEST_CASE("total loss composition") {
  CHECK(total_loss(1.7, 0.5, 0.0) == 1.7);
  CHECK(total_loss(1.0, 0.5, 0.2) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(total_loss(0.42, 0.0, 0.3) == 0.42);
  CHECK_THROWS_AS(total_loss(1.0, 1.0, -0.1), Error);
}

TEST_CASE("regularization column reproduction") {
  const double fractions[6] = {0.371, 0.722, 0.778, 0.853, 0.802, 0.745};
  const double expected[6] = {0.88, 0.52, 0.49, 0.45, 0.48, 0.50};
  for (int i = 0; i < 6; ++i) {
    const double u = u_space_from_fraction(fractions[i], 0.8);
    const double reg = gauss_reg(0, 0, u);
    CHECK(std::abs(reg - expected[i]) < 0.01);
    CHECK(std::round(reg * 100.0) / 100.0 ==
          doctest::Approx(expected[i]).epsilon(1e-12));
  }
}
