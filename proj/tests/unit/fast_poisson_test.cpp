#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "poissonplace/analytic.hpp"
#include "poissonplace/fast_poisson.hpp"
#include "poissonplace/transform.hpp"
#include "test_util.hpp"

namespace pp = poissonplace;
using std::numbers::pi;

namespace {

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

pp::SpectralCoefficients random_coefficients(std::uint64_t seed, std::size_t m, pp::Region r) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  pp::SpectralCoefficients c(m - 1, r);
  for (auto& v : c.values()) v = n(rng);
  c(0, 0) = 0.0;
  return c;
}

}  // namespace

TEST(ReducedTransform, MatchesNaiveSums) {
  for (std::size_t m : {2u, 4u, 8u, 16u, 32u})
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto g = pp::testing::random_grid(100 * m + s, m);
      const auto fast = pp::reduced_transform(g);
      const auto naive = pp::naive_reduced_transform(g);
      EXPECT_LE(max_diff(fast.values, naive.values), 1e-10) << "m=" << m;
      EXPECT_EQ(fast(0, 0), 0.0);
    }
}

TEST(ReducedTransform, TwoByTwoSingleBlockGrid) {
  pp::DensityGrid g(2, {1.0, 1.0});
  g(0, 0) = 0.75;
  g(0, 1) = g(1, 0) = g(1, 1) = -0.25;
  const auto fast = pp::reduced_transform(g);
  const auto naive = pp::naive_reduced_transform(g);
  EXPECT_LE(max_diff(fast.values, naive.values), 1e-12);
  // a'(u,p) = cos(u pi / 4) cos(p pi / 4) for the impulse; the mean term drops for u + p > 0.
  EXPECT_NEAR(fast(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(fast(1, 0), std::sqrt(0.5), 1e-15);
}

TEST(ReducedTransform, ImpulseBeforeMeanShift) {
  const std::size_t m = 8;
  pp::DensityGrid g(m, {1.0, 1.0});
  g(0, 0) = 1.0;
  const auto naive = pp::naive_reduced_transform(g);
  const auto fast = pp::reduced_transform(g);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < m; ++p) {
      if (u == 0 && p == 0) continue;
      const double expect = std::cos(u * pi / (2.0 * m)) * std::cos(p * pi / (2.0 * m));
      EXPECT_NEAR(naive(u, p), expect, 1e-14);
      EXPECT_NEAR(fast(u, p), expect, 1e-14);
    }
}

TEST(ReducedTransform, ZeroGridAndSizeGuard) {
  const pp::DensityGrid g(8, {1.0, 1.0});
  for (double v : pp::reduced_transform(g).values) EXPECT_EQ(v, 0.0);
  for (double v : pp::naive_reduced_transform(g).values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(pp::reduced_transform(pp::DensityGrid(6, {1.0, 1.0})), std::invalid_argument);
}

TEST(ScaleCoefficients, ZeroInZeroOut) {
  const pp::ReducedCoefficients r(8);
  const auto c = pp::scale_coefficients(r, {2.0, 1.0});
  EXPECT_EQ(c.order(), 7u);
  for (double v : c.values()) EXPECT_EQ(v, 0.0);
}

TEST(ScaleCoefficients, PerModeFactors) {
  pp::ReducedCoefficients r(4);
  for (auto& v : r.values) v = 1.0;
  r(0, 0) = 0.0;
  const double W = 2.0, H = 3.0, m = 4.0;
  const auto c = pp::scale_coefficients(r, {W, H});
  EXPECT_EQ(c(0, 0), 0.0);
  EXPECT_NEAR(c(0, 2), 4 * H * H / (8 * pi * pi * pi * m) * std::sin(2 * pi / (2 * m)), 1e-15);
  EXPECT_NEAR(c(3, 0), 4 * W * W / (27 * pi * pi * pi * m) * std::sin(3 * pi / (2 * m)), 1e-15);
  EXPECT_NEAR(c(1, 2),
              16 * W * W * H * H / (2 * (H * H + 4 * W * W) * std::pow(pi, 4)) * std::sin(pi / 8) *
                  std::sin(2 * pi / 8),
              1e-15);
}

TEST(ScaleCoefficients, ApproachesExactCoefficientsAsGridRefines) {
  // One bin-aligned block on the unit square: the binned density is exact,
  // so only the midpoint-sum error of the transform remains.
  const pp::Region r{1.0, 1.0};
  const pp::Rect block{0.25, 0.5, 0.5, 0.75};
  pp::Circuit circuit;
  circuit.region = r;
  pp::Block b;
  b.name = "b";
  b.width = b.height = 0.25;
  b.center = {0.375, 0.625};
  circuit.blocks.push_back(b);
  const auto exact = pp::exact_coefficients(pp::ExactDensity(r, {block}), 3);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t m : {4u, 8u, 16u, 32u, 64u}) {
    const auto grid = pp::build_bin_density(circuit, circuit.placement(), m, {pp::DensitySource::AllBlocks, false});
    const auto fast = pp::scale_coefficients(pp::reduced_transform(grid), r);
    double err = 0.0;
    for (std::size_t u = 0; u <= 3; ++u)
      for (std::size_t p = 0; p <= 3; ++p) err = std::max(err, std::abs(fast(u, p) - exact(u, p)));
    EXPECT_LE(err, prev) << "m=" << m;
    prev = err;
  }
  EXPECT_LE(prev, 1e-4);
}

TEST(FastFieldMap, SingleMode) {
  const std::size_t m = 8;
  const pp::Region r{2.0, 1.0};
  pp::SpectralCoefficients c(m - 1, r);
  c(1, 0) = 1.0;
  const auto map = pp::fast_field_map(c, m);
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) {
      const double t = (l + 0.5) * pi / m;
      EXPECT_NEAR(map.psi[map.index(l, j)], std::cos(t), 1e-14);
      EXPECT_NEAR(map.xi_x[map.index(l, j)], pi / r.width * std::sin(t), 1e-14);
      EXPECT_NEAR(map.xi_y[map.index(l, j)], 0.0, 1e-14);
    }
}

TEST(FastFieldMap, MatchesDirectSums) {
  for (std::size_t m : {2u, 4u, 8u, 16u, 32u}) {
    const auto c = random_coefficients(m, m, {1.3, 0.7});
    const auto fast = pp::fast_field_map(c, m);
    const auto naive = pp::naive_field_map(c, m);
    EXPECT_LE(max_diff(fast.psi, naive.psi), 1e-10) << m;
    EXPECT_LE(max_diff(fast.xi_x, naive.xi_x), 1e-10) << m;
    EXPECT_LE(max_diff(fast.xi_y, naive.xi_y), 1e-10) << m;
  }
}

TEST(FastFieldMap, ZeroCoefficientsAndOrderGuard) {
  const pp::SpectralCoefficients c(7, {1.0, 1.0});
  const auto map = pp::fast_field_map(c, 8);
  for (double v : map.psi) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(pp::fast_field_map(c, 16), std::invalid_argument);
}

TEST(FastPipeline, MatchesNaivePipelineAndHasZeroMean) {
  for (std::size_t m : {4u, 8u, 16u, 32u}) {
    const auto g = pp::testing::random_grid(m + 7, m, {3.0, 2.0});
    pp::CosineTransform2D t(m);
    const auto fast = pp::solve_fast(g, t);
    const auto naive = pp::naive_field_map(pp::scale_coefficients(pp::naive_reduced_transform(g), g.region()), m);
    EXPECT_LE(max_diff(fast.psi, naive.psi), 1e-9);
    EXPECT_LE(max_diff(fast.xi_x, naive.xi_x), 1e-9);
    EXPECT_LE(std::abs(pp::mean(fast.psi)), 1e-9 * pp::max_abs(fast.psi));
  }
}

TEST(FastPipeline, ConvergesToExactSeries) {
  const pp::Region r{1.0, 1.0};
  std::mt19937_64 rng(21);
  const auto rects = pp::testing::random_blocks(rng, 10, r);
  pp::Circuit circuit;
  circuit.region = r;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    pp::Block b;
    b.name = "b" + std::to_string(i);
    b.width = rects[i].width();
    b.height = rects[i].height();
    b.center = {0.5 * (rects[i].x_lo + rects[i].x_hi), 0.5 * (rects[i].y_lo + rects[i].y_hi)};
    circuit.blocks.push_back(b);
  }
  const auto exact = pp::exact_coefficients(pp::ExactDensity(r, rects), 256);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t m : {8u, 16u, 32u, 64u}) {
    const auto grid = pp::build_bin_density(circuit, circuit.placement(), m, {pp::DensitySource::AllBlocks, false});
    pp::CosineTransform2D t(m);
    const auto map = pp::solve_fast(grid, t);
    double err = 0.0;
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t j = 0; j < m; ++j)
        err = std::max(err, std::abs(map.psi[map.index(l, j)] - pp::eval_potential(exact, grid.bin_center(l, j))));
    EXPECT_LE(err, prev) << "m=" << m;
    prev = err;
  }
}

TEST(SpectralBaseline, MatchesDirectSums) {
  for (std::size_t m : {2u, 4u, 8u, 16u}) {
    const auto g = pp::testing::random_grid(m, m);
    const auto fast = pp::spectral_baseline(g);
    const auto naive = pp::naive_spectral_baseline(g);
    EXPECT_LE(max_diff(fast.psi, naive.psi), 1e-12) << m;
    EXPECT_LE(max_diff(fast.xi_x, naive.xi_x), 1e-12) << m;
    EXPECT_LE(max_diff(fast.xi_y, naive.xi_y), 1e-12) << m;
  }
  const auto odd = pp::testing::random_grid(6, 6);
  EXPECT_LE(max_diff(pp::spectral_baseline(odd).psi, pp::naive_spectral_baseline(odd).psi), 1e-12);
}

TEST(SpectralBaseline, ZeroGrid) {
  const auto map = pp::spectral_baseline(pp::DensityGrid(8, {1.0, 1.0}));
  for (double v : map.psi) EXPECT_EQ(v, 0.0);
}

TEST(SpectralBaseline, SingleModeWithAliasedPartner) {
  // With integer sample points, frequency 1 and m - 1 coincide, so the verbatim
  // formulas return grid * 0.25 (1 / 2w1^2 + 2 / (w1^2 + w7^2) + 1 / 2w7^2).
  const std::size_t m = 8;
  const double w1 = 2 * pi / m;
  pp::DensityGrid g(m, {1.0, 1.0});
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) g(l, j) = std::cos(w1 * l) * std::cos(w1 * j);
  const auto map = pp::spectral_baseline(g);
  const double factor = 0.22298931518346337291;
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) EXPECT_NEAR(map.psi[map.index(l, j)], factor * g(l, j), 1e-14);
}

TEST(SpectralBaseline, DiffersFromAnalyticOnCornerCluster) {
  const std::size_t m = 16;
  pp::DensityGrid g(m, {1.0, 1.0});
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t j = 0; j < 3; ++j) g(l, j) = 1.0;
  g.subtract_mean();
  pp::CosineTransform2D t(m);
  const auto ours = pp::solve_fast(g, t);
  const auto base = pp::to_region_units(pp::spectral_baseline(g));
  EXPECT_GT(max_diff(ours.psi, base.psi), 0.0);
  EXPECT_LE(std::abs(pp::mean(base.psi)), 1e-9 * pp::max_abs(base.psi));
}

TEST(Interpolation, CentersMidpointsAndEnvelope) {
  const auto c = random_coefficients(3, 8, {2.0, 1.0});
  const auto map = pp::fast_field_map(c, 8);
  const double bw = map.bin_width(), bh = map.bin_height();
  const auto at = pp::interpolate_field(map, {2.5 * bw, 4.5 * bh});
  EXPECT_NEAR(at.psi, map.psi[map.index(2, 4)], 1e-14);
  EXPECT_NEAR(at.xi_x, map.xi_x[map.index(2, 4)], 1e-14);
  const auto mid = pp::interpolate_field(map, {3.0 * bw, 4.5 * bh});
  EXPECT_NEAR(mid.psi, 0.5 * (map.psi[map.index(2, 4)] + map.psi[map.index(3, 4)]), 1e-14);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ux(0.5 * bw, 2.0 - 0.5 * bw), uy(0.5 * bh, 1.0 - 0.5 * bh);
  for (int k = 0; k < 50; ++k) {
    const pp::Point p{ux(rng), uy(rng)};
    const auto l = static_cast<std::size_t>(p.x / bw - 0.5), j = static_cast<std::size_t>(p.y / bh - 0.5);
    const double vals[] = {map.psi[map.index(l, j)], map.psi[map.index(l + 1, j)],
                           map.psi[map.index(l, j + 1)], map.psi[map.index(l + 1, j + 1)]};
    const double v = pp::interpolate_field(map, p).psi;
    EXPECT_GE(v, *std::min_element(std::begin(vals), std::end(vals)) - 1e-14);
    EXPECT_LE(v, *std::max_element(std::begin(vals), std::end(vals)) + 1e-14);
  }
  // Corner ring clamps to the corner bin.
  EXPECT_NEAR(pp::interpolate_field(map, {0.0, 0.0}).psi, map.psi[0], 1e-14);
  EXPECT_THROW(pp::interpolate_field(map, {2.1, 0.5}), std::out_of_range);
}

TEST(PeriodicTransform, RowSums) {
  const std::size_t m = 6;
  std::vector<double> a(m * m), c(m * m), s(m * m);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-1, 1);
  for (auto& v : a) v = d(rng);
  c = a;
  s = a;
  pp::PeriodicTransform t(m);
  t.cos_rows(c);
  t.sin_rows(s);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < m; ++k) {
      double ec = 0.0, es = 0.0;
      for (std::size_t l = 0; l < m; ++l) {
        ec += a[r * m + l] * std::cos(2 * pi * k * l / m);
        es += a[r * m + l] * std::sin(2 * pi * k * l / m);
      }
      EXPECT_NEAR(c[r * m + k], ec, 1e-13);
      EXPECT_NEAR(s[r * m + k], es, 1e-13);
    }
}
