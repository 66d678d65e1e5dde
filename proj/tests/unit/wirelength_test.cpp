#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "poissonplace/wirelength.hpp"
#include "test_util.hpp"

namespace pp = poissonplace;

namespace {

pp::Circuit points(const std::vector<pp::Point>& at) {
  pp::Circuit c;
  c.region = {10.0, 10.0};
  pp::Net net;
  net.name = "n";
  for (std::size_t i = 0; i < at.size(); ++i) {
    pp::Block b;
    b.name = "b" + std::to_string(i);
    b.width = b.height = 0.1;
    b.center = at[i];
    c.blocks.push_back(b);
    net.pins.push_back({i, {}});
  }
  c.nets.push_back(net);
  return c;
}

}  // namespace

TEST(Hpwl, TwoPinNet) {
  const auto c = points({{0, 0}, {3, 4}});
  EXPECT_DOUBLE_EQ(pp::hpwl(c, c.placement()), 7.0);
}

TEST(Hpwl, CoincidentPinsAndPermutation) {
  const auto same = points({{2, 2}, {2, 2}, {2, 2}});
  EXPECT_EQ(pp::hpwl(same, same.placement()), 0.0);
  auto c = pp::testing::random_cells(1, 20, 15, {20, 20}, 1.0);
  const double before = pp::hpwl(c, c.placement());
  std::mt19937_64 rng(3);
  for (auto& n : c.nets) std::shuffle(n.pins.begin(), n.pins.end(), rng);
  EXPECT_DOUBLE_EQ(pp::hpwl(c, c.placement()), before);
}

TEST(Lse, ReferenceValue) {
  const auto c = points({{0, 0}, {1, 2}, {3, 2}});
  EXPECT_NEAR(pp::lse_value(c, c.placement(), 0.5), 5.4439648344822341437, 1e-12);
}

TEST(Lse, BoundsAroundHpwl) {
  const auto c = pp::testing::random_cells(4, 30, 40, {20, 20}, 1.0);
  const auto pl = c.placement();
  for (double gamma : {0.01, 0.1, 1.0}) {
    for (const auto& net : c.nets) {
      pp::Circuit one = c;
      one.nets = {net};
      const double h = pp::hpwl(one, pl);
      const double w = pp::lse_value(one, pl, gamma);
      EXPECT_GE(w, h - 1e-12);
      // Each axis adds at most 2 gamma ln P.
      EXPECT_LE(w - h, 4.0 * gamma * std::log(static_cast<double>(net.pins.size())) + 1e-12);
    }
  }
  EXPECT_NEAR(pp::lse_value(c, pl, 1e-4), pp::hpwl(c, pl), 1e-4 * 4 * std::log(5.0) * c.nets.size());
}

TEST(Lse, GradientMatchesFiniteDifferences) {
  auto c = pp::testing::random_cells(8, 20, 25, {10, 10}, 0.5);
  const double gamma = 0.4;
  const auto pl = c.placement();
  const auto g = pp::lse_wirelength(c, pl, gamma);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < pl.size(); ++i)
    for (int axis = 0; axis < 2; ++axis) {
      const double h = 1e-5;
      auto plus = pl, minus = pl;
      (axis ? plus[i].y : plus[i].x) += h;
      (axis ? minus[i].y : minus[i].x) -= h;
      const double fd = (pp::lse_value(c, plus, gamma) - pp::lse_value(c, minus, gamma)) / (2 * h);
      const double an = axis ? g.gradient[i].y : g.gradient[i].x;
      num += (fd - an) * (fd - an);
      den += fd * fd;
    }
  EXPECT_LE(std::sqrt(num / den), 1e-5);
}

TEST(Lse, StableForLargeCoordinates) {
  const auto c = points({{1e6, 1e6}, {1e6 + 3, 1e6 + 4}});
  const double v = pp::lse_value(c, c.placement(), 1e-3);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, 7.0, 1e-6);
  EXPECT_THROW(pp::lse_value(c, c.placement(), 0.0), std::invalid_argument);
}
