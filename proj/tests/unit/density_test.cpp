#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "poissonplace/density.hpp"
#include "test_util.hpp"

namespace pp = poissonplace;

namespace {

pp::Circuit one_block(pp::Region region, pp::Point center, double w, double h) {
  pp::Circuit c;
  c.region = region;
  pp::Block b;
  b.name = "b";
  b.width = w;
  b.height = h;
  b.center = center;
  c.blocks.push_back(b);
  return c;
}

}  // namespace

TEST(ExactDensity, FullRegionBlockIsZero) {
  const pp::ExactDensity d({2.0, 3.0}, {{0, 0, 2, 3}});
  for (double x : {0.0, 0.7, 2.0})
    for (double y : {0.0, 1.1, 3.0}) EXPECT_NEAR(pp::exact_density_at(d, {x, y}), 0.0, 1e-15);
}

TEST(ExactDensity, EmptyIsZero) {
  const pp::ExactDensity d({1.0, 1.0}, {});
  EXPECT_EQ(pp::exact_density_at(d, {0.3, 0.4}), 0.0);
}

TEST(ExactDensity, CenteredHalfBlock) {
  const pp::ExactDensity d({1.0, 1.0}, {pp::Rect::centered({0.5, 0.5}, 0.5, 0.5)});
  EXPECT_DOUBLE_EQ(pp::exact_density_at(d, {0.5, 0.5}), 0.75);
  EXPECT_DOUBLE_EQ(pp::exact_density_at(d, {0.1, 0.1}), -0.25);
  // Edges count as covered.
  EXPECT_DOUBLE_EQ(pp::exact_density_at(d, {0.25, 0.5}), 0.75);
}

TEST(ExactDensity, OutsideRegionThrows) {
  const pp::ExactDensity d({1.0, 1.0}, {});
  EXPECT_THROW(pp::exact_density_at(d, {1.5, 0.5}), std::out_of_range);
}

TEST(ExactDensity, IntegratesToZero) {
  // Block edges on quadrature cell boundaries make the midpoint rule exact.
  const std::size_t n = 256;
  const pp::Region region{2.0, 1.0};
  std::mt19937_64 rng(3);
  std::vector<pp::Rect> blocks;
  for (int i = 0; i < 10; ++i) {
    const auto x0 = rng() % 200, y0 = rng() % 200;
    const auto w = 1 + rng() % 50, h = 1 + rng() % 50;
    blocks.push_back({x0 * 2.0 / n, y0 * 1.0 / n, (x0 + w) * 2.0 / n, (y0 + h) * 1.0 / n});
  }
  const pp::ExactDensity d(region, blocks);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      sum += pp::exact_density_at(d, {(i + 0.5) * 2.0 / n, (k + 0.5) * 1.0 / n});
  sum *= region.area() / (n * n);
  EXPECT_LE(std::abs(sum), 1e-6 * d.total_area());
}

TEST(BinDensity, SingleBinBlock) {
  const auto c = one_block({2.0, 2.0}, {0.5, 0.5}, 1.0, 1.0);
  const auto g = pp::build_bin_density(c, c.placement(), 2);
  EXPECT_DOUBLE_EQ(g.raw(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(g.raw(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(g(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(g(0, 1), -0.25);
  EXPECT_DOUBLE_EQ(g(1, 0), -0.25);
  EXPECT_DOUBLE_EQ(g(1, 1), -0.25);
  EXPECT_DOUBLE_EQ(g.raw_mean(), 0.25);
}

TEST(BinDensity, UniformCoverageIsZero) {
  pp::Circuit c;
  c.region = {4.0, 4.0};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      pp::Block b;
      b.name = "b" + std::to_string(i * 4 + k);
      b.width = b.height = 0.5;
      b.center = {i + 0.5, k + 0.5};
      c.blocks.push_back(b);
    }
  const auto g = pp::build_bin_density(c, c.placement(), 4);
  for (std::size_t l = 0; l < 4; ++l)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(g(l, j), 0.0, 1e-15);
}

TEST(BinDensity, MassConservationAndZeroSum) {
  const auto c = pp::testing::random_cells(11, 60, 10, {30.0, 20.0}, 1.7);
  for (bool smoothing : {false, true}) {
    const auto g = pp::build_bin_density(c, c.placement(), 16, {pp::DensitySource::AllBlocks, smoothing});
    double raw = 0.0, centered = 0.0;
    for (std::size_t l = 0; l < 16; ++l)
      for (std::size_t j = 0; j < 16; ++j) {
        raw += g.raw(l, j) * g.bin_area();
        centered += g(l, j);
      }
    double area = 0.0;
    for (const auto& b : c.blocks) area += b.area();
    EXPECT_NEAR(raw, area, 1e-9 * area);
    EXPECT_NEAR(centered, 0.0, 1e-9 * 256);
  }
}

TEST(BinDensity, BlocksClippedToRegion) {
  const auto c = one_block({2.0, 2.0}, {0.0, 0.0}, 1.0, 1.0);
  const auto g = pp::build_bin_density(c, c.placement(), 2, {pp::DensitySource::AllBlocks, false});
  EXPECT_DOUBLE_EQ(g.raw(0, 0), 0.25);
}

TEST(BinDensity, SmallBlockInflatedKeepsArea) {
  // A 0.2 x 0.2 block inside a 1 x 1 bin is spread over a full bin footprint.
  const auto c = one_block({4.0, 4.0}, {1.0, 1.0}, 0.2, 0.2);
  const auto g = pp::build_bin_density(c, c.placement(), 4);
  double total = 0.0;
  for (std::size_t l = 0; l < 4; ++l)
    for (std::size_t j = 0; j < 4; ++j) total += g.raw(l, j);
  EXPECT_NEAR(total, 0.04, 1e-15);
  EXPECT_NEAR(g.raw(0, 0), 0.01, 1e-15);
  EXPECT_NEAR(g.raw(1, 1), 0.01, 1e-15);
}

TEST(BinDensity, RejectsTinyGrid) {
  const auto c = one_block({1.0, 1.0}, {0.5, 0.5}, 0.1, 0.1);
  EXPECT_THROW(pp::build_bin_density(c, c.placement(), 1), std::invalid_argument);
}

TEST(Overflow, ZeroWhenBelowTarget) {
  const auto c = one_block({2.0, 2.0}, {0.5, 0.5}, 1.0, 1.0);
  const auto g = pp::build_bin_density(c, c.placement(), 2, {pp::DensitySource::MovableCells, false});
  EXPECT_EQ(pp::overflow_ratio(g, c), 0.0);
}

TEST(Overflow, HalfWhenBinHoldsTwice) {
  // Two unit blocks stacked in bin (0, 0): raw 2, target 1, movable area 2.
  auto c = one_block({2.0, 2.0}, {0.5, 0.5}, 1.0, 1.0);
  c.blocks.push_back(c.blocks[0]);
  c.blocks[1].name = "b2";
  const auto g = pp::build_bin_density(c, c.placement(), 2, {pp::DensitySource::MovableCells, false});
  EXPECT_DOUBLE_EQ(pp::overflow_ratio(g, c), 0.5);
}

TEST(Overflow, SpreadingNeverIncreases) {
  auto c = one_block({2.0, 2.0}, {0.5, 0.5}, 1.0, 1.0);
  c.blocks.push_back(c.blocks[0]);
  c.blocks[1].name = "b2";
  const auto stacked = pp::overflow_ratio(
      pp::build_bin_density(c, c.placement(), 2, {pp::DensitySource::MovableCells, false}), c);
  c.blocks[1].center = {1.0, 0.5};
  const auto spread = pp::overflow_ratio(
      pp::build_bin_density(c, c.placement(), 2, {pp::DensitySource::MovableCells, false}), c);
  EXPECT_LE(spread, stacked);
}

TEST(Overflow, ZeroMovableAreaIsZero) {
  auto c = one_block({2.0, 2.0}, {0.5, 0.5}, 1.0, 1.0);
  c.blocks[0].movable = false;
  const auto g = pp::build_bin_density(c, c.placement(), 2, {pp::DensitySource::MovableCells, false});
  EXPECT_EQ(pp::overflow_ratio(g, c), 0.0);
}

TEST(Overflow, FixedOccupancyShrinksCapacity) {
  auto c = one_block({2.0, 2.0}, {0.5, 0.5}, 1.0, 0.5);
  pp::Block fixed = c.blocks[0];
  fixed.name = "macro";
  fixed.movable = false;
  fixed.center = {0.5, 0.75};
  c.blocks[0].center = {0.5, 0.25};
  c.blocks.push_back(fixed);
  const auto pl = c.placement();
  const auto movable = pp::build_bin_density(c, pl, 2, {pp::DensitySource::MovableCells, false});
  const auto occupied = pp::build_bin_density(c, pl, 2, {pp::DensitySource::FixedBlocks, false});
  EXPECT_EQ(pp::overflow_ratio(movable, occupied, c), 0.0);
  c.blocks[0].center = {0.5, 0.75};
  const auto stacked =
      pp::build_bin_density(c, c.placement(), 2, {pp::DensitySource::MovableCells, false});
  EXPECT_DOUBLE_EQ(pp::overflow_ratio(stacked, occupied, c), 0.0);
  c.target_density = 0.5;
  EXPECT_DOUBLE_EQ(pp::overflow_ratio(stacked, occupied, c), 0.5);
}
