#include "poissonplace/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace poissonplace {

namespace {

// Distribution helpers on raw engine output so results do not depend on the
// standard library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
}

}  // namespace

SyntheticLayout parse_layout(const std::string& name) {
  if (name == "center") return SyntheticLayout::Center;
  if (name == "corner") return SyntheticLayout::Corner;
  if (name == "uniform") return SyntheticLayout::Uniform;
  if (name == "random") return SyntheticLayout::Random;
  throw CircuitError("unknown layout '" + name + "' (expected center, corner, uniform, random)");
}

Circuit generate_synthetic(std::size_t n_cells, std::size_t n_nets, Region region,
                           std::uint64_t seed) {
  SyntheticSpec spec;
  spec.n_cells = n_cells;
  spec.n_nets = n_nets;
  spec.region = region;
  spec.seed = seed;
  return generate_synthetic(spec);
}

Circuit generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_cells < 1) throw CircuitError("synthetic circuit needs at least one cell");
  if (!(spec.region.width > 0.0) || !(spec.region.height > 0.0))
    throw CircuitError("synthetic region must be positive");
  if (!(spec.utilization > 0.0) || spec.utilization > 0.7)
    throw CircuitError("infeasible area request: utilization must lie in (0, 0.7]");

  const double W = spec.region.width;
  const double H = spec.region.height;
  const auto n = spec.n_cells;
  const double cell_area = spec.utilization * W * H / static_cast<double>(n);
  const double rows = std::max(1.0, std::round(H / std::sqrt(cell_area)));
  const double cell_h = H / rows;
  const double cell_w = cell_area / cell_h;
  const double per_row = std::floor(W / cell_w);
  if (cell_w > W || per_row * rows < static_cast<double>(n))
    throw CircuitError("infeasible area request: cells do not fit on the rows");

  Circuit c;
  c.name = "synthetic" + std::to_string(n) + "_s" + std::to_string(spec.seed);
  c.region = spec.region;
  c.target_density = 1.0;
  for (int r = 0; r < static_cast<int>(rows); ++r)
    c.rows.push_back({r * cell_h, cell_h, 0.0, W, 0.0});

  std::mt19937_64 rng(spec.seed);
  c.blocks.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    c.blocks.push_back({"c" + std::to_string(i), cell_w, cell_h, true, false, {}});

  // Hidden lattice position of each cell; nets mostly stay within radius 2.
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  auto lattice_cell = [&](long gx, long gy) -> long {
    if (gx < 0 || gy < 0 || gx >= static_cast<long>(side) || gy >= static_cast<long>(side)) return -1;
    const long id = gy * static_cast<long>(side) + gx;
    return id < static_cast<long>(n) ? id : -1;
  };

  c.nets.reserve(spec.n_nets);
  for (std::size_t k = 0; k < spec.n_nets; ++k) {
    Net net;
    net.name = "n" + std::to_string(k);
    const std::size_t degree = std::min<std::size_t>(2 + below(rng, 4), n);
    const std::size_t anchor = below(rng, n);
    const bool global = below(rng, 10) == 0;
    std::unordered_set<std::size_t> used{anchor};
    net.pins.push_back({anchor, {}});
    int attempts = 0;
    while (net.pins.size() < degree && attempts++ < 64) {
      std::size_t pick;
      if (global) {
        pick = below(rng, n);
      } else {
        const long ax = static_cast<long>(anchor % side);
        const long ay = static_cast<long>(anchor / side);
        const long dx = static_cast<long>(below(rng, 5)) - 2;
        const long dy = static_cast<long>(below(rng, 5)) - 2;
        const long id = lattice_cell(ax + dx, ay + dy);
        if (id < 0) continue;
        pick = static_cast<std::size_t>(id);
      }
      if (used.insert(pick).second) net.pins.push_back({pick, {}});
    }
    c.nets.push_back(std::move(net));
  }

  const Point mid{0.5 * W, 0.5 * H};
  const double spread = 0.02 * std::min(W, H);
  for (std::size_t i = 0; i < n; ++i) {
    auto& b = c.blocks[i];
    switch (spec.layout) {
      case SyntheticLayout::Center:
        b.center = {mid.x + spread * (unit(rng) - 0.5), mid.y + spread * (unit(rng) - 0.5)};
        break;
      case SyntheticLayout::Corner:
        b.center = {0.15 * W + spread * (unit(rng) - 0.5), 0.15 * H + spread * (unit(rng) - 0.5)};
        break;
      case SyntheticLayout::Uniform: {
        const double pitch_x = W / static_cast<double>(side);
        const double pitch_y = H / static_cast<double>(side);
        b.center = {(static_cast<double>(i % side) + 0.5) * pitch_x,
                    (static_cast<double>(i / side) + 0.5) * pitch_y};
        break;
      }
      case SyntheticLayout::Random:
        b.center = {unit(rng) * W, unit(rng) * H};
        break;
    }
  }
  Placement p = c.placement();
  clamp_to_region(c, p);
  c.apply(p);
  return c;
}

}  // namespace poissonplace
