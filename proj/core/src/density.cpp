#include "poissonplace/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace poissonplace {

DensityGrid::DensityGrid(std::size_t m, Region region)
    : m_(m), region_(region), values_(m * m, 0.0) {}

Point DensityGrid::bin_center(std::size_t l, std::size_t j) const {
  return {(static_cast<double>(l) + 0.5) * bin_width(), (static_cast<double>(j) + 0.5) * bin_height()};
}

void DensityGrid::subtract_mean() {
  const double mean =
      std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
  for (double& v : values_) v -= mean;
  raw_mean_ += mean;
}

namespace {

bool selected(const Block& b, DensitySource source) {
  switch (source) {
    case DensitySource::AllBlocks:
      return true;
    case DensitySource::MovableCells:
      return b.movable && !b.is_filler;
    case DensitySource::FixedBlocks:
      return !b.movable;
  }
  return false;
}

// Interval [lo, hi) of length `len` centered at c, pushed inside [0, extent]
// when it was inflated and fits.
void footprint(double c, double len, double extent, bool inflated, double& lo, double& hi) {
  lo = c - 0.5 * len;
  hi = c + 0.5 * len;
  if (inflated && len <= extent) {
    if (lo < 0.0) {
      hi -= lo;
      lo = 0.0;
    } else if (hi > extent) {
      lo -= hi - extent;
      hi = extent;
    }
  }
  lo = std::max(lo, 0.0);
  hi = std::min(hi, extent);
}

}  // namespace

DensityGrid build_bin_density(const Circuit& circuit, const Placement& placement, std::size_t m,
                              const DensityOptions& options) {
  if (m < 2) throw std::invalid_argument("bin grid needs m >= 2");
  if (placement.size() != circuit.blocks.size())
    throw std::invalid_argument("placement size does not match block count");

  DensityGrid grid(m, circuit.region);
  const double bw = grid.bin_width();
  const double bh = grid.bin_height();
  const double inv_bin_area = 1.0 / grid.bin_area();
  const double W = circuit.region.width;
  const double H = circuit.region.height;
  const auto last = static_cast<long>(m) - 1;

  std::vector<double> ox(m), oy(m);
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) {
    const Block& b = circuit.blocks[i];
    if (!selected(b, options.source)) continue;
    const Point c = b.movable ? placement[i] : b.center;

    double w = b.width, h = b.height;
    bool inflate_x = false, inflate_y = false;
    if (options.smoothing) {
      if (w < bw) { w = bw; inflate_x = true; }
      if (h < bh) { h = bh; inflate_y = true; }
    }
    const double scale = b.area() / (w * h);

    double x_lo, x_hi, y_lo, y_hi;
    footprint(c.x, w, W, inflate_x, x_lo, x_hi);
    footprint(c.y, h, H, inflate_y, y_lo, y_hi);
    if (x_hi <= x_lo || y_hi <= y_lo) continue;

    const long l0 = std::clamp(static_cast<long>(std::floor(x_lo / bw)), 0L, last);
    const long l1 = std::clamp(static_cast<long>(std::floor(x_hi / bw)), 0L, last);
    const long j0 = std::clamp(static_cast<long>(std::floor(y_lo / bh)), 0L, last);
    const long j1 = std::clamp(static_cast<long>(std::floor(y_hi / bh)), 0L, last);
    for (long l = l0; l <= l1; ++l) {
      const double lo = std::max(x_lo, static_cast<double>(l) * bw);
      const double hi = std::min(x_hi, static_cast<double>(l + 1) * bw);
      ox[static_cast<std::size_t>(l)] = std::max(0.0, hi - lo);
    }
    for (long j = j0; j <= j1; ++j) {
      const double lo = std::max(y_lo, static_cast<double>(j) * bh);
      const double hi = std::min(y_hi, static_cast<double>(j + 1) * bh);
      oy[static_cast<std::size_t>(j)] = std::max(0.0, hi - lo);
    }
    for (long l = l0; l <= l1; ++l) {
      const double wx = ox[static_cast<std::size_t>(l)] * scale * inv_bin_area;
      if (wx == 0.0) continue;
      for (long j = j0; j <= j1; ++j)
        grid(static_cast<std::size_t>(l), static_cast<std::size_t>(j)) +=
            wx * oy[static_cast<std::size_t>(j)];
    }
  }
  grid.subtract_mean();
  return grid;
}

double overflow_ratio(const DensityGrid& movable, const Circuit& circuit) {
  const double area = circuit.movable_area();
  if (!(area > 0.0)) return 0.0;
  const std::size_t m = movable.size();
  double over = 0.0;
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j)
      over += std::max(0.0, movable.raw(l, j) - circuit.target_density);
  return over * movable.bin_area() / area;
}

double overflow_ratio(const DensityGrid& movable, const DensityGrid& fixed, const Circuit& circuit) {
  const double area = circuit.movable_area();
  if (!(area > 0.0)) return 0.0;
  if (fixed.size() != movable.size()) throw std::invalid_argument("grid sizes differ");
  const std::size_t m = movable.size();
  double over = 0.0;
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) {
      const double free = std::max(0.0, 1.0 - fixed.raw(l, j));
      over += std::max(0.0, movable.raw(l, j) - circuit.target_density * free);
    }
  return over * movable.bin_area() / area;
}

ExactDensity::ExactDensity(Region region, std::vector<Rect> blocks) : region_(region) {
  const Rect r = region.rect();
  blocks_.reserve(blocks.size());
  double area = 0.0;
  for (const auto& b : blocks) {
    const Rect clipped = intersect(b, r);
    if (clipped.empty()) continue;
    area += clipped.area();
    blocks_.push_back(clipped);
  }
  mean_ = region.area() > 0.0 ? area / region.area() : 0.0;
}

ExactDensity ExactDensity::from_circuit(const Circuit& circuit, const Placement& placement) {
  std::vector<Rect> rects;
  rects.reserve(circuit.blocks.size());
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) {
    const auto& b = circuit.blocks[i];
    rects.push_back(Rect::centered(b.movable ? placement[i] : b.center, b.width, b.height));
  }
  return ExactDensity(circuit.region, std::move(rects));
}

double exact_density_at(const ExactDensity& density, Point point) {
  if (!density.region().contains(point)) throw std::out_of_range("point outside the region");
  int covered = 0;
  for (const auto& b : density.blocks())
    if (point.x >= b.x_lo && point.x <= b.x_hi && point.y >= b.y_lo && point.y <= b.y_hi) ++covered;
  return static_cast<double>(covered) - density.mean();
}

}  // namespace poissonplace
