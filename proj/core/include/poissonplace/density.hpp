#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "poissonplace/circuit.hpp"

namespace poissonplace {

/// m x m bin densities over the region. Index (l, j) is the bin whose center
/// is ((l + 1/2) W/m, (j + 1/2) H/m); storage is l-major.
class DensityGrid {
 public:
  DensityGrid() = default;
  DensityGrid(std::size_t m, Region region);

  std::size_t size() const { return m_; }
  const Region& region() const { return region_; }
  double bin_width() const { return region_.width / static_cast<double>(m_); }
  double bin_height() const { return region_.height / static_cast<double>(m_); }
  double bin_area() const { return bin_width() * bin_height(); }
  Point bin_center(std::size_t l, std::size_t j) const;

  /// Mean-subtracted value P_{l,j}.
  double operator()(std::size_t l, std::size_t j) const { return values_[l * m_ + j]; }
  double& operator()(std::size_t l, std::size_t j) { return values_[l * m_ + j]; }
  double raw(std::size_t l, std::size_t j) const { return values_[l * m_ + j] + raw_mean_; }

  double raw_mean() const { return raw_mean_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Subtracts the current mean from every bin and adds it to raw_mean.
  void subtract_mean();

 private:
  std::size_t m_ = 0;
  Region region_;
  std::vector<double> values_;
  double raw_mean_ = 0.0;
};

enum class DensitySource {
  AllBlocks,     // movable, fixed and fillers: the charge distribution
  MovableCells,  // movable non-filler blocks: overflow measurement
  FixedBlocks,   // fixed blocks only: occupied capacity
};

struct DensityOptions {
  DensitySource source = DensitySource::AllBlocks;
  /// Inflate blocks narrower or shorter than a bin to the bin size and scale
  /// their density by original area / inflated area.
  bool smoothing = true;
};

/// Scatters block area into bins by rectangle overlap and subtracts the
/// global mean. Throws std::invalid_argument for m < 2.
DensityGrid build_bin_density(const Circuit& circuit, const Placement& placement, std::size_t m,
                              const DensityOptions& options = {});

/// Fraction of movable area sitting above the target density:
///   sum max(0, raw - target) * bin_area / movable_area.
/// With `fixed`, each bin's capacity shrinks by the fixed occupancy:
///   sum max(0, raw - target * (1 - fixed_raw)) * bin_area / movable_area.
double overflow_ratio(const DensityGrid& movable, const Circuit& circuit);
double overflow_ratio(const DensityGrid& movable, const DensityGrid& fixed, const Circuit& circuit);

/// Continuous block density: sum of block indicators minus the mean
/// sum(w_i h_i) / (W H). Rectangles are clipped to the region.
class ExactDensity {
 public:
  ExactDensity() = default;
  ExactDensity(Region region, std::vector<Rect> blocks);

  /// Movable, fixed and filler blocks of a circuit at the given placement.
  static ExactDensity from_circuit(const Circuit& circuit, const Placement& placement);

  const Region& region() const { return region_; }
  const std::vector<Rect>& blocks() const { return blocks_; }
  double mean() const { return mean_; }
  double total_area() const { return mean_ * region_.area(); }

 private:
  Region region_;
  std::vector<Rect> blocks_;
  double mean_ = 0.0;
};

/// Number of blocks covering `point` minus the mean. Edges count as covered.
/// Throws std::out_of_range outside the region.
double exact_density_at(const ExactDensity& density, Point point);

}  // namespace poissonplace
