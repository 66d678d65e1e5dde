#pragma once

#include <cstddef>
#include <vector>

#include "poissonplace/analytic.hpp"
#include "poissonplace/circuit.hpp"

namespace poissonplace {

/// Potential and field sampled at the m x m bin centers, l-major.
struct FieldMap {
  std::size_t m = 0;
  Region region;
  std::vector<double> psi;
  std::vector<double> xi_x;
  std::vector<double> xi_y;

  FieldMap() = default;
  FieldMap(std::size_t side, Region r)
      : m(side), region(r), psi(side * side, 0.0), xi_x(side * side, 0.0), xi_y(side * side, 0.0) {}

  double bin_width() const { return region.width / static_cast<double>(m); }
  double bin_height() const { return region.height / static_cast<double>(m); }
  std::size_t index(std::size_t l, std::size_t j) const { return l * m + j; }
  FieldSample at(std::size_t l, std::size_t j) const {
    const auto k = index(l, j);
    return {psi[k], xi_x[k], xi_y[k]};
  }
};

/// Bilinear interpolation between the four nearest bin centers. Inside the
/// outer half-bin ring the coordinate is clamped to the last center.
/// Throws std::out_of_range outside the region.
FieldSample interpolate_field(const FieldMap& map, Point point);

double max_abs(const std::vector<double>& values);
double mean(const std::vector<double>& values);

}  // namespace poissonplace
