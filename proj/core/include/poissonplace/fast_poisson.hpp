#pragma once

#include <cstddef>
#include <vector>

#include "poissonplace/analytic.hpp"
#include "poissonplace/density.hpp"
#include "poissonplace/field_map.hpp"
#include "poissonplace/transform.hpp"

namespace poissonplace {

/// Unscaled cosine sums of the bin densities,
///   a'(u, p) = sum_{l, j} P(l, j) cos(u (l + 1/2) pi / m) cos(p (j + 1/2) pi / m),
/// with a'(0, 0) pinned to 0.
struct ReducedCoefficients {
  std::size_t m = 0;
  std::vector<double> values;  // u-major

  ReducedCoefficients() = default;
  explicit ReducedCoefficients(std::size_t side) : m(side), values(side * side, 0.0) {}
  double operator()(std::size_t u, std::size_t p) const { return values[u * m + p]; }
  double& operator()(std::size_t u, std::size_t p) { return values[u * m + p]; }
};

/// O(m^2 log m) via a 2D DCT-II. m must be a power of two.
ReducedCoefficients reduced_transform(const DensityGrid& grid);
ReducedCoefficients reduced_transform(const DensityGrid& grid, CosineTransform2D& transform);

/// Direct O(m^4) evaluation of the same sums; the reference for reduced_transform.
ReducedCoefficients naive_reduced_transform(const DensityGrid& grid);

/// Applies the per-mode factors that turn a' into the series coefficients of
/// the binned density (truncation order m - 1):
///   a(0,p) = 4 H^2 / (p^3 pi^3 m) sin(p pi / 2m) a'(0,p)
///   a(u,0) = 4 W^2 / (u^3 pi^3 m) sin(u pi / 2m) a'(u,0)
///   a(u,p) = 16 W^2 H^2 / (u p (u^2 H^2 + p^2 W^2) pi^4) sin(u pi / 2m) sin(p pi / 2m) a'(u,p)
SpectralCoefficients scale_coefficients(const ReducedCoefficients& reduced, Region region);

/// Potential and field at all bin centers from coefficients of order m - 1,
/// by inverse cosine/sine transforms.
FieldMap fast_field_map(const SpectralCoefficients& c, std::size_t m);
FieldMap fast_field_map(const SpectralCoefficients& c, CosineTransform2D& transform);

/// Direct double-sum evaluation at bin centers; the reference for fast_field_map.
FieldMap naive_field_map(const SpectralCoefficients& c, std::size_t m);

/// Convenience: density grid -> field map through the fast pipeline.
FieldMap solve_fast(const DensityGrid& grid, CosineTransform2D& transform);

/// Spectral-method baseline on the bin grid with periodic frequencies
/// omega_k = 2 pi k / m and integer bin indices:
///   a(u,p)  = (1/m^2) sum rho(l,j) cos(omega_u l) cos(omega_p j)
///   psi     = sum a / (omega_u^2 + omega_p^2) cos cos
///   xi_x    = sum a omega_u / (omega_u^2 + omega_p^2) sin(omega_u l) cos(omega_p j)
/// The (0,0) term is skipped. Values are in bin-index units.
FieldMap spectral_baseline(const DensityGrid& grid);
FieldMap spectral_baseline(const DensityGrid& grid, PeriodicTransform& transform);

/// Direct O(m^4) evaluation of the baseline sums.
FieldMap naive_spectral_baseline(const DensityGrid& grid);

/// Rescales a bin-index-unit baseline map to region units
/// (psi * w_b h_b, xi_x * h_b, xi_y * w_b).
FieldMap to_region_units(FieldMap baseline);

}  // namespace poissonplace
