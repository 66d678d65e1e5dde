#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "poissonplace/circuit.hpp"
#include "poissonplace/density.hpp"

namespace poissonplace {

/// Potential and field at one point.
struct FieldSample {
  double psi = 0.0;
  double xi_x = 0.0;
  double xi_y = 0.0;
};

/// Cosine-series coefficients a(u, p), 0 <= u, p <= order, of
///   psi(x, y) = sum a(u, p) cos(u pi x / W) cos(p pi y / H).
class SpectralCoefficients {
 public:
  SpectralCoefficients() = default;
  SpectralCoefficients(std::size_t order, Region region);

  std::size_t order() const { return order_; }
  std::size_t side() const { return order_ + 1; }
  const Region& region() const { return region_; }

  double operator()(std::size_t u, std::size_t p) const { return a_[u * side() + p]; }
  double& operator()(std::size_t u, std::size_t p) { return a_[u * side() + p]; }
  std::span<const double> values() const { return a_; }
  std::span<double> values() { return a_; }

 private:
  std::size_t order_ = 0;
  Region region_;
  std::vector<double> a_;
};

/// Counts inner-loop terms so cost contracts can be checked without timing.
struct OperationCount {
  std::uint64_t terms = 0;
};

/// Closed-form coefficients for a rectangle-block density, a(0,0) = 0.
/// Costs (K+1)^2 n block terms.
SpectralCoefficients exact_coefficients(const ExactDensity& density, std::size_t order,
                                        OperationCount* count = nullptr);

/// Independent oracle: the defining integrals of a(u, p) evaluated with a
/// resolution x resolution midpoint rule on cell-averaged density.
SpectralCoefficients coefficients_by_quadrature(const ExactDensity& density, std::size_t order,
                                                std::size_t resolution);

/// Cosine coefficients of the density itself, c(u,p) = (4 / WH) * integral of
/// rho cos cos for u, p >= 1 (and 2 / WH on the axes), from the same quadrature.
SpectralCoefficients density_cosine_coefficients(const ExactDensity& density, std::size_t order,
                                                 std::size_t resolution);

/// Truncated series at a point. Throws std::out_of_range outside the region.
double eval_potential(const SpectralCoefficients& c, Point point, OperationCount* count = nullptr);
FieldSample eval_field(const SpectralCoefficients& c, Point point, OperationCount* count = nullptr);

/// Potential and field at many points in one pass; points must lie in the region.
std::vector<FieldSample> eval_points(const SpectralCoefficients& c, std::span<const Point> points);

/// Upper bound on the absolute sum of the coefficients omitted by truncating
/// at `order`, built from the per-mode coefficient bounds.
struct TailBound {
  std::size_t order = 0;
  double bound = 0.0;
};

/// Requires order >= 1.
TailBound tail_bound(const ExactDensity& density, std::size_t order);

/// Bound on sum over all (u, p) of |a(u, p)|; the order-0 tail.
double absolute_series_bound(const ExactDensity& density);

/// sum over u, p <= order of |a(u, p)|.
double absolute_coefficient_sum(const SpectralCoefficients& c);

}  // namespace poissonplace
