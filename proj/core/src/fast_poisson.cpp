#include "poissonplace/fast_poisson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace poissonplace {

using std::numbers::pi;

namespace {

std::vector<double> bin_angles(std::size_t m) {
  // cos(k (i + 1/2) pi / m) table, k-major.
  std::vector<double> t(m * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      t[k * m + i] = std::cos(static_cast<double>(k) * (static_cast<double>(i) + 0.5) * pi /
                              static_cast<double>(m));
  return t;
}

std::vector<double> bin_sines(std::size_t m) {
  std::vector<double> t(m * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      t[k * m + i] = std::sin(static_cast<double>(k) * (static_cast<double>(i) + 0.5) * pi /
                              static_cast<double>(m));
  return t;
}

}  // namespace

ReducedCoefficients reduced_transform(const DensityGrid& grid, CosineTransform2D& transform) {
  const std::size_t m = grid.size();
  if (transform.size() != m) throw std::invalid_argument("transform size does not match grid");
  ReducedCoefficients r(m);
  transform.forward(grid.values(), r.values);
  r(0, 0) = 0.0;
  return r;
}

ReducedCoefficients reduced_transform(const DensityGrid& grid) {
  CosineTransform2D transform(grid.size());
  return reduced_transform(grid, transform);
}

ReducedCoefficients naive_reduced_transform(const DensityGrid& grid) {
  const std::size_t m = grid.size();
  const auto cosines = bin_angles(m);
  ReducedCoefficients r(m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < m; ++p) {
      if (u == 0 && p == 0) continue;
      double s = 0.0;
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t j = 0; j < m; ++j) s += grid(l, j) * cosines[u * m + l] * cosines[p * m + j];
      r(u, p) = s;
    }
  return r;
}

SpectralCoefficients scale_coefficients(const ReducedCoefficients& reduced, Region region) {
  const std::size_t m = reduced.m;
  if (m < 2) throw std::invalid_argument("reduced coefficients need m >= 2");
  const double W = region.width;
  const double H = region.height;
  const double dm = static_cast<double>(m);
  const double pi3 = pi * pi * pi;
  SpectralCoefficients c(m - 1, region);
  std::vector<double> half_sin(m);
  for (std::size_t k = 0; k < m; ++k) half_sin[k] = std::sin(static_cast<double>(k) * pi / (2.0 * dm));
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < m; ++p) {
      const double du = static_cast<double>(u), dp = static_cast<double>(p);
      double f = 0.0;
      if (u == 0 && p == 0) f = 0.0;
      else if (u == 0) f = 4.0 * H * H / (dp * dp * dp * pi3 * dm) * half_sin[p];
      else if (p == 0) f = 4.0 * W * W / (du * du * du * pi3 * dm) * half_sin[u];
      else
        f = 16.0 * W * W * H * H / (du * dp * (du * du * H * H + dp * dp * W * W) * pi3 * pi) *
            half_sin[u] * half_sin[p];
      c(u, p) = f * reduced(u, p);
    }
  return c;
}

FieldMap fast_field_map(const SpectralCoefficients& c, CosineTransform2D& transform) {
  const std::size_t m = transform.size();
  if (c.order() + 1 != m) throw std::invalid_argument("coefficient order must equal m - 1");
  const double W = c.region().width;
  const double H = c.region().height;
  FieldMap map(m, c.region());
  transform.cos_cos(c.values(), map.psi);

  std::vector<double> weighted(m * m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < m; ++p)
      weighted[u * m + p] = static_cast<double>(u) * pi / W * c(u, p);
  transform.sin_cos(weighted, map.xi_x);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < m; ++p)
      weighted[u * m + p] = static_cast<double>(p) * pi / H * c(u, p);
  transform.cos_sin(weighted, map.xi_y);
  return map;
}

FieldMap fast_field_map(const SpectralCoefficients& c, std::size_t m) {
  CosineTransform2D transform(m);
  return fast_field_map(c, transform);
}

FieldMap naive_field_map(const SpectralCoefficients& c, std::size_t m) {
  if (c.order() + 1 != m) throw std::invalid_argument("coefficient order must equal m - 1");
  const double W = c.region().width;
  const double H = c.region().height;
  const auto cosines = bin_angles(m);
  const auto sines = bin_sines(m);
  FieldMap map(m, c.region());
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) {
      double psi = 0.0, xx = 0.0, xy = 0.0;
      for (std::size_t u = 0; u < m; ++u)
        for (std::size_t p = 0; p < m; ++p) {
          const double a = c(u, p);
          psi += a * cosines[u * m + l] * cosines[p * m + j];
          xx += static_cast<double>(u) * pi / W * a * sines[u * m + l] * cosines[p * m + j];
          xy += static_cast<double>(p) * pi / H * a * cosines[u * m + l] * sines[p * m + j];
        }
      const auto k = map.index(l, j);
      map.psi[k] = psi;
      map.xi_x[k] = xx;
      map.xi_y[k] = xy;
    }
  return map;
}

FieldMap solve_fast(const DensityGrid& grid, CosineTransform2D& transform) {
  return fast_field_map(scale_coefficients(reduced_transform(grid, transform), grid.region()),
                        transform);
}

}  // namespace poissonplace
