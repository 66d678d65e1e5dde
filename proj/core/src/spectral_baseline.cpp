#include <cmath>
#include <numbers>
#include <stdexcept>

#include "poissonplace/fast_poisson.hpp"

namespace poissonplace {

namespace {

enum class Kind { Cos, Sin };

void rows(PeriodicTransform& t, std::vector<double>& matrix, Kind kind) {
  if (kind == Kind::Cos) t.cos_rows(matrix);
  else t.sin_rows(matrix);
}

// out(a, b) = sum_{i, k} in(i, k) f(a i) g(b k), with f along the first index.
std::vector<double> separable(PeriodicTransform& t, std::vector<double> matrix, Kind first,
                              Kind second) {
  const std::size_t m = t.size();
  rows(t, matrix, second);
  transpose_square(matrix, m);
  rows(t, matrix, first);
  transpose_square(matrix, m);
  return matrix;
}

double omega(std::size_t k, std::size_t m) {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
}

}  // namespace

FieldMap spectral_baseline(const DensityGrid& grid, PeriodicTransform& transform) {
  const std::size_t m = grid.size();
  if (transform.size() != m) throw std::invalid_argument("transform size does not match grid");
  const auto v = grid.values();
  auto a = separable(transform, std::vector<double>(v.begin(), v.end()), Kind::Cos, Kind::Cos);
  const double norm = 1.0 / static_cast<double>(m * m);

  std::vector<double> bp(m * m, 0.0), bx(m * m, 0.0), by(m * m, 0.0);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < m; ++p) {
      if (u == 0 && p == 0) continue;
      const double wu = omega(u, m), wp = omega(p, m);
      const double c = a[u * m + p] * norm / (wu * wu + wp * wp);
      bp[u * m + p] = c;
      bx[u * m + p] = c * wu;
      by[u * m + p] = c * wp;
    }
  FieldMap map(m, grid.region());
  map.psi = separable(transform, std::move(bp), Kind::Cos, Kind::Cos);
  map.xi_x = separable(transform, std::move(bx), Kind::Sin, Kind::Cos);
  map.xi_y = separable(transform, std::move(by), Kind::Cos, Kind::Sin);
  return map;
}

FieldMap spectral_baseline(const DensityGrid& grid) {
  PeriodicTransform transform(grid.size());
  return spectral_baseline(grid, transform);
}

FieldMap naive_spectral_baseline(const DensityGrid& grid) {
  const std::size_t m = grid.size();
  std::vector<double> cs(m * m), sn(m * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) {
      cs[k * m + i] = std::cos(omega(k, m) * static_cast<double>(i));
      sn[k * m + i] = std::sin(omega(k, m) * static_cast<double>(i));
    }
  std::vector<double> a(m * m, 0.0);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < m; ++p) {
      double s = 0.0;
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t j = 0; j < m; ++j) s += grid(l, j) * cs[u * m + l] * cs[p * m + j];
      a[u * m + p] = s / static_cast<double>(m * m);
    }
  FieldMap map(m, grid.region());
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) {
      double psi = 0.0, xx = 0.0, xy = 0.0;
      for (std::size_t u = 0; u < m; ++u)
        for (std::size_t p = 0; p < m; ++p) {
          if (u == 0 && p == 0) continue;
          const double wu = omega(u, m), wp = omega(p, m);
          const double c = a[u * m + p] / (wu * wu + wp * wp);
          psi += c * cs[u * m + l] * cs[p * m + j];
          xx += c * wu * sn[u * m + l] * cs[p * m + j];
          xy += c * wp * cs[u * m + l] * sn[p * m + j];
        }
      const auto k = map.index(l, j);
      map.psi[k] = psi;
      map.xi_x[k] = xx;
      map.xi_y[k] = xy;
    }
  return map;
}

FieldMap to_region_units(FieldMap baseline) {
  const double wb = baseline.bin_width(), hb = baseline.bin_height();
  for (auto& v : baseline.psi) v *= wb * hb;
  // Field scales follow d/dx = (1 / w_b) d/dl applied to the rescaled potential.
  for (auto& v : baseline.xi_x) v *= hb;
  for (auto& v : baseline.xi_y) v *= wb;
  return baseline;
}

}  // namespace poissonplace
