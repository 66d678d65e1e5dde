#include "poissonplace/field_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace poissonplace {

namespace {

// Lower neighbor index and weight of the upper neighbor along one axis.
void locate(double coord, double bin, std::size_t m, std::size_t& lo, double& t) {
  const double s = coord / bin - 0.5;
  const double top = static_cast<double>(m - 1);
  if (s <= 0.0) {
    lo = 0;
    t = 0.0;
  } else if (s >= top) {
    lo = m >= 2 ? m - 2 : 0;
    t = m >= 2 ? 1.0 : 0.0;
  } else {
    const double f = std::floor(s);
    lo = std::min(static_cast<std::size_t>(f), m - 2);
    t = s - static_cast<double>(lo);
  }
}

}  // namespace

FieldSample interpolate_field(const FieldMap& map, Point point) {
  if (!map.region.contains(point)) throw std::out_of_range("point outside the region");
  if (map.m == 1) return map.at(0, 0);
  std::size_t l, j;
  double tx, ty;
  locate(point.x, map.bin_width(), map.m, l, tx);
  locate(point.y, map.bin_height(), map.m, j, ty);
  const double w00 = (1 - tx) * (1 - ty), w10 = tx * (1 - ty), w01 = (1 - tx) * ty, w11 = tx * ty;
  const auto k00 = map.index(l, j), k10 = map.index(l + 1, j), k01 = map.index(l, j + 1),
             k11 = map.index(l + 1, j + 1);
  auto blend = [&](const std::vector<double>& v) {
    return w00 * v[k00] + w10 * v[k10] + w01 * v[k01] + w11 * v[k11];
  };
  return {blend(map.psi), blend(map.xi_x), blend(map.xi_y)};
}

double max_abs(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace poissonplace
