#include "poissonplace/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace poissonplace {

namespace {

void check(std::span<const double> values, std::size_t m) {
  if (values.size() != m * m) throw std::invalid_argument("heatmap size does not match m");
}

template <class Bytes>
void write_file(const std::filesystem::path& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string heatmap_csv(std::span<const double> values, std::size_t m) {
  check(values, m);
  std::string out;
  char buf[64];
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l < m; ++l) {
      std::snprintf(buf, sizeof buf, "%.9g", values[l * m + j]);
      if (l) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> heatmap_ppm(std::span<const double> values, std::size_t m) {
  check(values, m);
  const std::string header = "P6\n" + std::to_string(m) + " " + std::to_string(m) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  double lo = 0.0, hi = 0.0;
  if (!values.empty()) {
    const auto [a, b] = std::minmax_element(values.begin(), values.end());
    lo = *a;
    hi = *b;
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const bool flat = !(hi - lo > 1e-12 * scale) || scale == 0.0;
  for (std::size_t row = 0; row < m; ++row) {
    const std::size_t j = m - 1 - row;
    for (std::size_t l = 0; l < m; ++l) {
      std::uint8_t g = 0;
      if (!flat) g = static_cast<std::uint8_t>(std::lround(255.0 * (values[l * m + j] - lo) / (hi - lo)));
      out.insert(out.end(), {g, g, g});
    }
  }
  return out;
}

void write_heatmap_csv(const std::filesystem::path& path, std::span<const double> values, std::size_t m) {
  write_file(path, heatmap_csv(values, m));
}

void write_heatmap_ppm(const std::filesystem::path& path, std::span<const double> values, std::size_t m) {
  write_file(path, heatmap_ppm(values, m));
}

std::vector<double> magnitude(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("component sizes differ");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::hypot(x[i], y[i]);
  return out;
}

}  // namespace poissonplace
