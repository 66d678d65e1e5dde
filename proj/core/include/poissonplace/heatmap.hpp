#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace poissonplace {

/// m x m l-major map as CSV: line j holds the values for l = 0 .. m-1 at
/// bin row j, starting from j = 0, in 9 significant digits.
std::string heatmap_csv(std::span<const double> values, std::size_t m);

/// Binary PPM (P6), gray pixels, min-max normalized to 0..255. Image row 0 is
/// the top bin row (j = m-1). A map whose range is below 1e-12 of its
/// magnitude is written as all zeros.
std::vector<std::uint8_t> heatmap_ppm(std::span<const double> values, std::size_t m);

void write_heatmap_csv(const std::filesystem::path& path, std::span<const double> values, std::size_t m);
void write_heatmap_ppm(const std::filesystem::path& path, std::span<const double> values, std::size_t m);

/// Elementwise sqrt(x^2 + y^2).
std::vector<double> magnitude(std::span<const double> x, std::span<const double> y);

}  // namespace poissonplace
