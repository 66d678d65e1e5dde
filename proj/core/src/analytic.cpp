#include "poissonplace/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace poissonplace {

using std::numbers::pi;

SpectralCoefficients::SpectralCoefficients(std::size_t order, Region region)
    : order_(order), region_(region), a_((order + 1) * (order + 1), 0.0) {}

SpectralCoefficients exact_coefficients(const ExactDensity& density, std::size_t order,
                                        OperationCount* count) {
  const Region region = density.region();
  const double W = region.width;
  const double H = region.height;
  const std::size_t K = order;
  SpectralCoefficients c(K, region);

  // sum_i dsx_u(i) * dsy_p(i), where dsx_u(i) = sin(u pi x_hi / W) - sin(u pi x_lo / W).
  std::vector<double> sx(K + 1), sy(K + 1);
  std::vector<double> cross((K + 1) * (K + 1), 0.0);
  std::uint64_t terms = 0;
  for (const Rect& b : density.blocks()) {
    for (std::size_t u = 1; u <= K; ++u) {
      const double k = static_cast<double>(u) * pi / W;
      sx[u] = std::sin(k * b.x_hi) - std::sin(k * b.x_lo);
    }
    for (std::size_t p = 1; p <= K; ++p) {
      const double k = static_cast<double>(p) * pi / H;
      sy[p] = std::sin(k * b.y_hi) - std::sin(k * b.y_lo);
    }
    // Axis modes weigh the perpendicular extent: a(u,0) ~ h_i dsx_u, a(0,p) ~ w_i dsy_p.
    sx[0] = b.width();
    sy[0] = b.height();
    for (std::size_t u = 0; u <= K; ++u) {
      double* row = &cross[u * (K + 1)];
      const double su = sx[u];
      for (std::size_t p = (u == 0 ? 1 : 0); p <= K; ++p) row[p] += su * sy[p];
    }
    terms += (K + 1) * (K + 1) - 1;
  }
  if (count) count->terms += terms;

  const double pi3 = pi * pi * pi;
  const double pi4 = pi3 * pi;
  for (std::size_t u = 1; u <= K; ++u) {
    const double du = static_cast<double>(u);
    c(u, 0) = 2.0 * W * W / (du * du * du * pi3 * H) * cross[u * (K + 1)];
  }
  for (std::size_t p = 1; p <= K; ++p) {
    const double dp = static_cast<double>(p);
    c(0, p) = 2.0 * H * H / (dp * dp * dp * pi3 * W) * cross[p];
  }
  for (std::size_t u = 1; u <= K; ++u)
    for (std::size_t p = 1; p <= K; ++p) {
      const double du = static_cast<double>(u), dp = static_cast<double>(p);
      const double denom = (du * du * H * H + dp * dp * W * W) * du * dp * pi4;
      c(u, p) = 4.0 * W * W * H * H / denom * cross[u * (K + 1) + p];
    }
  c(0, 0) = 0.0;
  return c;
}

namespace {

// I(u, p) = integral over the region of rho(x, y) cos(u pi x / W) cos(p pi y / H),
// midpoint rule on an N x N grid whose cell values are the exact cell averages
// of the piecewise-constant density.
std::vector<double> quadrature_integrals(const ExactDensity& density, std::size_t K,
                                         std::size_t N) {
  if (N < 4 * K || N == 0) throw std::invalid_argument("quadrature resolution must be >= 4K");
  const double W = density.region().width;
  const double H = density.region().height;
  const double hx = W / static_cast<double>(N);
  const double hy = H / static_cast<double>(N);

  std::vector<double> cell(N * N, -density.mean());
  std::vector<double> fx(N), fy(N);
  for (const Rect& b : density.blocks()) {
    const auto l0 = static_cast<std::size_t>(std::clamp(std::floor(b.x_lo / hx), 0.0, double(N - 1)));
    const auto l1 = static_cast<std::size_t>(std::clamp(std::floor(b.x_hi / hx), 0.0, double(N - 1)));
    const auto j0 = static_cast<std::size_t>(std::clamp(std::floor(b.y_lo / hy), 0.0, double(N - 1)));
    const auto j1 = static_cast<std::size_t>(std::clamp(std::floor(b.y_hi / hy), 0.0, double(N - 1)));
    for (std::size_t l = l0; l <= l1; ++l) {
      const double lo = std::max(b.x_lo, static_cast<double>(l) * hx);
      const double hi = std::min(b.x_hi, static_cast<double>(l + 1) * hx);
      fx[l] = std::max(0.0, hi - lo) / hx;
    }
    for (std::size_t j = j0; j <= j1; ++j) {
      const double lo = std::max(b.y_lo, static_cast<double>(j) * hy);
      const double hi = std::min(b.y_hi, static_cast<double>(j + 1) * hy);
      fy[j] = std::max(0.0, hi - lo) / hy;
    }
    for (std::size_t l = l0; l <= l1; ++l)
      for (std::size_t j = j0; j <= j1; ++j) cell[l * N + j] += fx[l] * fy[j];
  }

  // Contract y first: T(l, p) = sum_j cell(l, j) cos(p pi y_j / H).
  std::vector<double> cos_y((K + 1) * N), cos_x((K + 1) * N);
  for (std::size_t p = 0; p <= K; ++p)
    for (std::size_t j = 0; j < N; ++j)
      cos_y[p * N + j] = std::cos(static_cast<double>(p) * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(N));
  cos_x = cos_y;  // same nodes in normalized coordinates
  std::vector<double> t(N * (K + 1), 0.0);
  for (std::size_t l = 0; l < N; ++l)
    for (std::size_t p = 0; p <= K; ++p) {
      double s = 0.0;
      const double* row = &cell[l * N];
      const double* cy = &cos_y[p * N];
      for (std::size_t j = 0; j < N; ++j) s += row[j] * cy[j];
      t[l * (K + 1) + p] = s;
    }
  std::vector<double> integral((K + 1) * (K + 1), 0.0);
  for (std::size_t u = 0; u <= K; ++u)
    for (std::size_t p = 0; p <= K; ++p) {
      double s = 0.0;
      for (std::size_t l = 0; l < N; ++l) s += t[l * (K + 1) + p] * cos_x[u * N + l];
      integral[u * (K + 1) + p] = s * hx * hy;
    }
  return integral;
}

}  // namespace

SpectralCoefficients coefficients_by_quadrature(const ExactDensity& density, std::size_t order,
                                                std::size_t resolution) {
  const auto I = quadrature_integrals(density, order, resolution);
  const double W = density.region().width;
  const double H = density.region().height;
  const std::size_t K = order;
  SpectralCoefficients c(K, density.region());
  for (std::size_t u = 0; u <= K; ++u)
    for (std::size_t p = 0; p <= K; ++p) {
      const double du = static_cast<double>(u), dp = static_cast<double>(p);
      const double v = I[u * (K + 1) + p];
      if (u == 0 && p == 0) continue;
      if (u == 0) c(u, p) = 2.0 * H / (dp * dp * pi * pi * W) * v;
      else if (p == 0) c(u, p) = 2.0 * W / (du * du * pi * pi * H) * v;
      else c(u, p) = 4.0 * W * H / ((du * du * H * H + dp * dp * W * W) * pi * pi) * v;
    }
  c(0, 0) = 0.0;
  return c;
}

SpectralCoefficients density_cosine_coefficients(const ExactDensity& density, std::size_t order,
                                                 std::size_t resolution) {
  const auto I = quadrature_integrals(density, order, resolution);
  const double WH = density.region().area();
  const std::size_t K = order;
  SpectralCoefficients c(K, density.region());
  for (std::size_t u = 0; u <= K; ++u)
    for (std::size_t p = 0; p <= K; ++p) {
      const double norm = (u == 0 && p == 0) ? 1.0 : (u == 0 || p == 0) ? 2.0 : 4.0;
      c(u, p) = norm / WH * I[u * (K + 1) + p];
    }
  return c;
}

namespace {

void check_inside(const SpectralCoefficients& c, Point point) {
  if (!c.region().contains(point)) throw std::out_of_range("point outside the region");
}

FieldSample evaluate(const SpectralCoefficients& c, Point point, std::vector<double>& scratch) {
  const std::size_t n = c.side();
  const double W = c.region().width;
  const double H = c.region().height;
  scratch.resize(4 * n);
  double* cx = scratch.data();
  double* sx = cx + n;
  double* cy = sx + n;
  double* sy = cy + n;
  const double tx = pi * (point.x / W);
  const double ty = pi * (point.y / H);
  for (std::size_t u = 0; u < n; ++u) {
    const double du = static_cast<double>(u);
    cx[u] = std::cos(du * tx);
    sx[u] = std::sin(du * tx);
    cy[u] = std::cos(du * ty);
    sy[u] = std::sin(du * ty);
  }
  FieldSample s;
  const auto a = c.values();
  for (std::size_t u = 0; u < n; ++u) {
    const double* row = &a[u * n];
    double along_cos = 0.0, along_sin = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      along_cos += row[p] * cy[p];
      along_sin += row[p] * static_cast<double>(p) * sy[p];
    }
    s.psi += cx[u] * along_cos;
    s.xi_x += static_cast<double>(u) * sx[u] * along_cos;
    s.xi_y += cx[u] * along_sin;
  }
  s.xi_x *= pi / W;
  s.xi_y *= pi / H;
  return s;
}

}  // namespace

double eval_potential(const SpectralCoefficients& c, Point point, OperationCount* count) {
  check_inside(c, point);
  const std::size_t n = c.side();
  const double tx = pi * (point.x / c.region().width);
  const double ty = pi * (point.y / c.region().height);
  std::vector<double> cy(n);
  for (std::size_t p = 0; p < n; ++p) cy[p] = std::cos(static_cast<double>(p) * ty);
  double psi = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    double along = 0.0;
    for (std::size_t p = 0; p < n; ++p) along += c(u, p) * cy[p];
    psi += std::cos(static_cast<double>(u) * tx) * along;
  }
  if (count) count->terms += n * n;
  return psi;
}

FieldSample eval_field(const SpectralCoefficients& c, Point point, OperationCount* count) {
  check_inside(c, point);
  std::vector<double> scratch;
  if (count) count->terms += c.side() * c.side();
  return evaluate(c, point, scratch);
}

std::vector<FieldSample> eval_points(const SpectralCoefficients& c, std::span<const Point> points) {
  std::vector<FieldSample> out;
  out.reserve(points.size());
  std::vector<double> scratch;
  for (const Point& p : points) {
    check_inside(c, p);
    out.push_back(evaluate(c, p, scratch));
  }
  return out;
}

namespace {

constexpr std::size_t kExplicitTerms = std::size_t{1} << 16;
constexpr std::size_t kDoubleSumWindow = 2048;

// sum_{p > K} 1/p^3: explicit terms plus the integral-test remainder 1/(2N^2).
double inverse_cube_tail(std::size_t K) {
  const std::size_t last = K + kExplicitTerms;
  double s = 0.0;
  for (std::size_t p = last; p > K; --p) {
    const double d = static_cast<double>(p);
    s += 1.0 / (d * d * d);
  }
  const double n = static_cast<double>(last);
  return s + 1.0 / (2.0 * n * n);
}

// F(u, p) = 1 / (u^3 p H^2 + u p^3 W^2); bound of sum over max(u, p) > K.
double mixed_tail(std::size_t K, double W, double H) {
  const double H2 = H * H, W2 = W * W;
  auto F = [&](double u, double p) { return 1.0 / (u * p * (u * u * H2 + p * p * W2)); };
  // Integral over p in [P, inf) of F(u, p).
  auto p_remainder = [&](double u, double P) {
    return std::log1p(u * u * H2 / (P * P * W2)) / (2.0 * u * u * u * H2);
  };
  const std::size_t P = K + kDoubleSumWindow;
  const std::size_t U = K + kDoubleSumWindow;

  double s = 0.0;
  // u <= K, p > K
  for (std::size_t u = 1; u <= K; ++u) {
    const double du = static_cast<double>(u);
    double row = 0.0;
    for (std::size_t p = P; p > K; --p) row += F(du, static_cast<double>(p));
    s += row + p_remainder(du, static_cast<double>(P));
  }
  // K < u <= U, all p
  for (std::size_t u = U; u > K; --u) {
    const double du = static_cast<double>(u);
    double row = 0.0;
    for (std::size_t p = P; p >= 1; --p) row += F(du, static_cast<double>(p));
    s += row + p_remainder(du, static_cast<double>(P));
  }
  // u > U: sum_p F(u, p) <= 1/(u (u^2 H^2 + W^2)) + ln(1 + u^2 H^2 / W^2) / (2 u^3 H^2),
  // a decreasing bound whose integral over [U, inf) has a closed form.
  const double dU = static_cast<double>(U);
  const double T = dU * dU;
  const double c = H2 / W2;
  const double first = 1.0 / (2.0 * T * H2);
  const double second = (1.0 / (2.0 * H2)) * 0.5 * (std::log1p(c * T) / T + c * std::log1p(1.0 / (c * T)));
  return s + first + second;
}

double series_bound(const ExactDensity& density, std::size_t K) {
  const double W = density.region().width;
  const double H = density.region().height;
  double sum_w = 0.0, sum_h = 0.0;
  for (const Rect& b : density.blocks()) {
    sum_w += b.width();
    sum_h += b.height();
  }
  const auto n = static_cast<double>(density.blocks().size());
  if (n == 0.0) return 0.0;
  const double pi3 = pi * pi * pi;
  const double cube_tail = inverse_cube_tail(K);
  return 4.0 * H * H * sum_w / (W * pi3) * cube_tail + 4.0 * W * W * sum_h / (H * pi3) * cube_tail +
         16.0 * W * W * H * H * n / (pi3 * pi) * mixed_tail(K, W, H);
}

}  // namespace

TailBound tail_bound(const ExactDensity& density, std::size_t order) {
  if (order < 1) throw std::invalid_argument("tail bound needs order >= 1");
  return {order, series_bound(density, order)};
}

double absolute_series_bound(const ExactDensity& density) { return series_bound(density, 0); }

double absolute_coefficient_sum(const SpectralCoefficients& c) {
  double s = 0.0;
  for (double v : c.values()) s += std::abs(v);
  return s;
}

}  // namespace poissonplace
