#include "poissonplace/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace poissonplace {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Buffer {
  double* data = nullptr;
  explicit Buffer(std::size_t n) : data(static_cast<double*>(fftw_malloc(sizeof(double) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
};

struct Plan {
  fftw_plan plan = nullptr;
  Plan() = default;
  explicit Plan(fftw_plan p) : plan(p) {
    if (!plan) throw std::runtime_error("FFTW could not create a plan");
  }
  ~Plan() {
    if (plan) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

// `rows` contiguous rows of length m, real <-> halfspectrum.
fftw_plan plan_rows_r2c(std::size_t m, std::size_t rows, double* in, fftw_complex* out) {
  std::lock_guard lock(planner_mutex());
  const int n = static_cast<int>(m), h = n / 2 + 1;
  return fftw_plan_many_dft_r2c(1, &n, static_cast<int>(rows), in, nullptr, 1, n, out, nullptr, 1, h,
                                FFTW_ESTIMATE);
}

fftw_plan plan_rows_c2r(std::size_t m, std::size_t rows, fftw_complex* in, double* out) {
  std::lock_guard lock(planner_mutex());
  const int n = static_cast<int>(m), h = n / 2 + 1;
  return fftw_plan_many_dft_c2r(1, &n, static_cast<int>(rows), in, nullptr, 1, h, out, nullptr, 1, n,
                                FFTW_ESTIMATE);
}

void check_span(std::span<const double> s, std::size_t m) {
  if (s.size() != m * m) throw std::invalid_argument("matrix size does not match transform size");
}

}  // namespace

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

// 1D kernels along rows or columns, eight lines at a time, each through one
// real FFT with the reordering v = (x_0, x_2, ..., x_3, x_1) and twiddles
// e^{i pi k / 2m}. Columns are gathered a cache line wide, so no transposes.
// Estimate-mode plans only: measured plans may differ between runs and break
// bitwise reproducibility.
struct CosineTransform2D::Impl {
  std::size_t m;
  // Padded row stride: a power-of-two stride maps a whole column to one cache set.
  std::size_t ld;
  std::size_t half;  // m / 2 + 1
  std::size_t lines;
  Buffer buf, work;
  fftw_complex* spec;
  Plan r2c, c2r;
  std::vector<double> cos_t, sin_t, c0;

  explicit Impl(std::size_t side)
      : m(side),
        ld(side + 8),
        half(side / 2 + 1),
        lines(std::min<std::size_t>(side, 8)),
        buf(side * (side + 8)),
        work(lines * side),
        spec(fftw_alloc_complex(lines * (side / 2 + 1))),
        r2c(plan_rows_r2c(side, lines, work.data, spec)),
        c2r(plan_rows_c2r(side, lines, spec, work.data)),
        cos_t(side),
        sin_t(side),
        c0(lines) {
    for (std::size_t k = 0; k < m; ++k) {
      const double t = std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(m));
      cos_t[k] = std::cos(t);
      sin_t[k] = std::sin(t);
    }
  }
  ~Impl() { fftw_free(spec); }

  // Calls f(line, n) for line < lines, n < count, in memory order.
  template <bool Cols, class F>
  void sweep(std::size_t count, F&& f) const {
    if constexpr (Cols) {
      for (std::size_t n = 0; n < count; ++n)
        for (std::size_t line = 0; line < lines; ++line) f(line, n);
    } else {
      for (std::size_t line = 0; line < lines; ++line)
        for (std::size_t n = 0; n < count; ++n) f(line, n);
    }
  }

  // x(n) <- sum_i x(i) cos(pi n (i + 1/2) / m) on each line starting at `a`.
  template <bool Cols>
  void dct2(double* a) {
    const auto at = [&](std::size_t line, std::size_t n) -> double& {
      return Cols ? a[n * ld + line] : a[line * ld + n];
    };
    sweep<Cols>(m / 2, [&](std::size_t line, std::size_t n) {
      double* v = work.data + line * m;
      v[n] = at(line, 2 * n);
      v[m - 1 - n] = at(line, 2 * n + 1);
    });
    fftw_execute(r2c.plan);
    sweep<Cols>(m, [&](std::size_t line, std::size_t k) {
      const fftw_complex* V = spec + line * half;
      at(line, k) = k < half ? cos_t[k] * V[k][0] + sin_t[k] * V[k][1]
                             : cos_t[k] * V[m - k][0] - sin_t[k] * V[m - k][1];
    });
  }

  // x(n) <- sum_k x(k) cos(pi k (n + 1/2) / m), or with `sine` the sum
  // sum_{k=1}^{m-1} x(k) sin(pi k (n + 1/2) / m). The sine sum is the cosine
  // sum of the reversed line times (-1)^n.
  template <bool Cols>
  void dct3(double* a, bool sine) {
    const auto at = [&](std::size_t line, std::size_t n) -> double& {
      return Cols ? a[n * ld + line] : a[line * ld + n];
    };
    const auto c = [&](std::size_t line, std::size_t k) {
      if (k >= m) return 0.0;
      if (!sine) return at(line, k);
      return k == 0 ? 0.0 : at(line, m - k);
    };
    sweep<Cols>(half, [&](std::size_t line, std::size_t k) {
      fftw_complex* V = spec + line * half;
      const double re = c(line, k), im = -c(line, m - k);
      V[k][0] = re * cos_t[k] - im * sin_t[k];
      V[k][1] = re * sin_t[k] + im * cos_t[k];
    });
    for (std::size_t line = 0; line < lines; ++line) c0[line] = c(line, 0);
    fftw_execute(c2r.plan);
    const double odd = sine ? -0.5 : 0.5;
    sweep<Cols>(m / 2, [&](std::size_t line, std::size_t n) {
      const double* v = work.data + line * m;
      at(line, 2 * n) = 0.5 * (v[n] + c0[line]);
      at(line, 2 * n + 1) = odd * (v[m - 1 - n] + c0[line]);
    });
  }

  template <bool Cols>
  void apply(Kernel kind) {
    for (std::size_t first = 0; first < m; first += lines) {
      double* a = buf.data + (Cols ? first : first * ld);
      if (kind == Kernel::Forward) dct2<Cols>(a);
      else dct3<Cols>(a, kind == Kernel::Sin);
    }
  }

  // Second-index kernel along rows, first-index kernel along columns.
  void run(Kernel first, Kernel second) {
    apply<false>(second);
    apply<true>(first);
  }

  void load(std::span<const double> in) {
    for (std::size_t r = 0; r < m; ++r) std::copy_n(in.data() + r * m, m, buf.data + r * ld);
  }

  void store(std::span<double> out) const {
    for (std::size_t r = 0; r < m; ++r) std::copy_n(buf.data + r * ld, m, out.data() + r * m);
  }
};

CosineTransform2D::CosineTransform2D(std::size_t m) {
  if (m < 2 || !is_power_of_two(m))
    throw std::invalid_argument("cosine transform size must be a power of two >= 2");
  impl_ = std::make_unique<Impl>(m);
}

CosineTransform2D::~CosineTransform2D() = default;
CosineTransform2D::CosineTransform2D(CosineTransform2D&&) noexcept = default;
CosineTransform2D& CosineTransform2D::operator=(CosineTransform2D&&) noexcept = default;

std::size_t CosineTransform2D::size() const { return impl_->m; }

void CosineTransform2D::forward(std::span<const double> in, std::span<double> out) {
  transform(in, out, Kernel::Forward, Kernel::Forward);
}

void CosineTransform2D::cos_cos(std::span<const double> in, std::span<double> out) {
  transform(in, out, Kernel::Cos, Kernel::Cos);
}

void CosineTransform2D::sin_cos(std::span<const double> in, std::span<double> out) {
  transform(in, out, Kernel::Sin, Kernel::Cos);
}

void CosineTransform2D::cos_sin(std::span<const double> in, std::span<double> out) {
  transform(in, out, Kernel::Cos, Kernel::Sin);
}

void CosineTransform2D::transform(std::span<const double> in, std::span<double> out, Kernel first,
                                  Kernel second) {
  const std::size_t m = impl_->m;
  check_span(in, m);
  check_span(out, m);
  impl_->load(in);
  impl_->run(first, second);
  impl_->store(out);
}

struct PeriodicTransform::Impl {
  std::size_t m;
  Buffer in, out;
  Plan r2hc;

  explicit Impl(std::size_t side)
      : m(side), in(side), out(side), r2hc([&] {
          std::lock_guard lock(planner_mutex());
          return fftw_plan_r2r_1d(static_cast<int>(side), in.data, out.data, FFTW_R2HC,
                                  FFTW_ESTIMATE);
        }()) {}
};

PeriodicTransform::PeriodicTransform(std::size_t m) {
  if (m < 1) throw std::invalid_argument("periodic transform size must be positive");
  impl_ = std::make_unique<Impl>(m);
}

PeriodicTransform::~PeriodicTransform() = default;
PeriodicTransform::PeriodicTransform(PeriodicTransform&&) noexcept = default;
PeriodicTransform& PeriodicTransform::operator=(PeriodicTransform&&) noexcept = default;

std::size_t PeriodicTransform::size() const { return impl_->m; }

// Halfcomplex layout: r_0, r_1, ..., r_{m/2}, i_{(m+1)/2 - 1}, ..., i_1 with
// r_k = sum x_l cos(2 pi k l / m) and i_k = -sum x_l sin(2 pi k l / m).
void PeriodicTransform::cos_rows(std::span<double> matrix) {
  const std::size_t m = impl_->m;
  if (matrix.size() != m * m) throw std::invalid_argument("matrix size does not match transform size");
  for (std::size_t r = 0; r < m; ++r) {
    double* row = &matrix[r * m];
    std::copy(row, row + m, impl_->in.data);
    fftw_execute(impl_->r2hc.plan);
    const double* hc = impl_->out.data;
    for (std::size_t k = 0; k < m; ++k) row[k] = (2 * k <= m) ? hc[k] : hc[m - k];
  }
}

void PeriodicTransform::sin_rows(std::span<double> matrix) {
  const std::size_t m = impl_->m;
  if (matrix.size() != m * m) throw std::invalid_argument("matrix size does not match transform size");
  for (std::size_t r = 0; r < m; ++r) {
    double* row = &matrix[r * m];
    std::copy(row, row + m, impl_->in.data);
    fftw_execute(impl_->r2hc.plan);
    const double* hc = impl_->out.data;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == 0 || 2 * k == m) row[k] = 0.0;
      else if (2 * k < m) row[k] = -hc[m - k];
      else row[k] = hc[k];
    }
  }
}

void transpose_square(std::span<double> matrix, std::size_t m) {
  // Small tiles: power-of-two row strides map every row of a tile to one cache set.
  constexpr std::size_t tile = 8;
  double* a = matrix.data();
  for (std::size_t bi = 0; bi < m; bi += tile)
    for (std::size_t bj = bi; bj < m; bj += tile) {
      const std::size_t ie = std::min(bi + tile, m), je = std::min(bj + tile, m);
      for (std::size_t i = bi; i < ie; ++i)
        for (std::size_t j = (bi == bj ? i + 1 : bj); j < je; ++j) std::swap(a[i * m + j], a[j * m + i]);
    }
}

}  // namespace poissonplace
