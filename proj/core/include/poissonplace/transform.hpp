#pragma once

#include <cstddef>
#include <memory>
#include <span>

namespace poissonplace {

/// Fast separable trigonometric transforms on m x m row-major matrices,
/// indexed (first, second) with angles theta_k(i) = k (i + 1/2) pi / m.
/// An instance owns its plans and scratch buffers; it is not safe to share
/// one instance between threads, but separate instances are independent.
class CosineTransform2D {
 public:
  /// m must be a power of two, m >= 2.
  explicit CosineTransform2D(std::size_t m);
  ~CosineTransform2D();
  CosineTransform2D(CosineTransform2D&&) noexcept;
  CosineTransform2D& operator=(CosineTransform2D&&) noexcept;
  CosineTransform2D(const CosineTransform2D&) = delete;
  CosineTransform2D& operator=(const CosineTransform2D&) = delete;

  std::size_t size() const;

  /// out(u, p) = sum_{l, j} in(l, j) cos(theta_u(l)) cos(theta_p(j))
  void forward(std::span<const double> in, std::span<double> out);
  /// out(l, j) = sum_{u, p} in(u, p) cos(theta_u(l)) cos(theta_p(j))
  void cos_cos(std::span<const double> in, std::span<double> out);
  /// out(l, j) = sum_{u, p} in(u, p) sin(theta_u(l)) cos(theta_p(j))
  void sin_cos(std::span<const double> in, std::span<double> out);
  /// out(l, j) = sum_{u, p} in(u, p) cos(theta_u(l)) sin(theta_p(j))
  void cos_sin(std::span<const double> in, std::span<double> out);


 private:
  enum class Kernel { Forward, Cos, Sin };
  struct Impl;
  void transform(std::span<const double> in, std::span<double> out, Kernel first, Kernel second);
  std::unique_ptr<Impl> impl_;
};

/// Rows of an m x m matrix through the periodic cosine/sine sums
///   row'(k) = sum_l row(l) cos(2 pi k l / m)   or   sin(2 pi k l / m),
/// computed with one real-to-halfcomplex FFT per row.
class PeriodicTransform {
 public:
  explicit PeriodicTransform(std::size_t m);
  ~PeriodicTransform();
  PeriodicTransform(PeriodicTransform&&) noexcept;
  PeriodicTransform& operator=(PeriodicTransform&&) noexcept;
  PeriodicTransform(const PeriodicTransform&) = delete;
  PeriodicTransform& operator=(const PeriodicTransform&) = delete;

  std::size_t size() const;
  void cos_rows(std::span<double> matrix);
  void sin_rows(std::span<double> matrix);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

void transpose_square(std::span<double> matrix, std::size_t m);

bool is_power_of_two(std::size_t m);

}  // namespace poissonplace
