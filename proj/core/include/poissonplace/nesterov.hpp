#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace poissonplace {

using Vector = std::vector<double>;

/// Writes the gradient at x into grad (already sized like x).
using GradientFn = std::function<void(const Vector& x, Vector& grad)>;
/// Maps a point back into the feasible box in place.
using ProjectFn = std::function<void(Vector& x)>;

struct NesterovOptions {
  /// > 0: constant step 1 / lipschitz and no backtracking.
  double lipschitz = 0.0;
  /// Adaptive mode retries while the predicted step falls below this
  /// fraction of the step just used.
  double backtrack_ratio = 0.95;
  std::size_t max_backtracks = 10;
  /// Relative size of the probe used for the first step estimate.
  double probe = 1e-3;
};

class NonFiniteGradient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accelerated gradient iterations with step length predicted from the
/// local Lipschitz estimate |dv| / |dg|:
///   u' = v - alpha grad(v)
///   a' = (1 + sqrt(4 a^2 + 1)) / 2
///   v' = u' + (a - 1)(u' - u) / a'
/// The last gradient evaluation of step() is always at the new reference point.
class NesterovOptimizer {
 public:
  NesterovOptimizer(Vector x0, GradientFn gradient, ProjectFn project = {},
                    NesterovOptions options = {});

  void step();

  const Vector& solution() const { return u_; }
  const Vector& reference() const { return v_; }
  const Vector& gradient() const { return g_; }
  double step_length() const { return alpha_; }
  std::size_t iterations() const { return iterations_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  void evaluate(const Vector& x, Vector& g);
  double initial_step();

  GradientFn gradient_fn_;
  ProjectFn project_;
  NesterovOptions options_;
  Vector u_, v_, g_;
  double a_ = 1.0;
  double alpha_ = 0.0;
  std::size_t iterations_ = 0;
  std::size_t evaluations_ = 0;
};

double norm2(const Vector& v);

}  // namespace poissonplace
