#include "poissonplace/nesterov.hpp"

#include <cmath>
#include <utility>

namespace poissonplace {

double norm2(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

namespace {

double distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NesterovOptimizer::NesterovOptimizer(Vector x0, GradientFn gradient, ProjectFn project,
                                     NesterovOptions options)
    : gradient_fn_(std::move(gradient)),
      project_(std::move(project)),
      options_(options),
      u_(std::move(x0)) {
  if (!gradient_fn_) throw std::invalid_argument("gradient function required");
  if (project_) project_(u_);
  v_ = u_;
  g_.assign(v_.size(), 0.0);
  evaluate(v_, g_);
  alpha_ = options_.lipschitz > 0.0 ? 1.0 / options_.lipschitz : initial_step();
}

void NesterovOptimizer::evaluate(const Vector& x, Vector& g) {
  g.assign(x.size(), 0.0);
  gradient_fn_(x, g);
  ++evaluations_;
  for (double d : g)
    if (!std::isfinite(d)) throw NonFiniteGradient("gradient has a non-finite entry");
}

double NesterovOptimizer::initial_step() {
  const double gn = norm2(g_);
  if (gn == 0.0) return 0.0;
  // Probe along the gradient by a small fraction of the point scale.
  const double scale = std::max(norm2(v_) / std::sqrt(static_cast<double>(v_.size())), 1.0);
  const double h = options_.probe * scale / (gn / std::sqrt(static_cast<double>(v_.size())));
  Vector probe(v_.size()), gp;
  for (std::size_t i = 0; i < v_.size(); ++i) probe[i] = v_[i] - h * g_[i];
  if (project_) project_(probe);
  evaluate(probe, gp);
  const double dg = distance(gp, g_);
  const double dv = distance(probe, v_);
  // Restore the invariant that the last evaluation is at v.
  Vector g;
  evaluate(v_, g);
  g_ = std::move(g);
  return dg > 0.0 ? dv / dg : h;
}

void NesterovOptimizer::step() {
  ++iterations_;
  if (norm2(g_) == 0.0) return;
  const double a_next = 0.5 * (1.0 + std::sqrt(4.0 * a_ * a_ + 1.0));
  const double momentum = (a_ - 1.0) / a_next;
  const bool adaptive = !(options_.lipschitz > 0.0);
  Vector u_next(u_.size()), v_next(u_.size()), g_next;
  double predicted = alpha_;
  for (std::size_t attempt = 0;; ++attempt) {
    for (std::size_t i = 0; i < u_.size(); ++i) u_next[i] = v_[i] - alpha_ * g_[i];
    if (project_) project_(u_next);
    for (std::size_t i = 0; i < u_.size(); ++i) v_next[i] = u_next[i] + momentum * (u_next[i] - u_[i]);
    if (project_) project_(v_next);
    evaluate(v_next, g_next);
    if (!adaptive) break;
    const double dg = distance(g_next, g_);
    const double dv = distance(v_next, v_);
    predicted = (dg > 0.0 && dv > 0.0) ? dv / dg : alpha_;
    if (predicted >= options_.backtrack_ratio * alpha_ || attempt + 1 >= options_.max_backtracks)
      break;
    alpha_ = predicted;
  }
  u_ = std::move(u_next);
  v_ = std::move(v_next);
  g_ = std::move(g_next);
  a_ = a_next;
  if (adaptive) alpha_ = predicted;
}

}  // namespace poissonplace
