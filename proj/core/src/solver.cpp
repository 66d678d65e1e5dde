#include "poissonplace/solver.hpp"

#include <stdexcept>

#include "poissonplace/analytic.hpp"
#include "poissonplace/fast_poisson.hpp"
#include "poissonplace/transform.hpp"

namespace poissonplace {

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "analytic-fast") return SolverKind::AnalyticFast;
  if (name == "spectral-baseline") return SolverKind::SpectralBaseline;
  if (name == "exact-series") return SolverKind::ExactSeries;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::AnalyticFast: return "analytic-fast";
    case SolverKind::SpectralBaseline: return "spectral-baseline";
    case SolverKind::ExactSeries: return "exact-series";
  }
  return "unknown";
}

namespace {

void check_size(const DensityGrid& grid, std::size_t m) {
  if (grid.size() != m) throw std::invalid_argument("grid size does not match solver");
}

class AnalyticFastSolver final : public PoissonSolver {
 public:
  explicit AnalyticFastSolver(std::size_t m) : m_(m), transform_(m) {}
  SolverKind kind() const override { return SolverKind::AnalyticFast; }
  FieldMap field_map(const SolveInput& in) override {
    check_size(in.grid, m_);
    return solve_fast(in.grid, transform_);
  }

 private:
  std::size_t m_;
  CosineTransform2D transform_;
};

class SpectralBaselineSolver final : public PoissonSolver {
 public:
  explicit SpectralBaselineSolver(std::size_t m) : m_(m), transform_(m) {}
  SolverKind kind() const override { return SolverKind::SpectralBaseline; }
  FieldMap field_map(const SolveInput& in) override {
    check_size(in.grid, m_);
    return to_region_units(spectral_baseline(in.grid, transform_));
  }

 private:
  std::size_t m_;
  PeriodicTransform transform_;
};

// Closed-form coefficients of the unbinned block density, evaluated at the
// bin centers. Orders up to m - 1 go through the inverse transforms.
class ExactSeriesSolver final : public PoissonSolver {
 public:
  ExactSeriesSolver(std::size_t m, std::size_t order)
      : m_(m), order_(order == 0 ? m - 1 : order), transform_(m) {}
  SolverKind kind() const override { return SolverKind::ExactSeries; }
  FieldMap field_map(const SolveInput& in) override {
    check_size(in.grid, m_);
    const auto density = ExactDensity::from_circuit(in.circuit, in.placement);
    const auto c = exact_coefficients(density, order_);
    if (order_ + 1 <= m_) {
      SpectralCoefficients padded(m_ - 1, density.region());
      for (std::size_t u = 0; u <= order_; ++u)
        for (std::size_t p = 0; p <= order_; ++p) padded(u, p) = c(u, p);
      return fast_field_map(padded, transform_);
    }
    std::vector<Point> centers;
    centers.reserve(m_ * m_);
    for (std::size_t l = 0; l < m_; ++l)
      for (std::size_t j = 0; j < m_; ++j) centers.push_back(in.grid.bin_center(l, j));
    const auto samples = eval_points(c, centers);
    FieldMap map(m_, density.region());
    for (std::size_t k = 0; k < samples.size(); ++k) {
      map.psi[k] = samples[k].psi;
      map.xi_x[k] = samples[k].xi_x;
      map.xi_y[k] = samples[k].xi_y;
    }
    return map;
  }

 private:
  std::size_t m_;
  std::size_t order_;
  CosineTransform2D transform_;
};

}  // namespace

std::unique_ptr<PoissonSolver> make_solver(SolverKind kind, std::size_t m, std::size_t order) {
  switch (kind) {
    case SolverKind::AnalyticFast: return std::make_unique<AnalyticFastSolver>(m);
    case SolverKind::SpectralBaseline: return std::make_unique<SpectralBaselineSolver>(m);
    case SolverKind::ExactSeries: return std::make_unique<ExactSeriesSolver>(m, order);
  }
  throw std::invalid_argument("unknown solver kind");
}

}  // namespace poissonplace
