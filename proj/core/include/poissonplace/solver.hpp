#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "poissonplace/circuit.hpp"
#include "poissonplace/density.hpp"
#include "poissonplace/field_map.hpp"

namespace poissonplace {

enum class SolverKind { AnalyticFast, SpectralBaseline, ExactSeries };

/// Accepts "analytic-fast", "spectral-baseline", "exact-series".
SolverKind parse_solver_kind(std::string_view name);
std::string to_string(SolverKind kind);

/// Everything a solver may read for one solve. `grid` is the smoothed,
/// mean-subtracted density of all blocks at `placement`.
struct SolveInput {
  const Circuit& circuit;
  const Placement& placement;
  const DensityGrid& grid;
};

/// Field at the bin centers of `grid`, in region units.
/// An instance caches transform plans and must not be shared between threads.
class PoissonSolver {
 public:
  virtual ~PoissonSolver() = default;
  virtual SolverKind kind() const = 0;
  virtual FieldMap field_map(const SolveInput& input) = 0;
};

/// `order` applies to ExactSeries only; 0 selects m - 1.
std::unique_ptr<PoissonSolver> make_solver(SolverKind kind, std::size_t m, std::size_t order = 0);

}  // namespace poissonplace
