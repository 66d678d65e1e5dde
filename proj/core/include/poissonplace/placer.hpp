#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "poissonplace/circuit.hpp"
#include "poissonplace/density.hpp"
#include "poissonplace/field_map.hpp"
#include "poissonplace/solver.hpp"

namespace poissonplace {

struct PlacerConfig {
  double target_overflow = 0.10;
  double lambda_0 = 8e-5;
  double lambda_growth = 1.05;
  /// LSE smoothing length; <= 0 selects gamma_bins * average bin dimension.
  double gamma = 0.0;
  double gamma_bins = 0.02;
  std::size_t max_iters = 2000;
  double filler_ratio = 1.0;
  std::uint64_t seed = 1;
  /// Grid side; 0 selects the power of two >= sqrt(movable count).
  std::size_t bins = 0;
  SolverKind solver = SolverKind::AnalyticFast;
  /// Truncation order for the exact-series solver; 0 selects bins - 1.
  std::size_t order = 0;
  /// Divide each gradient entry by max(1, pins + lambda * area).
  bool preconditioning = true;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Power of two >= ceil(sqrt(n)), at least 2.
std::size_t default_bins(std::size_t n);
std::size_t resolve_bins(const Circuit& circuit, const PlacerConfig& config);
double resolve_gamma(const Circuit& circuit, const PlacerConfig& config);

/// Square fillers of side sqrt of the geometric mean of movable cell areas,
/// filling filler_ratio of the whitespace W H target - movable - fixed, at
/// seeded uniform random positions. Empty when whitespace <= 0.
std::vector<Block> insert_fillers(const Circuit& circuit, const PlacerConfig& config);

/// Copy of `circuit` with `fillers` appended to its blocks.
Circuit with_fillers(const Circuit& circuit, const std::vector<Block>& fillers);

/// N = 1/2 sum q_i psi(v_i) over movable blocks and fillers, q_i = area.
double potential_energy(const Circuit& circuit, const Placement& placement, const FieldMap& map);

struct GradientInfo {
  std::vector<Point> wirelength;  // zero for fixed blocks and fillers
  std::vector<Point> density;     // -q_i xi_i; zero for fixed blocks
  double lambda = 0.0;
  std::vector<Point> total() const;
};

/// Wirelength, energy and their gradients at one placement, plus overflow.
struct Evaluation {
  double hpwl = 0.0;
  double wirelength = 0.0;
  double energy = 0.0;
  double overflow = 0.0;
  GradientInfo gradient;
  FieldMap map;
};

/// Density -> field -> gradients for a fixed circuit (fillers included).
class PlacementObjective {
 public:
  PlacementObjective(const Circuit& circuit, std::size_t bins, double gamma, SolverKind solver,
                     std::size_t order = 0);

  const Circuit& circuit() const { return circuit_; }
  std::size_t bins() const { return bins_; }
  double gamma() const { return gamma_; }

  Evaluation evaluate(const Placement& placement, double lambda);
  /// W_LSE + lambda N with the field recomputed at `placement`.
  double value(const Placement& placement, double lambda);
  double overflow(const Placement& placement) const;
  FieldMap field(const Placement& placement);

 private:
  const Circuit& circuit_;
  std::size_t bins_;
  double gamma_;
  std::unique_ptr<PoissonSolver> solver_;
  DensityGrid fixed_;
  bool has_fixed_ = false;
};

/// lambda_0 * |grad W|_1 / |grad N|_1, or lambda_0 when |grad N|_1 = 0.
double initial_lambda(const PlacerConfig& config, const GradientInfo& gradient);
double update_lambda(double lambda, const PlacerConfig& config);

struct TraceRow {
  std::size_t iteration = 0;
  double hpwl = 0.0;
  double wirelength = 0.0;
  double energy = 0.0;
  double lambda = 0.0;
  double overflow = 0.0;
};

enum class PlacementStatus { Converged, MaxIterations };

struct PlacementResult {
  Placement placement;  // one entry per original block; fillers dropped
  std::vector<TraceRow> trace;
  std::vector<double> wall_ms;  // elapsed time at each trace row
  PlacementStatus status = PlacementStatus::Converged;
  std::size_t iterations = 0;
  std::size_t best_iteration = 0;
  double overflow = 0.0;
  double hpwl = 0.0;
  std::size_t bins = 0;
  double gamma = 0.0;
  std::size_t fillers = 0;
  std::string warning;
};

/// Runs until overflow <= target_overflow or max_iters. On the iteration cap
/// returns the lowest-overflow iterate seen with status MaxIterations.
PlacementResult run_global_placement(const Circuit& circuit, const PlacerConfig& config);

/// Trace as CSV: iteration,hpwl,wlse,energy,lambda,overflow (no timing).
std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace poissonplace
