#include "poissonplace/placer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "poissonplace/nesterov.hpp"
#include "poissonplace/wirelength.hpp"

namespace poissonplace {

void PlacerConfig::validate() const {
  if (!(target_overflow > 0.0 && target_overflow < 1.0))
    throw std::invalid_argument("target overflow must lie in (0, 1)");
  if (!(lambda_0 > 0.0)) throw std::invalid_argument("lambda0 must be positive");
  if (!(lambda_growth >= 1.0)) throw std::invalid_argument("lambda growth must be >= 1");
  if (!(gamma_bins > 0.0)) throw std::invalid_argument("gamma fraction must be positive");
  if (!(filler_ratio >= 0.0 && filler_ratio <= 1.0))
    throw std::invalid_argument("filler ratio must lie in [0, 1]");
  if (bins != 0 && (bins < 2 || (bins & (bins - 1)) != 0))
    throw std::invalid_argument("bins must be a power of two >= 2");
}

std::size_t default_bins(std::size_t n) {
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::size_t m = 2;
  while (m < side) m *= 2;
  return m;
}

std::size_t resolve_bins(const Circuit& circuit, const PlacerConfig& config) {
  return config.bins != 0 ? config.bins : default_bins(circuit.num_movable());
}

double resolve_gamma(const Circuit& circuit, const PlacerConfig& config) {
  if (config.gamma > 0.0) return config.gamma;
  const auto m = static_cast<double>(resolve_bins(circuit, config));
  const double bin = 0.5 * (circuit.region.width / m + circuit.region.height / m);
  return config.gamma_bins * bin;
}

std::vector<Block> insert_fillers(const Circuit& circuit, const PlacerConfig& config) {
  const double whitespace = circuit.region.area() * circuit.target_density - circuit.movable_area() -
                            circuit.fixed_area_in_region();
  if (!(whitespace > 0.0) || circuit.num_movable() == 0 || config.filler_ratio <= 0.0) return {};
  double log_sum = 0.0;
  std::size_t count = 0;
  for (const Block& b : circuit.blocks)
    if (b.movable && !b.is_filler) {
      log_sum += 0.5 * std::log(b.area());
      ++count;
    }
  const double side = std::exp(log_sum / static_cast<double>(count));
  const auto n = static_cast<std::size_t>(std::floor(config.filler_ratio * whitespace / (side * side)));
  const double w = std::min(side, circuit.region.width);
  const double h = std::min(side, circuit.region.height);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> ux(0.5 * w, circuit.region.width - 0.5 * w);
  std::uniform_real_distribution<double> uy(0.5 * h, circuit.region.height - 0.5 * h);
  std::vector<Block> fillers;
  fillers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Block f;
    f.name = "__filler" + std::to_string(i);
    f.width = w;
    f.height = h;
    f.movable = true;
    f.is_filler = true;
    f.center.x = ux(rng);
    f.center.y = uy(rng);
    fillers.push_back(std::move(f));
  }
  return fillers;
}

Circuit with_fillers(const Circuit& circuit, const std::vector<Block>& fillers) {
  Circuit out = circuit;
  out.blocks.insert(out.blocks.end(), fillers.begin(), fillers.end());
  return out;
}

double potential_energy(const Circuit& circuit, const Placement& placement, const FieldMap& map) {
  double n = 0.0;
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) {
    const Block& b = circuit.blocks[i];
    if (!b.movable) continue;
    n += 0.5 * b.area() * interpolate_field(map, placement[i]).psi;
  }
  return n;
}

std::vector<Point> GradientInfo::total() const {
  std::vector<Point> out(wirelength.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = {wirelength[i].x + lambda * density[i].x, wirelength[i].y + lambda * density[i].y};
  return out;
}

PlacementObjective::PlacementObjective(const Circuit& circuit, std::size_t bins, double gamma,
                                       SolverKind solver, std::size_t order)
    : circuit_(circuit), bins_(bins), gamma_(gamma), solver_(make_solver(solver, bins, order)) {
  has_fixed_ = circuit.num_fixed() > 0;
  if (has_fixed_)
    fixed_ = build_bin_density(circuit, circuit.placement(), bins,
                               {DensitySource::FixedBlocks, false});
}

FieldMap PlacementObjective::field(const Placement& placement) {
  const auto grid = build_bin_density(circuit_, placement, bins_, {DensitySource::AllBlocks, true});
  return solver_->field_map({circuit_, placement, grid});
}

double PlacementObjective::overflow(const Placement& placement) const {
  const auto movable =
      build_bin_density(circuit_, placement, bins_, {DensitySource::MovableCells, false});
  return has_fixed_ ? overflow_ratio(movable, fixed_, circuit_) : overflow_ratio(movable, circuit_);
}

Evaluation PlacementObjective::evaluate(const Placement& placement, double lambda) {
  Evaluation e;
  e.map = field(placement);
  auto wl = lse_wirelength(circuit_, placement, gamma_);
  e.wirelength = wl.value;
  e.hpwl = hpwl(circuit_, placement);
  e.overflow = overflow(placement);
  const std::size_t n = circuit_.blocks.size();
  e.gradient.lambda = lambda;
  e.gradient.wirelength = std::move(wl.gradient);
  e.gradient.density.assign(n, Point{});
  for (std::size_t i = 0; i < n; ++i) {
    const Block& b = circuit_.blocks[i];
    if (!b.movable) {
      e.gradient.wirelength[i] = Point{};
      continue;
    }
    const auto s = interpolate_field(e.map, placement[i]);
    e.energy += 0.5 * b.area() * s.psi;
    e.gradient.density[i] = {-b.area() * s.xi_x, -b.area() * s.xi_y};
  }
  return e;
}

double PlacementObjective::value(const Placement& placement, double lambda) {
  const auto map = field(placement);
  return lse_value(circuit_, placement, gamma_) + lambda * potential_energy(circuit_, placement, map);
}

double initial_lambda(const PlacerConfig& config, const GradientInfo& gradient) {
  double wl = 0.0, dn = 0.0;
  for (std::size_t i = 0; i < gradient.wirelength.size(); ++i) {
    wl += std::abs(gradient.wirelength[i].x) + std::abs(gradient.wirelength[i].y);
    dn += std::abs(gradient.density[i].x) + std::abs(gradient.density[i].y);
  }
  if (!(dn > 0.0)) return config.lambda_0;
  return config.lambda_0 * wl / dn;
}

double update_lambda(double lambda, const PlacerConfig& config) { return lambda * config.lambda_growth; }

namespace {

struct Layout {
  std::vector<std::size_t> active;  // movable blocks and fillers
  std::vector<double> half_w, half_h;
};

void scatter(const Layout& layout, const Vector& x, Placement& placement) {
  for (std::size_t k = 0; k < layout.active.size(); ++k)
    placement[layout.active[k]] = {x[2 * k], x[2 * k + 1]};
}

}  // namespace

PlacementResult run_global_placement(const Circuit& input, const PlacerConfig& config) {
  config.validate();
  input.validate();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  PlacementResult result;
  const auto fillers = insert_fillers(input, config);
  const Circuit circuit = with_fillers(input, fillers);
  result.fillers = fillers.size();
  result.bins = resolve_bins(input, config);
  result.gamma = resolve_gamma(input, config);

  Layout layout;
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i)
    if (circuit.blocks[i].movable) {
      layout.active.push_back(i);
      layout.half_w.push_back(0.5 * std::min(circuit.blocks[i].width, circuit.region.width));
      layout.half_h.push_back(0.5 * std::min(circuit.blocks[i].height, circuit.region.height));
    }

  Placement placement = circuit.placement();
  // Seeded jitter separates coincident starting positions.
  {
    std::mt19937_64 rng(config.seed);
    const double jx = 0.05 * circuit.region.width / static_cast<double>(result.bins);
    const double jy = 0.05 * circuit.region.height / static_cast<double>(result.bins);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (std::size_t i : layout.active)
      if (!circuit.blocks[i].is_filler) {
        placement[i].x += jx * d(rng);
        placement[i].y += jy * d(rng);
      }
  }
  clamp_to_region(circuit, placement);

  PlacementObjective objective(circuit, result.bins, result.gamma, config.solver, config.order);
  const auto pins = pin_counts(circuit);

  const auto project = [&layout, &circuit](Vector& x) {
    for (std::size_t k = 0; k < layout.active.size(); ++k) {
      x[2 * k] = std::clamp(x[2 * k], layout.half_w[k], circuit.region.width - layout.half_w[k]);
      x[2 * k + 1] = std::clamp(x[2 * k + 1], layout.half_h[k], circuit.region.height - layout.half_h[k]);
    }
  };

  Vector x0(2 * layout.active.size());
  for (std::size_t k = 0; k < layout.active.size(); ++k) {
    x0[2 * k] = placement[layout.active[k]].x;
    x0[2 * k + 1] = placement[layout.active[k]].y;
  }

  double lambda = 0.0;
  {
    const auto e = objective.evaluate(placement, 0.0);
    lambda = initial_lambda(config, e.gradient);
  }

  Evaluation last;
  Placement work = placement;
  const auto gradient = [&](const Vector& x, Vector& g) {
    scatter(layout, x, work);
    last = objective.evaluate(work, lambda);
    for (std::size_t k = 0; k < layout.active.size(); ++k) {
      const std::size_t i = layout.active[k];
      const auto& gw = last.gradient.wirelength[i];
      const auto& gd = last.gradient.density[i];
      double scale = 1.0;
      if (config.preconditioning)
        scale = 1.0 / std::max(1.0, static_cast<double>(pins[i]) + lambda * circuit.blocks[i].area());
      g[2 * k] = (gw.x + lambda * gd.x) * scale;
      g[2 * k + 1] = (gw.y + lambda * gd.y) * scale;
    }
  };

  NesterovOptimizer optimizer(x0, gradient, project);

  double best = std::numeric_limits<double>::infinity();
  Placement best_placement;
  for (std::size_t k = 0;; ++k) {
    scatter(layout, optimizer.reference(), work);
    const TraceRow row{k, last.hpwl, last.wirelength, last.energy, lambda, last.overflow};
    result.trace.push_back(row);
    result.wall_ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
    if (row.overflow < best) {
      best = row.overflow;
      best_placement = work;
      result.best_iteration = k;
    }
    result.iterations = k;
    if (row.overflow <= config.target_overflow) {
      result.status = PlacementStatus::Converged;
      break;
    }
    if (k >= config.max_iters) {
      result.status = PlacementStatus::MaxIterations;
      std::ostringstream msg;
      msg << "overflow " << best << " above target " << config.target_overflow << " after "
          << config.max_iters << " iterations; returning iteration " << result.best_iteration;
      result.warning = msg.str();
      break;
    }
    lambda = update_lambda(lambda, config);
    optimizer.step();
  }

  const Placement& chosen = result.status == PlacementStatus::Converged ? work : best_placement;
  result.overflow = result.status == PlacementStatus::Converged ? last.overflow : best;
  result.placement.assign(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(input.blocks.size()));
  result.hpwl = hpwl(input, result.placement);
  return result;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::string out = "iteration,hpwl,wlse,energy,lambda,overflow\n";
  char buf[256];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g,%.10g,%.10g,%.10g\n", r.iteration, r.hpwl,
                  r.wirelength, r.energy, r.lambda, r.overflow);
    out += buf;
  }
  return out;
}

}  // namespace poissonplace
