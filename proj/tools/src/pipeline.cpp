#include "poissonplace/cli/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "poissonplace/bookshelf.hpp"
#include "poissonplace/legalize.hpp"
#include "poissonplace/wirelength.hpp"

namespace poissonplace::cli {

std::string InputSpec::label() const {
  if (aux) return aux->stem().string();
  return "synthetic" + std::to_string(synthetic) + "_s" + std::to_string(seed);
}

Region synthetic_region(std::size_t cells, double utilization) {
  const double side = std::sqrt(10.0 * static_cast<double>(cells) / utilization);
  return {side, side};
}

Circuit load_circuit(const InputSpec& input) {
  Circuit circuit;
  if (input.aux) {
    circuit = parse_bookshelf(*input.aux, {input.target_density});
  } else if (input.synthetic > 0) {
    SyntheticSpec spec;
    spec.n_cells = input.synthetic;
    spec.n_nets = input.nets != 0 ? input.nets
                                   : static_cast<std::size_t>(std::llround(1.2 * static_cast<double>(input.synthetic)));
    spec.utilization = input.utilization;
    spec.region = synthetic_region(input.synthetic, input.utilization);
    spec.seed = input.seed;
    spec.layout = input.layout;
    circuit = generate_synthetic(spec);
    circuit.target_density = input.target_density;
  } else {
    throw CircuitError("no input: pass --input or --synthetic");
  }
  if (input.placement) circuit.apply(read_placement(circuit, *input.placement));
  circuit.validate();
  return circuit;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string RunReport::human() const {
  std::ostringstream o;
  o << "circuit        " << circuit << "\n"
    << "blocks         " << blocks << " (" << movable << " movable, " << fixed << " fixed)\n"
    << "nets / pins    " << nets << " / " << pins << "\n"
    << "region         " << fmt(width) << " x " << fmt(height) << "\n"
    << "solver         " << solver << " (" << bins << "x" << bins << " bins, gamma " << fmt(gamma)
    << ", " << fillers << " fillers)\n"
    << "global place   " << iterations << " iterations, " << status << ", overflow " << fmt(overflow)
    << "\n"
    << "GP-HPWL        " << fmt(gp_hpwl) << "\n"
    << "legal HPWL     " << fmt(legal_hpwl) << "\n"
    << "HPWL           " << fmt(hpwl) << "\n"
    << "overlaps       " << overlaps << "\n"
    << "GP time (s)    " << fmt(gp_seconds) << "\n"
    << "total time (s) " << fmt(total_seconds) << "\n";
  if (!warning.empty()) o << "warning        " << warning << "\n";
  return o.str();
}

std::string RunReport::key_values() const {
  std::ostringstream o;
  o << "circuit=" << circuit << "\n"
    << "blocks=" << blocks << "\n"
    << "movable=" << movable << "\n"
    << "fixed=" << fixed << "\n"
    << "nets=" << nets << "\n"
    << "pins=" << pins << "\n"
    << "region_width=" << fmt(width) << "\n"
    << "region_height=" << fmt(height) << "\n"
    << "solver=" << solver << "\n"
    << "bins=" << bins << "\n"
    << "gamma=" << fmt(gamma) << "\n"
    << "fillers=" << fillers << "\n"
    << "iterations=" << iterations << "\n"
    << "status=" << status << "\n"
    << "overflow=" << fmt(overflow) << "\n"
    << "gp_hpwl=" << fmt(gp_hpwl) << "\n"
    << "legal_hpwl=" << fmt(legal_hpwl) << "\n"
    << "hpwl=" << fmt(hpwl) << "\n"
    << "overlaps=" << overlaps << "\n"
    << "gp_seconds=" << fmt(gp_seconds) << "\n"
    << "total_seconds=" << fmt(total_seconds) << "\n";
  if (!warning.empty()) o << "warning=" << warning << "\n";
  return o.str();
}

PlaceOutputs run_pipeline(const Circuit& circuit, const PlacerConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  PlaceOutputs out;
  out.result = run_global_placement(circuit, config);
  const auto t1 = Clock::now();
  out.global = out.result.placement;
  const Placement legal = legalize_rows(circuit, out.global);
  out.final = detailed_swap(circuit, legal);
  const auto t2 = Clock::now();

  RunReport& r = out.report;
  r.circuit = circuit.name;
  r.blocks = circuit.blocks.size();
  r.movable = circuit.num_movable();
  r.fixed = circuit.num_fixed();
  r.nets = circuit.nets.size();
  r.pins = circuit.num_pins();
  r.width = circuit.region.width;
  r.height = circuit.region.height;
  r.solver = to_string(config.solver);
  r.bins = out.result.bins;
  r.gamma = out.result.gamma;
  r.fillers = out.result.fillers;
  r.iterations = out.result.iterations;
  r.status = out.result.status == PlacementStatus::Converged ? "converged" : "max-iterations";
  r.overflow = out.result.overflow;
  r.gp_hpwl = out.result.hpwl;
  r.legal_hpwl = hpwl(circuit, legal);
  r.hpwl = hpwl(circuit, out.final);
  r.overlaps = check_legality(circuit, out.final).overlaps;
  r.gp_seconds = std::chrono::duration<double>(t1 - t0).count();
  r.total_seconds = std::chrono::duration<double>(t2 - t0).count();
  r.warning = out.result.warning;
  return out;
}

}  // namespace poissonplace::cli
