#include "poissonplace/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "poissonplace/analytic.hpp"
#include "poissonplace/bookshelf.hpp"
#include "poissonplace/density.hpp"
#include "poissonplace/fast_poisson.hpp"
#include "poissonplace/heatmap.hpp"
#include "poissonplace/solver.hpp"

namespace poissonplace::cli {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_coefficients(const fs::path& path, const SpectralCoefficients& c) {
  std::string text;
  char buf[64];
  for (std::size_t u = 0; u < c.side(); ++u) {
    for (std::size_t p = 0; p < c.side(); ++p) {
      std::snprintf(buf, sizeof buf, "%.17g", c(u, p));
      if (p) text += ',';
      text += buf;
    }
    text += '\n';
  }
  write_text(path, text);
}

// Coefficients of the density at `placement` for the chosen solver family.
SpectralCoefficients coefficients_for(const Circuit& circuit, const Placement& placement,
                                      const PlacerConfig& config, std::size_t bins) {
  if (config.solver == SolverKind::ExactSeries) {
    const std::size_t order = config.order != 0 ? config.order : bins - 1;
    return exact_coefficients(ExactDensity::from_circuit(circuit, placement), order);
  }
  const auto grid = build_bin_density(circuit, placement, bins);
  return scale_coefficients(reduced_transform(grid), circuit.region);
}

std::string trace_timing_csv(const PlacementResult& r) {
  std::string out = "iteration,wall_ms\n";
  char buf[64];
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.3f\n", r.trace[k].iteration, r.wall_ms[k]);
    out += buf;
  }
  return out;
}

std::string stem_of(const CommonOptions& o) { return o.input.label(); }

}  // namespace

std::size_t threads_from_env() {
  if (const char* v = std::getenv("POISSONPLACE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && n > 0) return static_cast<std::size_t>(n);
  }
  return 1;
}

RunReport cmd_place(const CommonOptions& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.input);
  fs::create_directories(o.out_dir);
  auto run = run_pipeline(circuit, o.config);
  const std::string stem = stem_of(o);
  write_placement(circuit, run.final, o.out_dir / (stem + ".pl"));
  write_placement(circuit, run.global, o.out_dir / (stem + ".gp.pl"));
  write_text(o.out_dir / "trace.csv", trace_csv(run.result.trace));
  write_text(o.out_dir / "trace_timing.csv", trace_timing_csv(run.result));
  write_text(o.out_dir / "report.txt", run.report.human());
  write_text(o.out_dir / "report.kv", run.report.key_values());
  if (o.dump_coeffs) {
    Circuit placed = circuit;
    placed.apply(run.global);
    write_coefficients(o.out_dir / "coeffs.csv",
                       coefficients_for(placed, run.global, o.config, run.result.bins));
  }
  out << run.report.human() << run.report.key_values();
  if (run.report.overlaps != 0) throw CircuitError("legalized placement still has overlaps");
  return run.report;
}

void cmd_field(const CommonOptions& o, const FieldOptions& f, std::ostream& out) {
  const Circuit circuit = load_circuit(o.input);
  fs::create_directories(o.out_dir);
  const std::size_t m = resolve_bins(circuit, o.config);
  const Placement placement = circuit.placement();
  const auto grid = build_bin_density(circuit, placement, m);

  std::vector<double> raw(m * m);
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j) raw[l * m + j] = grid.raw(l, j);
  write_heatmap_csv(o.out_dir / "density.csv", raw, m);
  write_heatmap_ppm(o.out_dir / "density.ppm", raw, m);

  const auto solve = [&](SolverKind kind) {
    return make_solver(kind, m, o.config.order)->field_map({circuit, placement, grid});
  };
  const auto emit = [&](const std::string& prefix, const FieldMap& map) {
    const auto xi = magnitude(map.xi_x, map.xi_y);
    write_heatmap_csv(o.out_dir / (prefix + "psi.csv"), map.psi, m);
    write_heatmap_ppm(o.out_dir / (prefix + "psi.ppm"), map.psi, m);
    write_heatmap_csv(o.out_dir / (prefix + "xi.csv"), xi, m);
    write_heatmap_ppm(o.out_dir / (prefix + "xi.ppm"), xi, m);
    std::size_t arg = 0;
    for (std::size_t k = 1; k < map.psi.size(); ++k)
      if (std::abs(map.psi[k]) > std::abs(map.psi[arg])) arg = k;
    out << prefix << "bins=" << m << "\n"
        << prefix << "max_abs_psi=" << max_abs(map.psi) << "\n"
        << prefix << "argmax_l=" << arg / m << "\n"
        << prefix << "argmax_j=" << arg % m << "\n"
        << prefix << "max_abs_xi=" << max_abs(xi) << "\n";
  };

  const FieldMap main = solve(o.config.solver);
  emit("", main);
  if (o.dump_coeffs)
    write_coefficients(o.out_dir / "coeffs.csv", coefficients_for(circuit, placement, o.config, m));

  if (!f.diff.empty()) {
    if (f.diff.size() != 2) throw std::invalid_argument("--diff takes two solver names");
    const FieldMap a = solve(parse_solver_kind(f.diff[0]));
    const FieldMap b = solve(parse_solver_kind(f.diff[1]));
    FieldMap r(m, circuit.region);
    for (std::size_t k = 0; k < m * m; ++k) {
      r.psi[k] = a.psi[k] - b.psi[k];
      r.xi_x[k] = a.xi_x[k] - b.xi_x[k];
      r.xi_y[k] = a.xi_y[k] - b.xi_y[k];
    }
    emit("residual_", r);
  }
}

void cmd_compare(const CommonOptions& o, const CompareOptions& c, std::ostream& out) {
  struct Job {
    InputSpec input;
    std::string solver;
  };
  std::vector<InputSpec> inputs;
  for (const auto& path : c.inputs) {
    InputSpec s = o.input;
    s.aux = path;
    s.synthetic = 0;
    inputs.push_back(s);
  }
  if (o.input.synthetic > 0) {
    const auto seeds = c.seeds.empty() ? std::vector<std::uint64_t>{o.input.seed} : c.seeds;
    for (auto seed : seeds) {
      InputSpec s = o.input;
      s.aux.reset();
      s.seed = seed;
      inputs.push_back(s);
    }
  }
  if (inputs.empty()) throw std::invalid_argument("compare needs --input or --synthetic");
  if (c.solvers.empty()) throw std::invalid_argument("compare needs at least one solver");
  for (const auto& s : c.solvers) parse_solver_kind(s);

  std::vector<Job> jobs;
  for (const auto& in : inputs)
    for (const auto& s : c.solvers) jobs.push_back({in, s});
  std::vector<RunReport> reports(jobs.size());
  std::vector<std::string> errors(jobs.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      try {
        const Circuit circuit = load_circuit(jobs[k].input);
        PlacerConfig config = o.config;
        config.solver = parse_solver_kind(jobs[k].solver);
        if (jobs[k].input.synthetic > 0) config.seed = jobs[k].input.seed;
        reports[k] = run_pipeline(circuit, config).report;
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(c.threads, 1, jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream table;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-24s %-18s %16s %16s %10s %10s %6s %9s %s\n", "input", "solver",
                "GP-HPWL", "HPWL", "GP-CPU(s)", "CPU(s)", "iters", "overflow", "status");
  table << buf;
  // Per-solver ratios against the first solver, geometric mean over inputs.
  std::map<std::string, std::vector<double>> ratio_gp, ratio_final, ratio_cpu;
  std::map<std::string, std::vector<double>> finals;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::size_t ref = i * c.solvers.size();
    for (std::size_t s = 0; s < c.solvers.size(); ++s) {
      const std::size_t k = ref + s;
      const RunReport& r = reports[k];
      if (!errors[k].empty()) {
        std::snprintf(buf, sizeof buf, "%-24s %-18s error: %s\n", inputs[i].label().c_str(),
                      c.solvers[s].c_str(), errors[k].c_str());
        table << buf;
        continue;
      }
      std::snprintf(buf, sizeof buf, "%-24s %-18s %16.6g %16.6g %10.3f %10.3f %6zu %9.4f %s\n",
                    inputs[i].label().c_str(), c.solvers[s].c_str(), r.gp_hpwl, r.hpwl, r.gp_seconds,
                    r.total_seconds, r.iterations, r.overflow, r.status.c_str());
      table << buf;
      finals[c.solvers[s]].push_back(r.hpwl);
      if (errors[ref].empty() && reports[ref].hpwl > 0.0) {
        ratio_gp[c.solvers[s]].push_back(r.gp_hpwl / reports[ref].gp_hpwl);
        ratio_final[c.solvers[s]].push_back(r.hpwl / reports[ref].hpwl);
        ratio_cpu[c.solvers[s]].push_back(r.total_seconds / std::max(reports[ref].total_seconds, 1e-9));
      }
    }
  }
  const auto geomean = [](const std::vector<double>& v) {
    if (v.empty()) return std::nan("");
    double s = 0.0;
    for (double x : v) s += std::log(x);
    return std::exp(s / static_cast<double>(v.size()));
  };
  const auto median = [](std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  table << "\nNormalized (geometric mean vs " << c.solvers.front() << ")\n";
  for (const auto& s : c.solvers) {
    std::snprintf(buf, sizeof buf, "%-24s %-18s %16.2f %16.2f %10s %10.2f\n", "Normalized", s.c_str(),
                  geomean(ratio_gp[s]), geomean(ratio_final[s]), "", geomean(ratio_cpu[s]));
    table << buf;
  }
  table << "\n";
  for (const auto& s : c.solvers) table << "median_hpwl." << s << "=" << median(finals[s]) << "\n";

  fs::create_directories(o.out_dir);
  write_text(o.out_dir / "compare.txt", table.str());
  out << table.str();
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Electrostatic global placement with an analytical Poisson solver");
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  CommonOptions o;
  std::string solver = "analytic-fast";
  std::string layout = "center";
  std::string aux, pl;

  app.add_option("--input", aux, "Bookshelf .aux file");
  app.add_option("--placement", pl, ".pl file overriding the input positions");
  app.add_option("--synthetic", o.input.synthetic, "Generate a synthetic circuit with N cells");
  app.add_option("--nets", o.input.nets, "Synthetic net count (default 1.2 N)");
  app.add_option("--utilization", o.input.utilization, "Synthetic cell area / region area")
      ->check(CLI::Range(0.0, 0.7));
  app.add_option("--layout", layout, "Synthetic start: center, corner, uniform, random");
  app.add_option("--seed", o.config.seed, "Seed for synthetic circuits, fillers and jitter");
  app.add_option("--target-density", o.input.target_density, "Target density in (0, 1]");
  app.add_option("--solver", solver, "analytic-fast, spectral-baseline or exact-series");
  app.add_option("--bins", o.config.bins, "Grid side (power of two; default from cell count)");
  app.add_option("--K", o.config.order, "Truncation order for exact-series (default bins - 1)");
  app.add_option("--tau", o.config.target_overflow, "Target overflow");
  app.add_option("--gamma", o.config.gamma, "LSE smoothing length (default 2% of a bin)");
  app.add_option("--lambda0", o.config.lambda_0, "Initial penalty factor");
  app.add_option("--lambda-growth", o.config.lambda_growth, "Penalty multiplier per iteration");
  app.add_option("--max-iters", o.config.max_iters, "Iteration cap");
  app.add_option("--filler-ratio", o.config.filler_ratio, "Fraction of whitespace given to fillers");
  app.add_option("--out-dir", o.out_dir, "Output directory");
  app.add_flag("--dump-coeffs", o.dump_coeffs, "Write the coefficient matrix as coeffs.csv");

  auto* place = app.add_subcommand("place", "Global placement, legalization and detailed swaps");
  auto* field = app.add_subcommand("field", "Density, potential and field heatmaps");
  auto* compare = app.add_subcommand("compare", "Run several solvers and tabulate HPWL and time");
  for (auto* sub : {place, field, compare}) sub->fallthrough();

  FieldOptions fo;
  field->add_option("--diff", fo.diff, "Two solvers whose residual map to emit")->expected(2);

  CompareOptions co;
  co.threads = threads_from_env();
  compare->add_option("--inputs", co.inputs, "Bookshelf .aux files");
  compare->add_option("--seeds", co.seeds, "Synthetic seeds")->delimiter(',');
  compare->add_option("--solvers", co.solvers, "Solvers to run; the first is the reference")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    o.config.solver = parse_solver_kind(solver);
    o.input.layout = parse_layout(layout);
    o.input.seed = o.config.seed;
    if (!aux.empty()) o.input.aux = aux;
    if (!pl.empty()) o.input.placement = pl;
    if (*place) cmd_place(o, out);
    else if (*field) cmd_field(o, fo, out);
    else cmd_compare(o, co, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace poissonplace::cli
