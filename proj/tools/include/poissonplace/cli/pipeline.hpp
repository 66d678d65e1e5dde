#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "poissonplace/circuit.hpp"
#include "poissonplace/placer.hpp"
#include "poissonplace/synthetic.hpp"

namespace poissonplace::cli {

/// Where a circuit comes from: a Bookshelf .aux file or a synthetic spec.
struct InputSpec {
  std::optional<std::filesystem::path> aux;
  std::optional<std::filesystem::path> placement;  // .pl overriding the aux positions
  std::size_t synthetic = 0;
  std::size_t nets = 0;  // 0: 1.2 per cell
  double utilization = 0.5;
  SyntheticLayout layout = SyntheticLayout::Center;
  std::uint64_t seed = 1;
  double target_density = 1.0;

  std::string label() const;
};

/// Square region holding cells of area 10 at the requested utilization.
Region synthetic_region(std::size_t cells, double utilization);

Circuit load_circuit(const InputSpec& input);

struct RunReport {
  std::string circuit;
  std::size_t blocks = 0;
  std::size_t movable = 0;
  std::size_t fixed = 0;
  std::size_t nets = 0;
  std::size_t pins = 0;
  double width = 0.0;
  double height = 0.0;
  std::string solver;
  std::size_t bins = 0;
  double gamma = 0.0;
  std::size_t fillers = 0;
  std::size_t iterations = 0;
  std::string status;
  double overflow = 0.0;
  double gp_hpwl = 0.0;
  double legal_hpwl = 0.0;  // after legalization, before swaps
  double hpwl = 0.0;        // final, after detailed swaps
  std::size_t overlaps = 0;
  double gp_seconds = 0.0;
  double total_seconds = 0.0;
  std::string warning;

  std::string human() const;
  /// Flat key=value lines with stable keys.
  std::string key_values() const;
};

struct PlaceOutputs {
  Placement global;
  Placement final;
  PlacementResult result;
  RunReport report;
};

/// Global placement, legalization and detailed swaps, with wall-clock timing.
PlaceOutputs run_pipeline(const Circuit& circuit, const PlacerConfig& config);

}  // namespace poissonplace::cli
