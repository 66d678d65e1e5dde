#pragma once

#include <cstdint>
#include <string>

#include "poissonplace/circuit.hpp"

namespace poissonplace {

/// Initial arrangement of the generated cells.
enum class SyntheticLayout {
  Center,   // tight cluster around the region center (global-placement start)
  Corner,   // tight cluster near (0, 0)
  Uniform,  // lattice covering the region evenly
  Random,   // independent uniform positions
};

struct SyntheticSpec {
  std::size_t n_cells = 500;
  std::size_t n_nets = 600;
  Region region{100.0, 100.0};
  std::uint64_t seed = 1;
  double utilization = 0.5;  // total cell area / region area, at most 0.7
  SyntheticLayout layout = SyntheticLayout::Center;
};

/// Deterministic random netlist of equally sized standard cells on uniform
/// rows. Nets have 2-5 pins drawn mostly from a cell's neighborhood in a
/// hidden lattice so the netlist has a good low-wirelength embedding.
/// Throws CircuitError when the area request is infeasible.
Circuit generate_synthetic(const SyntheticSpec& spec);

Circuit generate_synthetic(std::size_t n_cells, std::size_t n_nets, Region region,
                           std::uint64_t seed);

SyntheticLayout parse_layout(const std::string& name);

}  // namespace poissonplace
