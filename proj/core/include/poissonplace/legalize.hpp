#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "poissonplace/circuit.hpp"

namespace poissonplace {

struct Segment {
  double x_lo = 0.0;
  double x_hi = 0.0;
};

/// A placement row with its free intervals, disjoint and sorted.
struct Row {
  double y = 0.0;  // bottom edge
  double height = 0.0;
  double site_width = 0.0;  // <= 0: continuous
  double site_origin = 0.0;
  std::vector<Segment> segments;
};

/// Rows from Circuit::rows, or uniform rows of the dominant movable cell
/// height when the circuit has none. Fixed blocks are cut out as blockages.
std::vector<Row> build_rows(const Circuit& circuit);

class LegalizationError : public CircuitError {
 public:
  LegalizationError(const std::string& cell, const std::string& what)
      : CircuitError(what + " for cell '" + cell + "'"), cell_(cell) {}
  const std::string& cell() const { return cell_; }

 private:
  std::string cell_;
};

/// Tetris packing: cells in x order, each placed at the row slot nearest its
/// global position right of the row's current frontier. Fixed blocks stay put.
/// Throws LegalizationError naming the first cell that fits nowhere.
Placement legalize_rows(const Circuit& circuit, const Placement& placement);

/// Swaps horizontally adjacent cells of a row while HPWL strictly drops.
/// Input must be legal; the output stays legal.
Placement detailed_swap(const Circuit& circuit, const Placement& placement);

struct LegalityReport {
  std::size_t overlaps = 0;       // pairs intersecting with positive area
  std::size_t outside = 0;        // movable cells not inside the region
  bool legal() const { return overlaps == 0 && outside == 0; }
};

LegalityReport check_legality(const Circuit& circuit, const Placement& placement);

/// Sum of Manhattan center displacements of movable blocks.
double total_displacement(const Circuit& circuit, const Placement& a, const Placement& b);

}  // namespace poissonplace
