#pragma once

#include <vector>

#include "poissonplace/circuit.hpp"

namespace poissonplace {

/// Sum over nets of the pin bounding-box half perimeter.
double hpwl(const Circuit& circuit, const Placement& placement);

struct WirelengthGradient {
  double value = 0.0;
  std::vector<Point> gradient;  // per block, indexed like Circuit::blocks
};

/// Log-sum-exp wirelength: per net and axis,
///   gamma ln sum exp(x / gamma) + gamma ln sum exp(-x / gamma).
/// gamma must be positive. Exponents are shifted by the net max/min.
WirelengthGradient lse_wirelength(const Circuit& circuit, const Placement& placement, double gamma);

double lse_value(const Circuit& circuit, const Placement& placement, double gamma);

}  // namespace poissonplace
