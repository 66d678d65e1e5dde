#include "poissonplace/circuit.hpp"

#include <algorithm>
#include <unordered_set>

namespace poissonplace {

Rect intersect(const Rect& a, const Rect& b) {
  return {std::max(a.x_lo, b.x_lo), std::max(a.y_lo, b.y_lo),
          std::min(a.x_hi, b.x_hi), std::min(a.y_hi, b.y_hi)};
}

double overlap_area(const Rect& a, const Rect& b) {
  const double w = std::min(a.x_hi, b.x_hi) - std::max(a.x_lo, b.x_lo);
  const double h = std::min(a.y_hi, b.y_hi) - std::max(a.y_lo, b.y_lo);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

std::size_t Circuit::num_pins() const {
  std::size_t n = 0;
  for (const auto& net : nets) n += net.pins.size();
  return n;
}

std::size_t Circuit::num_movable() const {
  return static_cast<std::size_t>(std::count_if(
      blocks.begin(), blocks.end(), [](const Block& b) { return b.movable && !b.is_filler; }));
}

std::size_t Circuit::num_fixed() const {
  return static_cast<std::size_t>(
      std::count_if(blocks.begin(), blocks.end(), [](const Block& b) { return !b.movable; }));
}

double Circuit::movable_area() const {
  double a = 0.0;
  for (const auto& b : blocks)
    if (b.movable && !b.is_filler) a += b.area();
  return a;
}

double Circuit::fixed_area_in_region() const {
  double a = 0.0;
  const Rect r = region.rect();
  for (const auto& b : blocks)
    if (!b.movable) a += overlap_area(b.rect(), r);
  return a;
}

Placement Circuit::placement() const {
  Placement p;
  p.reserve(blocks.size());
  for (const auto& b : blocks) p.push_back(b.center);
  return p;
}

void Circuit::apply(const Placement& placement) {
  if (placement.size() != blocks.size())
    throw CircuitError("placement size does not match block count");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].movable) blocks[i].center = placement[i];
}

std::optional<std::size_t> Circuit::find_block(const std::string& name) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].name == name) return i;
  return std::nullopt;
}

void Circuit::validate() const {
  if (!(region.width > 0.0) || !(region.height > 0.0))
    throw CircuitError("region must have positive width and height");
  if (!(target_density > 0.0) || target_density > 1.0)
    throw CircuitError("target density must lie in (0, 1]");
  std::unordered_set<std::string> names;
  names.reserve(blocks.size());
  for (const auto& b : blocks) {
    if (!(b.width > 0.0) || !(b.height > 0.0))
      throw CircuitError("block '" + b.name + "' has non-positive size");
    if (!names.insert(b.name).second) throw CircuitError("duplicate block id '" + b.name + "'");
  }
  for (const auto& net : nets) {
    if (net.pins.empty()) throw CircuitError("net '" + net.name + "' has no pins");
    for (const auto& pin : net.pins) {
      if (pin.block >= blocks.size())
        throw CircuitError("net '" + net.name + "' references a missing block");
      if (blocks[pin.block].is_filler)
        throw CircuitError("net '" + net.name + "' references filler '" + blocks[pin.block].name + "'");
    }
  }
  const double capacity = region.area() * target_density;
  if (movable_area() > capacity * (1.0 + 1e-12))
    throw CircuitError("movable area exceeds region capacity at the target density");
}

std::vector<std::size_t> pin_counts(const Circuit& circuit) {
  std::vector<std::size_t> counts(circuit.blocks.size(), 0);
  for (const auto& net : circuit.nets)
    for (const auto& pin : net.pins) ++counts[pin.block];
  return counts;
}

void clamp_to_region(const Circuit& circuit, Placement& placement) {
  const auto& r = circuit.region;
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) {
    const auto& b = circuit.blocks[i];
    if (!b.movable) continue;
    const double hw = std::min(0.5 * b.width, 0.5 * r.width);
    const double hh = std::min(0.5 * b.height, 0.5 * r.height);
    placement[i].x = std::clamp(placement[i].x, hw, r.width - hw);
    placement[i].y = std::clamp(placement[i].y, hh, r.height - hh);
  }
}

}  // namespace poissonplace
