#include "poissonplace/wirelength.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace poissonplace {

namespace {

void check(const Circuit& circuit, const Placement& placement) {
  if (placement.size() != circuit.blocks.size())
    throw std::invalid_argument("placement size does not match block count");
}

// One axis of one net. Coordinates in `xs`; partial derivatives into `grad`.
double lse_axis(const std::vector<double>& xs, double gamma, std::vector<double>* grad) {
  const double hi = *std::max_element(xs.begin(), xs.end());
  const double lo = *std::min_element(xs.begin(), xs.end());
  double sp = 0.0, sn = 0.0;
  for (double x : xs) {
    sp += std::exp((x - hi) / gamma);
    sn += std::exp((lo - x) / gamma);
  }
  if (grad) {
    grad->resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      (*grad)[i] = std::exp((xs[i] - hi) / gamma) / sp - std::exp((lo - xs[i]) / gamma) / sn;
  }
  return (hi + gamma * std::log(sp)) + (-lo + gamma * std::log(sn));
}

double lse_impl(const Circuit& circuit, const Placement& placement, double gamma,
                std::vector<Point>* gradient) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  check(circuit, placement);
  if (gradient) gradient->assign(circuit.blocks.size(), Point{});
  double total = 0.0;
  std::vector<double> xs, ys, gx, gy;
  for (const Net& net : circuit.nets) {
    if (net.pins.empty()) continue;
    xs.clear();
    ys.clear();
    for (const Pin& pin : net.pins) {
      xs.push_back(placement[pin.block].x + pin.offset.x);
      ys.push_back(placement[pin.block].y + pin.offset.y);
    }
    total += lse_axis(xs, gamma, gradient ? &gx : nullptr);
    total += lse_axis(ys, gamma, gradient ? &gy : nullptr);
    if (gradient)
      for (std::size_t i = 0; i < net.pins.size(); ++i) {
        (*gradient)[net.pins[i].block].x += gx[i];
        (*gradient)[net.pins[i].block].y += gy[i];
      }
  }
  return total;
}

}  // namespace

double hpwl(const Circuit& circuit, const Placement& placement) {
  check(circuit, placement);
  double total = 0.0;
  for (const Net& net : circuit.nets) {
    if (net.pins.empty()) continue;
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const Pin& pin : net.pins) {
      const double x = placement[pin.block].x + pin.offset.x;
      const double y = placement[pin.block].y + pin.offset.y;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
    total += (x_hi - x_lo) + (y_hi - y_lo);
  }
  return total;
}

WirelengthGradient lse_wirelength(const Circuit& circuit, const Placement& placement, double gamma) {
  WirelengthGradient out;
  out.value = lse_impl(circuit, placement, gamma, &out.gradient);
  return out;
}

double lse_value(const Circuit& circuit, const Placement& placement, double gamma) {
  return lse_impl(circuit, placement, gamma, nullptr);
}

}  // namespace poissonplace
