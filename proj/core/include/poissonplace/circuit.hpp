#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace poissonplace {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle given by its lower-left and upper-right corners.
struct Rect {
  double x_lo = 0.0;
  double y_lo = 0.0;
  double x_hi = 0.0;
  double y_hi = 0.0;

  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  double area() const { return width() * height(); }
  bool empty() const { return x_hi <= x_lo || y_hi <= y_lo; }

  static Rect centered(Point c, double w, double h) {
    return {c.x - 0.5 * w, c.y - 0.5 * h, c.x + 0.5 * w, c.y + 0.5 * h};
  }
};

Rect intersect(const Rect& a, const Rect& b);
double overlap_area(const Rect& a, const Rect& b);

/// Placement region [0, width] x [0, height].
struct Region {
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  Rect rect() const { return {0.0, 0.0, width, height}; }
  bool contains(Point p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
};

struct Block {
  std::string name;
  double width = 0.0;
  double height = 0.0;
  bool movable = true;
  bool is_filler = false;
  Point center;

  double area() const { return width * height; }
  Rect rect() const { return Rect::centered(center, width, height); }
};

struct Pin {
  std::size_t block = 0;
  Point offset;  // relative to the block center
};

struct Net {
  std::string name;
  std::vector<Pin> pins;
};

/// One placement row as read from .scl (or synthesized).
struct RowSpec {
  double y = 0.0;
  double height = 0.0;
  double x_begin = 0.0;
  double x_end = 0.0;
  double site_width = 0.0;  // <= 0 means continuous positions
};

/// Per-block center coordinates, indexed like Circuit::blocks.
using Placement = std::vector<Point>;

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Circuit {
  std::string name;
  std::vector<Block> blocks;
  std::vector<Net> nets;
  Region region;
  double target_density = 1.0;
  std::vector<RowSpec> rows;
  // Translation applied on input: region coordinate = file coordinate - origin.
  Point origin;

  std::size_t num_pins() const;
  std::size_t num_movable() const;
  std::size_t num_fixed() const;
  double movable_area() const;
  double fixed_area_in_region() const;

  Placement placement() const;
  void apply(const Placement& placement);

  /// Linear scan; build a map when looking up many names.
  std::optional<std::size_t> find_block(const std::string& name) const;

  /// Throws CircuitError on a broken invariant.
  void validate() const;
};

/// Number of pins attached to each block.
std::vector<std::size_t> pin_counts(const Circuit& circuit);

/// Clamp each movable center so its block stays inside the region.
void clamp_to_region(const Circuit& circuit, Placement& placement);

}  // namespace poissonplace
