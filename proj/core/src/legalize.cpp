#include "poissonplace/legalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "poissonplace/wirelength.hpp"

namespace poissonplace {

namespace {

constexpr double kEps = 1e-9;

double snap_up(const Row& row, double x) {
  if (row.site_width <= 0.0) return x;
  const double k = std::ceil((x - row.site_origin) / row.site_width - kEps);
  return row.site_origin + k * row.site_width;
}

double snap_nearest(const Row& row, double x) {
  if (row.site_width <= 0.0) return x;
  const double k = std::round((x - row.site_origin) / row.site_width);
  return row.site_origin + k * row.site_width;
}

std::vector<Segment> subtract(std::vector<Segment> free, const Segment& cut) {
  std::vector<Segment> out;
  for (const auto& s : free) {
    if (cut.x_hi <= s.x_lo || cut.x_lo >= s.x_hi) {
      out.push_back(s);
      continue;
    }
    if (cut.x_lo > s.x_lo) out.push_back({s.x_lo, cut.x_lo});
    if (cut.x_hi < s.x_hi) out.push_back({cut.x_hi, s.x_hi});
  }
  return out;
}

double dominant_height(const Circuit& circuit) {
  std::map<double, std::size_t> counts;
  for (const Block& b : circuit.blocks)
    if (b.movable && !b.is_filler) ++counts[b.height];
  if (counts.empty()) return circuit.region.height;
  return std::max_element(counts.begin(), counts.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->first;
}

}  // namespace

std::vector<Row> build_rows(const Circuit& circuit) {
  std::vector<Row> rows;
  if (!circuit.rows.empty()) {
    for (const RowSpec& spec : circuit.rows) {
      Row r;
      r.y = spec.y;
      r.height = spec.height;
      r.site_width = spec.site_width;
      r.site_origin = spec.x_begin;
      r.segments.push_back({std::max(0.0, spec.x_begin), std::min(circuit.region.width, spec.x_end)});
      rows.push_back(std::move(r));
    }
  } else {
    const double h = dominant_height(circuit);
    const auto count = static_cast<std::size_t>(std::floor(circuit.region.height / h + kEps));
    for (std::size_t k = 0; k < count; ++k) {
      Row r;
      r.y = static_cast<double>(k) * h;
      r.height = h;
      r.segments.push_back({0.0, circuit.region.width});
      rows.push_back(std::move(r));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.y < b.y; });
  for (const Block& b : circuit.blocks) {
    if (b.movable) continue;
    const Rect rect = b.rect();
    for (Row& r : rows) {
      if (rect.y_hi <= r.y + kEps || rect.y_lo >= r.y + r.height - kEps) continue;
      r.segments = subtract(std::move(r.segments), {rect.x_lo, rect.x_hi});
    }
  }
  for (Row& r : rows) {
    std::erase_if(r.segments, [](const Segment& s) { return s.x_hi - s.x_lo <= kEps; });
    std::sort(r.segments.begin(), r.segments.end(),
              [](const Segment& a, const Segment& b) { return a.x_lo < b.x_lo; });
  }
  return rows;
}

Placement legalize_rows(const Circuit& circuit, const Placement& placement) {
  if (placement.size() != circuit.blocks.size())
    throw std::invalid_argument("placement size does not match block count");
  const auto rows = build_rows(circuit);
  // Left frontier of every segment.
  std::vector<std::vector<double>> frontier(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& s : rows[r].segments) frontier[r].push_back(snap_up(rows[r], s.x_lo));

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i)
    if (circuit.blocks[i].movable && !circuit.blocks[i].is_filler) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double xa = placement[a].x - 0.5 * circuit.blocks[a].width;
    const double xb = placement[b].x - 0.5 * circuit.blocks[b].width;
    if (xa != xb) return xa < xb;
    return a < b;
  });

  std::vector<double> row_y(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) row_y[r] = rows[r].y;

  Placement out = placement;
  for (std::size_t i : order) {
    const Block& b = circuit.blocks[i];
    const double tx = placement[i].x - 0.5 * b.width;
    const double ty = placement[i].y - 0.5 * b.height;
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_row = 0, best_seg = 0;
    double best_x = 0.0;
    const auto try_row = [&](std::size_t r) {
      const Row& row = rows[r];
      if (b.height > row.height + kEps) return;
      for (std::size_t s = 0; s < row.segments.size(); ++s) {
        const Segment& seg = row.segments[s];
        double x = std::max(frontier[r][s], snap_nearest(row, tx));
        x = snap_up(row, x);
        if (x + b.width > seg.x_hi + kEps) {
          // Fall back to the rightmost aligned slot if it is still right of the frontier.
          double alt = seg.x_hi - b.width;
          if (row.site_width > 0.0)
            alt = row.site_origin +
                  std::floor((alt - row.site_origin) / row.site_width + kEps) * row.site_width;
          if (alt + kEps < frontier[r][s]) continue;
          x = alt;
        }
        const double cost = std::abs(x - tx) + std::abs(row.y - ty);
        if (cost < best_cost) {
          best_cost = cost;
          best_row = r;
          best_seg = s;
          best_x = x;
        }
      }
    };
    // Rows outward from the nearest one; stop when the vertical distance alone loses.
    const auto mid = static_cast<std::size_t>(
        std::lower_bound(row_y.begin(), row_y.end(), ty) - row_y.begin());
    std::size_t up = mid, down = mid;
    while (up < rows.size() || down > 0) {
      const double du = up < rows.size() ? std::abs(rows[up].y - ty) : std::numeric_limits<double>::infinity();
      const double dd = down > 0 ? std::abs(rows[down - 1].y - ty) : std::numeric_limits<double>::infinity();
      if (std::min(du, dd) > best_cost) break;
      if (du <= dd) try_row(up++);
      else try_row(--down);
    }
    if (!std::isfinite(best_cost)) throw LegalizationError(b.name, "insufficient row capacity");
    frontier[best_row][best_seg] = snap_up(rows[best_row], best_x + b.width);
    out[i] = {best_x + 0.5 * b.width, rows[best_row].y + 0.5 * b.height};
  }
  return out;
}

namespace {

struct NetIndex {
  std::vector<std::vector<std::size_t>> nets_of;
  explicit NetIndex(const Circuit& c) : nets_of(c.blocks.size()) {
    for (std::size_t n = 0; n < c.nets.size(); ++n)
      for (const Pin& p : c.nets[n].pins)
        if (nets_of[p.block].empty() || nets_of[p.block].back() != n) nets_of[p.block].push_back(n);
  }
};

double net_hpwl(const Circuit& c, const Placement& pl, std::size_t n) {
  const Net& net = c.nets[n];
  double xl = std::numeric_limits<double>::infinity(), xh = -xl, yl = xl, yh = -xl;
  for (const Pin& p : net.pins) {
    const double x = pl[p.block].x + p.offset.x, y = pl[p.block].y + p.offset.y;
    xl = std::min(xl, x);
    xh = std::max(xh, x);
    yl = std::min(yl, y);
    yh = std::max(yh, y);
  }
  return net.pins.empty() ? 0.0 : (xh - xl) + (yh - yl);
}

}  // namespace

Placement detailed_swap(const Circuit& circuit, const Placement& placement) {
  if (placement.size() != circuit.blocks.size())
    throw std::invalid_argument("placement size does not match block count");
  const auto rows = build_rows(circuit);
  const NetIndex index(circuit);
  Placement pl = placement;

  // Cells grouped by the row containing their bottom edge.
  std::vector<std::vector<std::size_t>> members(rows.size());
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) {
    const Block& b = circuit.blocks[i];
    if (!b.movable || b.is_filler) continue;
    const double y = pl[i].y - 0.5 * b.height;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (std::abs(rows[r].y - y) <= kEps * std::max(1.0, std::abs(y))) {
        members[r].push_back(i);
        break;
      }
  }

  std::vector<std::size_t> touched;
  const auto affected = [&](std::size_t a, std::size_t b) {
    touched = index.nets_of[a];
    touched.insert(touched.end(), index.nets_of[b].begin(), index.nets_of[b].end());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    double s = 0.0;
    for (std::size_t n : touched) s += net_hpwl(circuit, pl, n);
    return s;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto& cells = members[r];
      std::sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) { return pl[a].x < pl[b].x; });
      for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
        const std::size_t a = cells[k], b = cells[k + 1];
        const Block& ba = circuit.blocks[a];
        const Block& bb = circuit.blocks[b];
        const double left = pl[a].x - 0.5 * ba.width;
        const double right = pl[b].x + 0.5 * bb.width;
        const double b_lo = left;
        const double a_lo = snap_up(rows[r], b_lo + bb.width);
        if (a_lo + ba.width > right + kEps) continue;
        const double before = affected(a, b);
        const Point pa = pl[a], pb = pl[b];
        pl[b].x = b_lo + 0.5 * bb.width;
        pl[a].x = a_lo + 0.5 * ba.width;
        const double after = affected(a, b);
        if (after < before - 1e-9 * std::max(1.0, before)) {
          std::swap(cells[k], cells[k + 1]);
          changed = true;
        } else {
          pl[a] = pa;
          pl[b] = pb;
        }
      }
    }
  }
  return pl;
}

LegalityReport check_legality(const Circuit& circuit, const Placement& placement) {
  LegalityReport report;
  struct Item {
    Rect rect;
    bool movable;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) {
    const Block& b = circuit.blocks[i];
    if (b.is_filler) continue;
    const Rect rect = Rect::centered(placement[i], b.width, b.height);
    if (b.movable) {
      const double tol = kEps * std::max({1.0, circuit.region.width, circuit.region.height});
      if (rect.x_lo < -tol || rect.y_lo < -tol || rect.x_hi > circuit.region.width + tol ||
          rect.y_hi > circuit.region.height + tol)
        ++report.outside;
    }
    items.push_back({rect, b.movable});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.rect.x_lo < b.rect.x_lo; });
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size() && items[j].rect.x_lo < items[i].rect.x_hi - kEps; ++j) {
      if (!items[i].movable && !items[j].movable) continue;
      const Rect o = intersect(items[i].rect, items[j].rect);
      if (o.width() > kEps && o.height() > kEps) ++report.overlaps;
    }
  return report;
}

double total_displacement(const Circuit& circuit, const Placement& a, const Placement& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i)
    if (circuit.blocks[i].movable && !circuit.blocks[i].is_filler)
      d += std::abs(a[i].x - b[i].x) + std::abs(a[i].y - b[i].y);
  return d;
}

}  // namespace poissonplace
