#include "poissonplace/bookshelf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace poissonplace {

namespace fs = std::filesystem;

ParseError::ParseError(const fs::path& file, std::size_t line, const std::string& what)
    : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + what),
      file_(file),
      line_(line) {}

namespace {

// Whitespace tokenizer that also splits on ':' and drops '#' comments.
class LineReader {
 public:
  explicit LineReader(const fs::path& path) : path_(path), in_(path) {
    if (!in_) throw ParseError("cannot open '" + path.string() + "'");
  }

  // Returns false at end of file. Blank and comment-only lines are skipped.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      tokens.clear();
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::string cur;
      for (char c : line) {
        if (c == ':' || std::isspace(static_cast<unsigned char>(c))) {
          if (!cur.empty()) tokens.push_back(std::move(cur));
          cur.clear();
          if (c == ':') tokens.emplace_back(":");
        } else {
          cur.push_back(c);
        }
      }
      if (!cur.empty()) tokens.push_back(std::move(cur));
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_, line_no_, what); }

  double number(const std::string& tok) const {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail("expected a number, found '" + tok + "'");
    return v;
  }

  long integer(const std::string& tok) const {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      fail("expected an integer, found '" + tok + "'");
    return v;
  }

  std::size_t line() const { return line_no_; }

 private:
  fs::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

bool is_header(const std::vector<std::string>& t) { return !t.empty() && t[0] == "UCLA"; }

// "Key : value" lines.
bool keyed(const std::vector<std::string>& t, const char* key) {
  return t.size() >= 3 && t[1] == ":" && t[0] == key;
}

struct AuxFiles {
  fs::path nodes, nets, pl, scl;
};

AuxFiles read_aux(const fs::path& aux) {
  LineReader r(aux);
  std::vector<std::string> t;
  AuxFiles files;
  const fs::path dir = aux.parent_path();
  while (r.next(t)) {
    for (const auto& tok : t) {
      const fs::path p(tok);
      const auto ext = p.extension().string();
      if (ext == ".nodes") files.nodes = dir / p;
      else if (ext == ".nets") files.nets = dir / p;
      else if (ext == ".pl") files.pl = dir / p;
      else if (ext == ".scl") files.scl = dir / p;
    }
  }
  if (files.nodes.empty()) throw ParseError(aux, r.line(), "aux file lists no .nodes file");
  if (files.nets.empty()) throw ParseError(aux, r.line(), "aux file lists no .nets file");
  if (files.pl.empty()) throw ParseError(aux, r.line(), "aux file lists no .pl file");
  for (const auto* p : {&files.nodes, &files.nets, &files.pl})
    if (!fs::exists(*p)) throw ParseError("missing file '" + p->string() + "'");
  if (!files.scl.empty() && !fs::exists(files.scl))
    throw ParseError("missing file '" + files.scl.string() + "'");
  return files;
}

using NameIndex = std::unordered_map<std::string, std::size_t>;

void read_nodes(const fs::path& path, Circuit& c, NameIndex& index) {
  LineReader r(path);
  std::vector<std::string> t;
  long declared = -1;
  while (r.next(t)) {
    if (is_header(t)) continue;
    if (keyed(t, "NumNodes")) {
      declared = r.integer(t[2]);
      c.blocks.reserve(static_cast<std::size_t>(std::max(declared, 0L)));
      continue;
    }
    if (keyed(t, "NumTerminals")) continue;
    if (t.size() < 3) r.fail("expected 'name width height [terminal]'");
    Block b;
    b.name = t[0];
    b.width = r.number(t[1]);
    b.height = r.number(t[2]);
    b.movable = !(t.size() >= 4 && (t[3] == "terminal" || t[3] == "terminal_NI"));
    if (!(b.width > 0.0) || !(b.height > 0.0)) r.fail("node '" + b.name + "' has non-positive size");
    if (!index.emplace(b.name, c.blocks.size()).second) r.fail("duplicate node '" + b.name + "'");
    c.blocks.push_back(std::move(b));
  }
  if (declared >= 0 && static_cast<std::size_t>(declared) != c.blocks.size())
    throw ParseError(path, r.line(),
                     "NumNodes says " + std::to_string(declared) + " but found " +
                         std::to_string(c.blocks.size()));
}

void read_nets(const fs::path& path, Circuit& c, const NameIndex& index) {
  LineReader r(path);
  std::vector<std::string> t;
  long declared = -1;
  std::size_t remaining = 0;
  while (r.next(t)) {
    if (is_header(t)) continue;
    if (keyed(t, "NumNets")) {
      declared = r.integer(t[2]);
      c.nets.reserve(static_cast<std::size_t>(std::max(declared, 0L)));
      continue;
    }
    if (keyed(t, "NumPins")) continue;
    if (keyed(t, "NetDegree")) {
      if (remaining != 0) r.fail("previous net ended early");
      const long degree = r.integer(t[2]);
      if (degree < 1) r.fail("net degree must be at least 1");
      Net net;
      net.name = t.size() >= 4 ? t[3] : "net" + std::to_string(c.nets.size());
      net.pins.reserve(static_cast<std::size_t>(degree));
      c.nets.push_back(std::move(net));
      remaining = static_cast<std::size_t>(degree);
      continue;
    }
    if (remaining == 0) r.fail("pin line outside of a NetDegree block");
    auto it = index.find(t[0]);
    if (it == index.end()) r.fail("pin references unknown node '" + t[0] + "'");
    Pin pin;
    pin.block = it->second;
    // name dir [: dx dy]
    if (auto colon = std::find(t.begin(), t.end(), ":"); colon != t.end()) {
      if (std::distance(colon, t.end()) < 3) r.fail("pin offset needs two numbers");
      pin.offset = {r.number(*(colon + 1)), r.number(*(colon + 2))};
    }
    c.nets.back().pins.push_back(pin);
    --remaining;
  }
  if (remaining != 0) throw ParseError(path, r.line(), "last net ended early");
  if (declared >= 0 && static_cast<std::size_t>(declared) != c.nets.size())
    throw ParseError(path, r.line(),
                     "NumNets says " + std::to_string(declared) + " but found " +
                         std::to_string(c.nets.size()));
}

// Lower-left coordinates in file frame; fixed flags from "/FIXED".
void read_pl(const fs::path& path, Circuit& c, const NameIndex& index,
             std::vector<Point>& lower_left, std::vector<bool>& seen) {
  LineReader r(path);
  std::vector<std::string> t;
  while (r.next(t)) {
    if (is_header(t)) continue;
    if (t.size() < 3) r.fail("expected 'name x y : orient'");
    auto it = index.find(t[0]);
    if (it == index.end()) r.fail("placement for unknown node '" + t[0] + "'");
    lower_left[it->second] = {r.number(t[1]), r.number(t[2])};
    seen[it->second] = true;
    for (const auto& tok : t)
      if (tok == "/FIXED" || tok == "/FIXED_NI") c.blocks[it->second].movable = false;
  }
}

void read_scl(const fs::path& path, Circuit& c) {
  LineReader r(path);
  std::vector<std::string> t;
  bool in_row = false;
  RowSpec row;
  double site_spacing = 0.0;
  long num_sites = 0;
  double origin = 0.0;
  while (r.next(t)) {
    if (is_header(t)) continue;
    if (keyed(t, "NumRows")) continue;
    if (t[0] == "CoreRow") {
      if (in_row) r.fail("nested CoreRow");
      in_row = true;
      row = RowSpec{};
      site_spacing = 0.0;
      num_sites = 0;
      origin = 0.0;
      continue;
    }
    if (t[0] == "End") {
      if (!in_row) r.fail("End without CoreRow");
      const double pitch = site_spacing > 0.0 ? site_spacing : row.site_width;
      row.x_begin = origin;
      row.x_end = origin + static_cast<double>(num_sites) * pitch;
      if (!(row.height > 0.0) || !(row.x_end > row.x_begin)) r.fail("degenerate row");
      c.rows.push_back(row);
      in_row = false;
      continue;
    }
    if (!in_row) r.fail("row attribute outside CoreRow");
    if (keyed(t, "Coordinate")) row.y = r.number(t[2]);
    else if (keyed(t, "Height")) row.height = r.number(t[2]);
    else if (keyed(t, "Sitewidth")) row.site_width = r.number(t[2]);
    else if (keyed(t, "Sitespacing")) site_spacing = r.number(t[2]);
    else if (keyed(t, "SubrowOrigin")) {
      origin = r.number(t[2]);
      for (std::size_t k = 3; k + 2 < t.size(); ++k)
        if ((t[k] == "NumSites" || t[k] == "Numsites") && t[k + 1] == ":")
          num_sites = r.integer(t[k + 2]);
    }
    // Siteorient / Sitesymmetry and friends carry no geometry.
  }
  if (in_row) throw ParseError(path, r.line(), "unterminated CoreRow");
}

}  // namespace

Circuit parse_bookshelf(const fs::path& aux_path, const BookshelfOptions& options) {
  if (!fs::exists(aux_path)) throw ParseError("missing file '" + aux_path.string() + "'");
  const AuxFiles files = read_aux(aux_path);

  Circuit c;
  c.name = aux_path.stem().string();
  c.target_density = options.target_density;
  NameIndex index;
  read_nodes(files.nodes, c, index);
  read_nets(files.nets, c, index);

  std::vector<Point> lower_left(c.blocks.size());
  std::vector<bool> seen(c.blocks.size(), false);
  read_pl(files.pl, c, index, lower_left, seen);
  if (!files.scl.empty()) read_scl(files.scl, c);

  Rect box{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
           std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  if (!c.rows.empty()) {
    for (const auto& row : c.rows) {
      box.x_lo = std::min(box.x_lo, row.x_begin);
      box.x_hi = std::max(box.x_hi, row.x_end);
      box.y_lo = std::min(box.y_lo, row.y);
      box.y_hi = std::max(box.y_hi, row.y + row.height);
    }
  } else {
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
      box.x_lo = std::min(box.x_lo, lower_left[i].x);
      box.y_lo = std::min(box.y_lo, lower_left[i].y);
      box.x_hi = std::max(box.x_hi, lower_left[i].x + c.blocks[i].width);
      box.y_hi = std::max(box.y_hi, lower_left[i].y + c.blocks[i].height);
    }
  }
  if (c.blocks.empty() && c.rows.empty()) box = {0.0, 0.0, 1.0, 1.0};
  c.origin = {box.x_lo, box.y_lo};
  c.region = {box.width(), box.height()};
  for (auto& row : c.rows) {
    row.y -= c.origin.y;
    row.x_begin -= c.origin.x;
    row.x_end -= c.origin.x;
  }
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    auto& b = c.blocks[i];
    b.center = {lower_left[i].x - c.origin.x + 0.5 * b.width,
                lower_left[i].y - c.origin.y + 0.5 * b.height};
    if (!seen[i] && b.movable) b.center = {0.5 * c.region.width, 0.5 * c.region.height};
  }
  return c;
}

Placement read_placement(const Circuit& circuit, const fs::path& pl_path) {
  NameIndex index;
  index.reserve(circuit.blocks.size());
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) index.emplace(circuit.blocks[i].name, i);
  Circuit scratch = circuit;
  std::vector<Point> lower_left(circuit.blocks.size());
  std::vector<bool> seen(circuit.blocks.size(), false);
  read_pl(pl_path, scratch, index, lower_left, seen);
  Placement p = circuit.placement();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!seen[i]) continue;
    const auto& b = circuit.blocks[i];
    p[i] = {lower_left[i].x - circuit.origin.x + 0.5 * b.width,
            lower_left[i].y - circuit.origin.y + 0.5 * b.height};
  }
  return p;
}

std::string format_coordinate(double value) {
  if (std::abs(value) < 5e-7) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void write_placement(const Circuit& circuit, const Placement& placement, const fs::path& path) {
  if (placement.size() < circuit.blocks.size())
    throw CircuitError("placement does not cover every block");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "UCLA pl 1.0\n\n";
  for (std::size_t i = 0; i < circuit.blocks.size(); ++i) {
    const auto& b = circuit.blocks[i];
    if (b.is_filler) continue;
    const Point at = b.movable ? placement[i] : b.center;
    out << b.name << '\t' << format_coordinate(at.x - 0.5 * b.width + circuit.origin.x) << '\t'
        << format_coordinate(at.y - 0.5 * b.height + circuit.origin.y) << "\t: N";
    if (!b.movable) out << " /FIXED";
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

fs::path write_bookshelf(const Circuit& circuit, const fs::path& dir, const std::string& stem) {
  fs::create_directories(dir);
  auto open = [&](const std::string& ext) {
    std::ofstream out(dir / (stem + ext));
    if (!out) throw std::runtime_error("cannot write '" + (dir / (stem + ext)).string() + "'");
    return out;
  };
  {
    auto out = open(".aux");
    out << "RowBasedPlacement : " << stem << ".nodes " << stem << ".nets " << stem << ".pl "
        << stem << ".scl\n";
  }
  std::size_t terminals = 0;
  for (const auto& b : circuit.blocks) terminals += (!b.movable && !b.is_filler) ? 1 : 0;
  {
    auto out = open(".nodes");
    std::size_t n = 0;
    for (const auto& b : circuit.blocks) n += b.is_filler ? 0 : 1;
    out << "UCLA nodes 1.0\n\nNumNodes : " << n << "\nNumTerminals : " << terminals << "\n\n";
    for (const auto& b : circuit.blocks) {
      if (b.is_filler) continue;
      out << '\t' << b.name << '\t' << format_coordinate(b.width) << '\t'
          << format_coordinate(b.height);
      if (!b.movable) out << "\tterminal";
      out << '\n';
    }
  }
  {
    auto out = open(".nets");
    out << "UCLA nets 1.0\n\nNumNets : " << circuit.nets.size() << "\nNumPins : "
        << circuit.num_pins() << "\n\n";
    for (const auto& net : circuit.nets) {
      out << "NetDegree : " << net.pins.size() << '\t' << net.name << '\n';
      for (const auto& pin : net.pins)
        out << '\t' << circuit.blocks[pin.block].name << "\tB : " << format_coordinate(pin.offset.x)
            << '\t' << format_coordinate(pin.offset.y) << '\n';
    }
  }
  write_placement(circuit, circuit.placement(), dir / (stem + ".pl"));
  {
    auto out = open(".scl");
    out << "UCLA scl 1.0\n\nNumRows : " << circuit.rows.size() << "\n\n";
    for (const auto& row : circuit.rows) {
      const double length = row.x_end - row.x_begin;
      const auto sites = static_cast<long>(std::max(
          1.0, std::round(length / (row.site_width > 0.0 ? row.site_width : 1.0))));
      const double site = length / static_cast<double>(sites);
      out << "CoreRow Horizontal\n"
          << "  Coordinate    :   " << format_coordinate(row.y + circuit.origin.y) << '\n'
          << "  Height        :   " << format_coordinate(row.height) << '\n'
          << "  Sitewidth     :    " << format_coordinate(site) << '\n'
          << "  Sitespacing   :    " << format_coordinate(site) << '\n'
          << "  Siteorient    :    1\n"
          << "  Sitesymmetry  :    1\n"
          << "  SubrowOrigin  :    " << format_coordinate(row.x_begin + circuit.origin.x)
          << "\tNumSites  :  " << sites << '\n'
          << "End\n";
    }
  }
  return dir / (stem + ".aux");
}

}  // namespace poissonplace
