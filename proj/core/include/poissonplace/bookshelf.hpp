#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "poissonplace/circuit.hpp"

namespace poissonplace {

/// Raised for missing files, malformed lines and dangling references.
/// The message carries "file:line: " when a location is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::filesystem::path& file, std::size_t line, const std::string& what);
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  const std::filesystem::path& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::filesystem::path file_;
  std::size_t line_ = 0;
};

struct BookshelfOptions {
  double target_density = 1.0;
};

/// Reads an ISPD 2005/2006 style Bookshelf benchmark from its .aux file.
/// Terminals become fixed blocks, coordinates are translated so the row
/// bounding box starts at (0, 0), and block positions are stored as centers.
Circuit parse_bookshelf(const std::filesystem::path& aux_path, const BookshelfOptions& options = {});

/// Reads a .pl file against an already parsed circuit and returns centers in
/// region coordinates. Blocks not listed keep their current position.
Placement read_placement(const Circuit& circuit, const std::filesystem::path& pl_path);

/// Writes non-filler blocks as a Bookshelf .pl file in the original
/// coordinate frame. Fixed blocks carry the "/FIXED" suffix.
void write_placement(const Circuit& circuit, const Placement& placement,
                     const std::filesystem::path& path);

/// Writes a complete benchmark (.aux/.nodes/.nets/.pl/.scl) named `stem` in `dir`.
/// Returns the path of the .aux file.
std::filesystem::path write_bookshelf(const Circuit& circuit, const std::filesystem::path& dir,
                                      const std::string& stem);

/// Shortest decimal form with at most six fractional digits.
std::string format_coordinate(double value);

}  // namespace poissonplace
