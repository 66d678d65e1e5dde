#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "poissonplace/cli/pipeline.hpp"

namespace poissonplace::cli {

struct CommonOptions {
  InputSpec input;
  PlacerConfig config;
  std::filesystem::path out_dir = ".";
  bool dump_coeffs = false;
};

struct FieldOptions {
  std::vector<std::string> diff;  // two solver names, or empty
};

struct CompareOptions {
  std::vector<std::filesystem::path> inputs;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> solvers{"analytic-fast", "spectral-baseline"};
  std::size_t threads = 1;
};

/// Each command writes its files under out_dir and a summary to `out`.
/// They throw on invalid input; run() turns that into a nonzero exit code.
RunReport cmd_place(const CommonOptions& options, std::ostream& out);
void cmd_field(const CommonOptions& options, const FieldOptions& field, std::ostream& out);
void cmd_compare(const CommonOptions& options, const CompareOptions& compare, std::ostream& out);

/// Thread count from POISSONPLACE_THREADS, at least 1.
std::size_t threads_from_env();

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace poissonplace::cli
