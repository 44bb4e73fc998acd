#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/report.hpp"

namespace repwitness::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,
  kParseError = 2,
  kIoError = 3,
  kPrecondition = 4,
};

struct AnalyzeArgs {
  std::string path;
  std::uint64_t max_letters = 1'000'000;
};

struct CheckArgs {
  std::string path;
  int theorem = 2;
  unsigned rank_m = 1;
  std::uint64_t max_letters = 1'000'000;
};

struct SolveArgs {
  std::string path;
  std::optional<int> theorem;
  bool raw = false;
  /// Unset: the file's seed, else 0.
  std::optional<std::uint64_t> seed;
  /// Unset: the file's budget, else the solver default.
  std::optional<std::size_t> budget;
  std::optional<std::size_t> iterations;
  std::optional<double> tol;
  std::uint64_t max_letters = 1'000'000;
};

struct DegreeArgs {
  /// Each entry may hold several comma-separated words.
  std::vector<std::string> words;
  unsigned rank_m = 1;
  bool verify = false;
  std::size_t starts = 2000;
  std::uint64_t seed = 0;
  std::uint64_t max_letters = 1'000'000;
};

/// Build the report; exceptions propagate. report.exit_code holds the status.
Report analyze_report(const AnalyzeArgs& args);
Report check_report(const CheckArgs& args);
Report solve_report(const SolveArgs& args);
Report degree_report(const DegreeArgs& args);

/// Splits at commas outside brackets and parentheses.
std::vector<std::string> split_words(const std::string& text);

/// Each writes the text or JSON report to `out`, diagnostics to `err`, and
/// maps exceptions onto exit codes.
int cmd_analyze(const AnalyzeArgs& args, bool json, std::ostream& out, std::ostream& err);
int cmd_check(const CheckArgs& args, bool json, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveArgs& args, bool json, std::ostream& out, std::ostream& err);
int cmd_degree(const DegreeArgs& args, bool json, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] included).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace repwitness::cli
