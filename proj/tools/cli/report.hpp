#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace repwitness::cli {

struct ProfileInfo {
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  std::string torsion_order;
  bool operator==(const ProfileInfo&) const = default;
};

struct MuTerm {
  std::string coefficient;
  std::size_t p = 0;  // 1-based basis indices, p < q
  std::size_t q = 0;
  bool operator==(const MuTerm&) const = default;
};

struct MuInfo {
  std::vector<std::string> basis;
  std::vector<MuTerm> terms;
  std::string text;
  bool operator==(const MuInfo&) const = default;
};

struct DecisionInfo {
  int theorem = 0;
  bool holds = false;
  std::string reason;
  bool operator==(const DecisionInfo&) const = default;
};

struct PredictionInfo {
  std::vector<std::string> gammas;  // as used, including completions
  std::size_t given_gammas = 0;
  std::optional<std::string> degree;
  std::optional<std::string> word_map_degree;
  std::optional<std::string> kappa;
  std::optional<std::string> kappa_constraints;
  std::optional<std::string> wedge;
  bool operator==(const PredictionInfo&) const = default;
};

struct ConstraintInfo {
  std::string word;
  std::array<double, 4> target{};
  bool operator==(const ConstraintInfo&) const = default;
};

struct WitnessInfo {
  std::string origin;
  std::vector<ConstraintInfo> constraints;
  bool success = false;
  std::vector<std::array<double, 4>> rep;  // rounded to 12 significant digits
  std::vector<double> residuals;
  double max_residual = 0.0;
  double best_residual = 0.0;
  std::size_t restarts_used = 0;
  bool operator==(const WitnessInfo&) const = default;
};

struct W2Info {
  std::vector<int> eta;
  std::vector<int> lift_signs;
  bool matches_eta = false;
  std::vector<std::vector<int>> cycles;
  std::vector<int> pairings;
  bool operator==(const W2Info&) const = default;
};

struct TorusInfo {
  bool nonabelian = false;
  bool in_maximal_torus = false;
  bool images_commute = false;
  std::optional<bool> pi_rotation_axes_orthogonal;
  bool operator==(const TorusInfo&) const = default;
};

struct EmpiricalInfo {
  std::optional<std::int64_t> degree;
  std::array<double, 4> target{};
  bool target_resampled = false;
  std::size_t solutions = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t starts = 0;
  std::string verdict;  // AGREE, DISAGREE or INCONCLUSIVE
  bool operator==(const EmpiricalInfo&) const = default;
};

struct DegreeInfo {
  std::vector<std::string> words;
  unsigned rank_m = 1;
  std::string formula;
  std::optional<EmpiricalInfo> empirical;
  bool operator==(const DegreeInfo&) const = default;
};

struct Report {
  std::string command;
  std::string input;
  /// Effective options, echoed for reproducibility.
  std::map<std::string, std::string> flags;
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  std::optional<ProfileInfo> profile;
  std::optional<std::vector<std::string>> sigma;
  std::optional<MuInfo> mu;
  std::optional<DecisionInfo> decision;
  std::optional<PredictionInfo> prediction;
  std::optional<WitnessInfo> witness;
  std::optional<W2Info> w2;
  std::optional<TorusInfo> torus;
  std::optional<DegreeInfo> degree;
  int exit_code = 0;
  /// Wall-clock time; text output only, so JSON stays reproducible.
  double elapsed_seconds = 0.0;

  /// Ignores elapsed_seconds.
  bool operator==(const Report& other) const;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string to_text(const Report& r);

/// Rounds to 12 significant digits.
double round12(double x);

}  // namespace repwitness::cli
