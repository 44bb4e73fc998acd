#pragma once

// Numerical witnesses: solve psi(v_i) = t_i over Sp(1)^n by random-restart
// Gauss-Newton, the pipelines for both existence theorems, and the checks run
// on their output (second Stiefel-Whitney class, maximal torus).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repwitness/homology.hpp"
#include "repwitness/liegrp.hpp"
#include "repwitness/words.hpp"

namespace repwitness {

struct Constraint {
  Word word;
  Quat target;
};

enum class SystemOrigin { thm1, thm2, raw };

std::string to_string(SystemOrigin origin);

struct ConstraintSystem {
  std::size_t n = 0;
  std::vector<Constraint> constraints;
  SystemOrigin origin = SystemOrigin::raw;
};

struct SolverOptions {
  std::size_t restarts = 200;
  std::size_t iterations = 100;
  /// Success when every |psi(v_i) - t_i| is below this.
  double tolerance = kTolerances.solve_residual;
};

struct Witness {
  QTuple rep;
  /// |word_eval(v_i, rep) - t_i|, recomputed from scratch.
  std::vector<double> residuals;
  /// 1-based index of the restart that succeeded.
  std::size_t restarts_used = 0;
  std::uint64_t seed = 0;

  double max_residual() const;
};

struct SolveResult {
  std::optional<Witness> witness;
  /// Smallest max-residual seen over all restarts (meaningful on failure).
  double best_residual = 0.0;
  std::size_t restarts_used = 0;

  bool success() const noexcept { return witness.has_value(); }
};

/// Deterministic in (system, options, seed). Failure after the budget is not a
/// proof that no solution exists. Throws DomainError on a malformed system.
SolveResult solve(const ConstraintSystem& system, const SolverOptions& options, std::uint64_t seed);

struct Thm1Outcome {
  Thm1Check check;
  ConstraintSystem system;
  SolveResult result;
};

/// psi(w_i) = 1 for every relator and psi(gamma_i) = t_i.
/// Throws HypothesisError if check_thm1 fails.
Thm1Outcome solve_thm1(const Presentation& p, const std::vector<Word>& gammas, const std::vector<Quat>& targets,
                       const SolverOptions& options, std::uint64_t seed);

/// SO(3) targets: solved in Sp(1), trying sign patterns of the target lifts
/// until one system converges.
Thm1Outcome solve_thm1(const Presentation& p, const std::vector<Word>& gammas, const std::vector<Rot3>& targets,
                       const SolverOptions& options, std::uint64_t seed);

struct W2Report {
  /// delta(psi(w_i)) in {0, 1} per relator, for the lifts used.
  std::vector<int> lift_signs;
  /// The queried mod-2 cycles and <w2(phi), c> for each.
  std::vector<std::vector<int>> cycles;
  std::vector<int> pairings;
  /// lift_signs equal the requested eta, i.e. w2(phi) is the requested class.
  bool matches_eta = false;
};

struct TorusReport {
  bool in_maximal_torus = false;
  bool images_commute = false;
  /// Set when every non-identity image is a rotation by pi: whether their axes
  /// are pairwise orthogonal or parallel (the Klein four-group configuration).
  std::optional<bool> pi_rotation_axes_orthogonal;
};

struct Thm2Outcome {
  Thm2Check check;
  std::optional<Thm2Constraints> constraints;
  ConstraintSystem system;
  SolveResult result;
  std::optional<W2Report> w2;
  std::optional<TorusReport> torus;
};

/// psi(w'_j) = eps_j and psi(z_i) = 1 for the constraints built from the
/// presentation; on success also evaluates w2 on sigma and on a basis of
/// mod-2 cycles, and the maximal torus test. Throws HypothesisError if
/// check_thm2 fails.
Thm2Outcome solve_thm2(const Presentation& p, const std::vector<Word>& gammas,
                       const std::optional<std::vector<int>>& eta, const SolverOptions& options, std::uint64_t seed);

/// <w2(phi), [c]> = sum_i c_i delta(psi(w_i)) computed from the given Sp(1)
/// lifts of the generator images. Throws DomainError if c is not a mod-2 cycle
/// or some psi(w_i) is not within the snap tolerance of +-1.
int w2_evaluate(const Presentation& p, const QTuple& lifts, const std::vector<int>& cycle);

/// Same, for SO(3) images; each generator is lifted to Sp(1) first.
int w2_evaluate(const Presentation& p, const std::vector<Rot3>& rep, const std::vector<int>& cycle);

TorusReport torus_report(const std::vector<Rot3>& rep);

/// True iff the generator images do not all lie in one maximal torus (circle of
/// rotations about a common axis) of SO(3).
bool nonabelian_check(const std::vector<Rot3>& rep);

std::vector<Rot3> to_so3(const QTuple& rep);

}  // namespace repwitness
