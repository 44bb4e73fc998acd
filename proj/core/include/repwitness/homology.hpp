#pragma once

// Homological invariants of the presentation 2-complex of <x_1..x_n | w_1..w_s>
// and the integer certificates for the two representation existence theorems.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "repwitness/words.hpp"
#include "repwitness/zlinalg.hpp"

namespace repwitness {

struct Presentation {
  std::size_t n = 0;
  std::vector<Word> relators;
  /// Optional generator names; empty means x1..xn.
  std::vector<std::string> names;

  Presentation() = default;
  Presentation(std::size_t generators, std::vector<Word> rels, std::vector<std::string> generator_names = {});

  std::size_t relator_count() const noexcept { return relators.size(); }
  std::vector<std::string> generator_names() const;
};

struct HomologyProfile {
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  Integer torsion_order = 1;
  /// n x s; column i is abelianize(relator i).
  IntMatrix boundary;
  SnfResult snf;
  /// b1 x n; sends Z^n = H_1(1-skeleton) onto the free part A0 = H_1 / torsion.
  /// Rows are in Hermite normal form, so the basis of A0 is canonical.
  IntMatrix free_quotient_map;
};

HomologyProfile analyze(const Presentation& p);

/// Names for the basis of A0: a generator's name when that generator maps to
/// the basis vector, "a<j>" otherwise.
std::vector<std::string> quotient_basis_labels(const Presentation& p, const HomologyProfile& profile);

/// Generator of H_2 = ker(boundary) when b2 = 1, first nonzero coefficient positive.
struct SigmaClass {
  IntVector coefficients;
};

SigmaClass sigma_generator(const HomologyProfile& profile);

/// All mod-2 2-cycles are spanned by these 0/1 vectors over the relators.
std::vector<std::vector<int>> mod2_cycle_basis(const HomologyProfile& profile);

/// A sequence of Nielsen moves realizing a unimodular matrix M: alpha(y_j) has
/// abelianization equal to column j of M.
struct NielsenRealization {
  std::vector<Word> images;          // alpha(y_1), ..., alpha(y_k)
  std::vector<Word> inverse_images;  // alpha^-1(y_1), ...
};

/// Throws DomainError when M is not square with determinant +-1. The result is
/// self-checked: alpha o alpha^-1 and alpha^-1 o alpha are both the identity.
NielsenRealization realize_unimodular(const IntMatrix& m);

/// Unimodular M whose first column is the primitive vector v.
IntMatrix complete_to_unimodular(const IntVector& v);

struct MuForm {
  /// Degree-2 element over A0 (rank b1).
  ExteriorElement mu;
};

MuForm mu_form(const Presentation& p, const HomologyProfile& profile, const SigmaClass& sigma);

struct Thm1Check {
  bool holds = false;
  std::string reason;
  HomologyProfile profile;
  /// The given gammas followed by generators appended to reach rank b1.
  std::vector<Word> gammas;
  std::size_t given_gammas = 0;
  /// (|T| det(gamma-bar_1, ..., gamma-bar_b1))^m, in the A0 basis.
  std::optional<Integer> predicted_degree;
  /// det(w-bar_1, ..., w-bar_s, z-bar_1, ..., z-bar_r)^m for the word map on G^n.
  std::optional<Integer> word_map_degree;
};

/// b2 = 0 and the gammas are linearly independent in H_1 tensor Q.
Thm1Check check_thm1(const Presentation& p, const std::vector<Word>& gammas, unsigned rank_m = 1);

struct Thm2Check {
  bool holds = false;
  std::string reason;
  HomologyProfile profile;
  std::optional<SigmaClass> sigma;
  std::optional<MuForm> mu;
  /// mu ^ gamma-bar_1 ^ ... for the given gammas (degree given + 2).
  std::optional<ExteriorElement> wedge;
  /// The given gammas followed by generators appended to reach b1 - 2.
  std::vector<Word> gammas;
  std::size_t given_gammas = 0;
  /// |T| det(mu ^ gamma-bar_1 ^ ... ^ gamma-bar_{b1-2}).
  std::optional<Integer> kappa_prediction;
};

/// b2 = 1 and mu ^ gamma-bar_1 ^ ... != 0.
Thm2Check check_thm2(const Presentation& p, const std::vector<Word>& gammas);

struct Thm2Constraints {
  /// M in GL_s(Z) with first column sigma.
  IntMatrix relator_change;
  NielsenRealization automorphism;
  /// w'_0, ..., w'_{s-1}: the new relators p(alpha(y_j)).
  std::vector<Word> v_words;
  /// eps_j = (-1)^(sum_i m_ij eta_i); eps_0 = -1.
  std::vector<int> epsilons;
  /// w'_0 = prod [first, second].
  std::vector<CommutatorPair> commutator_pairs;
  std::vector<int> eta;
  /// z_1, ..., z_{b1-2} (completed gammas); their target is 1.
  std::vector<Word> gammas;

  /// (w'_1, ..., w'_{s-1}, z_1, ..., z_{b1-2}).
  std::vector<Word> rest_words() const;
};

/// Throws HypothesisError if check_thm2 fails, DomainError on a bad eta
/// (wrong length, or sum sigma_i eta_i even). Without eta, the lexicographically
/// least valid one is used.
Thm2Constraints build_thm2_constraints(const Presentation& p, const Thm2Check& check,
                                       const std::optional<std::vector<int>>& eta);

/// det(lambda ^ v-bar_1 ^ ... ^ v-bar_{n-2}) with lambda = sum u-bar ^ u'-bar.
Integer kappa(const std::vector<CommutatorPair>& v0_pairs, const std::vector<Word>& v_rest, std::size_t n);

}  // namespace repwitness
