#include "repwitness/homology.hpp"

#include <algorithm>
#include <utility>

#include "repwitness/errors.hpp"
#include "repwitness/liegrp.hpp"

namespace repwitness {

Presentation::Presentation(std::size_t generators, std::vector<Word> rels, std::vector<std::string> generator_names)
    : n(generators), relators(std::move(rels)), names(std::move(generator_names)) {
  if (n == 0) throw DomainError("Presentation: need at least one generator");
  if (!names.empty() && names.size() != n) throw DomainError("Presentation: name count differs from generator count");
  for (const Word& w : relators)
    if (w.rank() != n) throw DomainError("Presentation: relator over the wrong free group");
}

std::vector<std::string> Presentation::generator_names() const {
  return names.empty() ? default_generator_names(n) : names;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Row Hermite normal form of a full-row-rank matrix (row operations only).
IntMatrix hermite_rows(IntMatrix a) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    for (;;) {
      std::size_t best = a.rows();
      for (std::size_t i = row; i < a.rows(); ++i)
        if (a(i, col) != 0 && (best == a.rows() || abs(a(i, col)) < abs(a(best, col)))) best = i;
      if (best == a.rows()) break;
      a.swap_rows(row, best);
      bool clear = true;
      for (std::size_t i = row + 1; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        a.add_row_multiple(i, row, -(a(i, col) / a(row, col)));
        if (a(i, col) != 0) clear = false;
      }
      if (clear) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) a.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) a.add_row_multiple(i, row, -floor_div(a(i, col), a(row, col)));
    ++row;
  }
  return a;
}

IntMatrix rows_from(const IntMatrix& m, std::size_t first) {
  IntMatrix out(m.rows() - first, m.cols());
  for (std::size_t i = first; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i - first, j) = m(i, j);
  return out;
}

struct ColumnOp {
  enum class Kind { add, swap, negate };
  Kind kind;
  std::size_t dst;
  std::size_t src;
  Integer factor;

  ColumnOp inverse() const { return kind == Kind::add ? ColumnOp{kind, dst, src, -factor} : *this; }
};

// Column operations F_1..F_k with M F_1 ... F_k = I.
std::vector<ColumnOp> reduce_columns_to_identity(IntMatrix m) {
  if (m.rows() != m.cols()) throw DomainError("realize_unimodular: matrix is not square");
  const std::size_t s = m.rows();
  std::vector<ColumnOp> ops;
  auto apply = [&](const ColumnOp& op) {
    switch (op.kind) {
      case ColumnOp::Kind::add: m.add_col_multiple(op.dst, op.src, op.factor); break;
      case ColumnOp::Kind::swap: m.swap_cols(op.dst, op.src); break;
      case ColumnOp::Kind::negate: m.negate_col(op.dst); break;
    }
    ops.push_back(op);
  };

  for (std::size_t t = 0; t < s; ++t) {
    for (;;) {
      std::size_t best = s;
      for (std::size_t j = t; j < s; ++j)
        if (m(t, j) != 0 && (best == s || abs(m(t, j)) < abs(m(t, best)))) best = j;
      if (best == s) throw DomainError("realize_unimodular: matrix is singular");
      if (best != t) apply({ColumnOp::Kind::swap, t, best, 0});
      bool clear = true;
      for (std::size_t j = t + 1; j < s; ++j) {
        if (m(t, j) == 0) continue;
        apply({ColumnOp::Kind::add, j, t, -(m(t, j) / m(t, t))});
        if (m(t, j) != 0) clear = false;
      }
      if (clear) break;
    }
    if (m(t, t) == -1) apply({ColumnOp::Kind::negate, t, t, 0});
    if (m(t, t) != 1) throw DomainError("realize_unimodular: determinant is not +-1");
  }
  // Now lower unitriangular; clear below the diagonal, last columns first.
  for (std::size_t j = s; j-- > 0;)
    for (std::size_t i = j + 1; i < s; ++i)
      if (m(i, j) != 0) apply({ColumnOp::Kind::add, j, i, -m(i, j)});
  return ops;
}

void apply_to_words(std::vector<Word>& tuple, const ColumnOp& op) {
  switch (op.kind) {
    case ColumnOp::Kind::add:
      tuple[op.dst] = tuple[op.dst] * tuple[op.src].power(static_cast<std::int64_t>(op.factor));
      break;
    case ColumnOp::Kind::swap: std::swap(tuple[op.dst], tuple[op.src]); break;
    case ColumnOp::Kind::negate: tuple[op.dst] = tuple[op.dst].inverse(); break;
  }
}

std::vector<Word> identity_tuple(std::size_t s) {
  std::vector<Word> out;
  for (std::size_t i = 1; i <= s; ++i) out.push_back(Word::generator(s, i));
  return out;
}

std::size_t rational_rank(std::size_t rows, const std::vector<IntVector>& columns) {
  if (columns.empty()) return 0;
  return smith_normal_form(IntMatrix::from_columns(rows, columns)).rank;
}

void require_rank(const std::vector<Word>& words, std::size_t n, const char* who) {
  for (const Word& w : words)
    if (w.rank() != n) throw DomainError(std::string(who) + ": word over the wrong free group");
}

}  // namespace

HomologyProfile analyze(const Presentation& p) {
  HomologyProfile h;
  std::vector<IntVector> cols;
  for (const Word& w : p.relators) cols.push_back(abelianize(w));
  h.boundary = IntMatrix::from_columns(p.n, cols);
  h.snf = smith_normal_form(h.boundary);
  h.b1 = p.n - h.snf.rank;
  h.b2 = p.relators.size() - h.snf.rank;
  h.torsion_order = h.snf.torsion_order();
  // In the coordinates y = U x the image of the boundary is spanned by d_i e_i,
  // so rows rank..n-1 of U project onto the free part of the cokernel.
  h.free_quotient_map = hermite_rows(rows_from(h.snf.U, h.snf.rank));
  return h;
}

std::vector<std::string> quotient_basis_labels(const Presentation& p, const HomologyProfile& profile) {
  const auto names = p.generator_names();
  const IntMatrix& q = profile.free_quotient_map;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < q.rows(); ++j) {
    std::string label = "a" + std::to_string(j + 1);
    for (std::size_t g = 0; g < q.cols(); ++g) {
      bool unit = true;
      for (std::size_t i = 0; i < q.rows() && unit; ++i) unit = q(i, g) == (i == j ? 1 : 0);
      if (unit) {
        label = names[g];
        break;
      }
    }
    labels.push_back(label);
  }
  return labels;
}

SigmaClass sigma_generator(const HomologyProfile& profile) {
  if (profile.b2 != 1) throw DomainError("sigma_generator: b2 = " + std::to_string(profile.b2) + ", need 1");
  auto basis = kernel_basis(profile.boundary);
  if (basis.size() != 1) throw InternalError("sigma_generator: kernel rank disagrees with b2");
  IntVector v = std::move(basis.front());
  auto lead = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
  if (lead != v.end() && *lead < 0)
    for (auto& x : v) x = -x;
  return {v};
}

std::vector<std::vector<int>> mod2_cycle_basis(const HomologyProfile& profile) {
  const IntMatrix& d = profile.boundary;
  const std::size_t n = d.rows(), s = d.cols();
  std::vector<std::vector<int>> a(n, std::vector<int>(s));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < s; ++j) a[i][j] = static_cast<int>(abs(d(i, j)) % 2);

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < s && row < n; ++col) {
    std::size_t r = row;
    while (r < n && a[r][col] == 0) ++r;
    if (r == n) continue;
    std::swap(a[r], a[row]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != row && a[i][col])
        for (std::size_t j = 0; j < s; ++j) a[i][j] ^= a[row][j];
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<std::vector<int>> basis;
  for (std::size_t f = 0; f < s; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
    std::vector<int> v(s);
    v[f] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = a[k][f];
    basis.push_back(v);
  }
  return basis;
}

NielsenRealization realize_unimodular(const IntMatrix& m) {
  const auto ops = reduce_columns_to_identity(m);
  const std::size_t s = m.rows();
  NielsenRealization r;
  r.inverse_images = identity_tuple(s);
  for (const auto& op : ops) apply_to_words(r.inverse_images, op);
  r.images = identity_tuple(s);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) apply_to_words(r.images, it->inverse());

  const auto id = identity_tuple(s);
  for (std::size_t j = 0; j < s; ++j) {
    if (substitute(r.images[j], r.inverse_images) != id[j] || substitute(r.inverse_images[j], r.images) != id[j])
      throw InternalError("realize_unimodular: Nielsen moves do not compose to the identity");
    if (abelianize(r.images[j]) != m.column(j))
      throw InternalError("realize_unimodular: automorphism does not abelianize to M");
  }
  return r;
}

IntMatrix complete_to_unimodular(const IntVector& v) {
  const std::size_t s = v.size();
  if (s == 0) throw DomainError("complete_to_unimodular: empty vector");
  const SnfResult snf = smith_normal_form(IntMatrix::from_columns(s, {v}));
  if (snf.rank != 1 || snf.divisors.front() != 1) throw DomainError("complete_to_unimodular: vector is not primitive");
  // U v V = e_1 with V = (+-1), so v = V U^-1 e_1.
  IntMatrix u_inv = IntMatrix::identity(s);
  for (const auto& op : reduce_columns_to_identity(snf.U)) {
    switch (op.kind) {
      case ColumnOp::Kind::add: u_inv.add_col_multiple(op.dst, op.src, op.factor); break;
      case ColumnOp::Kind::swap: u_inv.swap_cols(op.dst, op.src); break;
      case ColumnOp::Kind::negate: u_inv.negate_col(op.dst); break;
    }
  }
  if (snf.V(0, 0) < 0) u_inv.negate_col(0);
  if (u_inv.column(0) != v) throw InternalError("complete_to_unimodular: first column mismatch");
  return u_inv;
}

MuForm mu_form(const Presentation& p, const HomologyProfile& profile, const SigmaClass& sigma) {
  if (profile.b2 != 1) throw DomainError("mu_form: b2 = " + std::to_string(profile.b2) + ", need 1");
  const NielsenRealization alpha = realize_unimodular(complete_to_unimodular(sigma.coefficients));
  const Word w0 = substitute(alpha.images.front(), p.relators);
  return {push_forward(lambda_form(w0), profile.free_quotient_map)};
}

Thm1Check check_thm1(const Presentation& p, const std::vector<Word>& gammas, unsigned rank_m) {
  require_rank(gammas, p.n, "check_thm1");
  Thm1Check c;
  c.profile = analyze(p);
  c.given_gammas = gammas.size();
  c.gammas = gammas;
  const auto& h = c.profile;
  if (h.b2 != 0) {
    c.reason = "b2 = " + std::to_string(h.b2) + " (need 0)";
    return c;
  }
  std::vector<IntVector> images;
  for (const Word& g : gammas) images.push_back(h.free_quotient_map * abelianize(g));
  if (gammas.size() > h.b1 || rational_rank(h.b1, images) != gammas.size()) {
    c.reason = "gammas are linearly dependent in H1(X;Q)";
    return c;
  }
  for (std::size_t g = 1; g <= p.n && images.size() < h.b1; ++g) {
    IntVector v = h.free_quotient_map * abelianize(Word::generator(p.n, g));
    images.push_back(v);
    if (rational_rank(h.b1, images) == images.size()) c.gammas.push_back(Word::generator(p.n, g));
    else images.pop_back();
  }
  if (images.size() != h.b1) throw InternalError("check_thm1: generators do not span H1(X;Q)");

  c.holds = true;
  c.reason = "b2 = 0 and gammas independent";
  const Integer det = h.b1 == 0 ? Integer(1) : determinant(IntMatrix::from_columns(h.b1, images));
  c.predicted_degree = boost::multiprecision::pow(Integer(h.torsion_order * det), rank_m);
  std::vector<Word> words = p.relators;
  words.insert(words.end(), c.gammas.begin(), c.gammas.end());
  c.word_map_degree = degree_formula(words, rank_m);
  return c;
}

Thm2Check check_thm2(const Presentation& p, const std::vector<Word>& gammas) {
  require_rank(gammas, p.n, "check_thm2");
  Thm2Check c;
  c.profile = analyze(p);
  c.given_gammas = gammas.size();
  c.gammas = gammas;
  const auto& h = c.profile;
  if (h.b2 != 1) {
    c.reason = "b2 = " + std::to_string(h.b2) + " (need 1)";
    return c;
  }
  c.sigma = sigma_generator(h);
  c.mu = mu_form(p, h, *c.sigma);
  if (h.b1 < 2 || gammas.size() + 2 > h.b1) {
    c.wedge = ExteriorElement(gammas.size() + 2, h.b1);
    c.reason = "mu ^ gammas has degree " + std::to_string(gammas.size() + 2) + " > b1 = " + std::to_string(h.b1);
    return c;
  }
  ExteriorElement omega = c.mu->mu;
  for (const Word& g : gammas)
    omega = wedge(omega, ExteriorElement::vector(h.free_quotient_map * abelianize(g)));
  c.wedge = omega;
  if (omega.is_zero()) {
    c.reason = "mu ^ gammas vanishes";
    return c;
  }
  for (std::size_t g = 1; g <= p.n && omega.degree() < h.b1; ++g) {
    ExteriorElement next =
        wedge(omega, ExteriorElement::vector(h.free_quotient_map * abelianize(Word::generator(p.n, g))));
    if (next.is_zero()) continue;
    omega = std::move(next);
    c.gammas.push_back(Word::generator(p.n, g));
  }
  if (omega.degree() != h.b1) throw InternalError("check_thm2: could not complete gammas to top degree");
  c.holds = true;
  c.reason = "b2 = 1 and mu ^ gammas != 0";
  c.kappa_prediction = h.torsion_order * top_det(omega);
  return c;
}

std::vector<Word> Thm2Constraints::rest_words() const {
  std::vector<Word> out(v_words.begin() + 1, v_words.end());
  out.insert(out.end(), gammas.begin(), gammas.end());
  return out;
}

Thm2Constraints build_thm2_constraints(const Presentation& p, const Thm2Check& check,
                                       const std::optional<std::vector<int>>& eta) {
  if (!check.holds) throw HypothesisError("build_thm2_constraints: hypotheses fail: " + check.reason);
  const IntVector& sigma = check.sigma->coefficients;
  const std::size_t s = p.relators.size();

  Thm2Constraints c;
  if (eta) {
    if (eta->size() != s) throw DomainError("eta must have one entry per relator");
    Integer pairing = 0;
    for (std::size_t i = 0; i < s; ++i) {
      if ((*eta)[i] != 0 && (*eta)[i] != 1) throw DomainError("eta entries must be 0 or 1");
      pairing += sigma[i] * (*eta)[i];
    }
    if (pairing % 2 == 0) throw DomainError("eta pairs trivially with sigma");
    c.eta = *eta;
  } else {
    c.eta.assign(s, 0);
    std::size_t last_odd = s;
    for (std::size_t i = 0; i < s; ++i)
      if (sigma[i] % 2 != 0) last_odd = i;
    if (last_odd == s) throw InternalError("build_thm2_constraints: sigma is not primitive");
    c.eta[last_odd] = 1;
  }

  c.relator_change = complete_to_unimodular(sigma);
  c.automorphism = realize_unimodular(c.relator_change);
  for (const Word& a : c.automorphism.images) c.v_words.push_back(substitute(a, p.relators));
  for (std::size_t i = 0; i < s; ++i)
    if (substitute(c.automorphism.inverse_images[i], c.v_words) != p.relators[i])
      throw InternalError("build_thm2_constraints: relator not recovered from the new relators");

  for (std::size_t j = 0; j < s; ++j) {
    Integer sum = 0;
    for (std::size_t i = 0; i < s; ++i) sum += c.relator_change(i, j) * c.eta[i];
    c.epsilons.push_back(sum % 2 == 0 ? 1 : -1);
  }
  if (c.epsilons.front() != -1) throw InternalError("build_thm2_constraints: eps_0 != -1");

  c.commutator_pairs = express_as_commutators(c.v_words.front());
  if (product_of_commutators(c.commutator_pairs, p.n) != c.v_words.front())
    throw InternalError("build_thm2_constraints: commutator decomposition does not multiply out");
  c.gammas = check.gammas;
  return c;
}

Integer kappa(const std::vector<CommutatorPair>& v0_pairs, const std::vector<Word>& v_rest, std::size_t n) {
  if (n < 2 || v_rest.size() != n - 2)
    throw DomainError("kappa: need n - 2 = " + std::to_string(n < 2 ? 0 : n - 2) + " further words, got " +
                      std::to_string(v_rest.size()));
  require_rank(v_rest, n, "kappa");
  for (const auto& pr : v0_pairs)
    if (pr.first.rank() != n || pr.second.rank() != n) throw DomainError("kappa: word over the wrong free group");
  ExteriorElement omega = lambda_of_pairs(v0_pairs, n);
  for (const Word& v : v_rest) {
    if (omega.is_zero()) return 0;
    omega = wedge(omega, ExteriorElement::vector(abelianize(v)));
  }
  return top_det(omega);
}

}  // namespace repwitness
