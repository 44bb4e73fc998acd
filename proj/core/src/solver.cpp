#include "repwitness/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "repwitness/errors.hpp"

namespace repwitness {

std::string to_string(SystemOrigin origin) {
  switch (origin) {
    case SystemOrigin::thm1: return "thm1";
    case SystemOrigin::thm2: return "thm2";
    case SystemOrigin::raw: return "raw";
  }
  return "raw";
}

double Witness::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> residuals(const ConstraintSystem& sys, const QTuple& g) {
  std::vector<double> r;
  r.reserve(sys.constraints.size());
  for (const auto& c : sys.constraints) r.push_back(distance(word_eval(c.word, g), c.target));
  return r;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

double merit(const ConstraintSystem& sys, const QTuple& g) {
  double f = 0.0;
  for (const auto& c : sys.constraints) {
    const double d = distance(word_eval(c.word, g), c.target);
    f += d * d;
  }
  return f;
}

QTuple step(const QTuple& g, const Eigen::VectorXd& delta, double scale) {
  QTuple out(g.size());
  for (std::size_t p = 0; p < g.size(); ++p)
    out[p] = (exp_map(scale * delta.segment<3>(3 * static_cast<Eigen::Index>(p))) * g[p]).normalized();
  return out;
}

// Gauss-Newton direction: least-squares, minimum-norm solution of J delta = b with
// b_i = log(t_i psi_i^-1), the right-trivialized error of constraint i.
Eigen::VectorXd gauss_newton_direction(const ConstraintSystem& sys, const QTuple& g) {
  const auto m = static_cast<Eigen::Index>(sys.constraints.size());
  Eigen::MatrixXd jac(3 * m, 3 * static_cast<Eigen::Index>(g.size()));
  Eigen::VectorXd rhs(3 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& c = sys.constraints[static_cast<std::size_t>(i)];
    jac.middleRows(3 * i, 3) = word_jacobian(c.word, g);
    rhs.segment<3>(3 * i) = log_map(c.target * word_eval(c.word, g).conj());
  }
  Eigen::VectorXd delta = jac.completeOrthogonalDecomposition().solve(rhs);
  if (!delta.allFinite()) return Eigen::VectorXd::Zero(delta.size());
  double biggest = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p)
    biggest = std::max(biggest, delta.segment<3>(3 * static_cast<Eigen::Index>(p)).norm());
  constexpr double kMaxRotation = 1.5;
  if (biggest > kMaxRotation) delta *= kMaxRotation / biggest;
  return delta;
}

struct RestartOutcome {
  QTuple point;
  double max_residual;
};

RestartOutcome run_restart(const ConstraintSystem& sys, const SolverOptions& opt, std::mt19937_64& rng) {
  QTuple g(sys.n);
  for (auto& q : g) q = random_unit_quat(rng);
  double f = merit(sys, g);
  for (std::size_t it = 0; it < opt.iterations; ++it) {
    if (max_of(residuals(sys, g)) < opt.tolerance) {
      // one polish step, kept only if it helps
      const QTuple polished = step(g, gauss_newton_direction(sys, g), 1.0);
      if (max_of(residuals(sys, polished)) < max_of(residuals(sys, g))) g = polished;
      break;
    }
    const Eigen::VectorXd delta = gauss_newton_direction(sys, g);
    if (delta.isZero(0.0)) break;
    bool accepted = false;
    for (double alpha = 1.0; alpha > 1e-10; alpha *= 0.5) {
      QTuple trial = step(g, delta, alpha);
      const double ft = merit(sys, trial);
      if (ft <= (1.0 - 1e-4 * alpha) * f) {
        g = std::move(trial);
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {g, max_of(residuals(sys, g))};
}

void validate(const ConstraintSystem& sys) {
  if (sys.n == 0) throw DomainError("solve: system has no generators");
  for (const auto& c : sys.constraints) {
    if (c.word.rank() != sys.n) throw DomainError("solve: constraint word over the wrong free group");
    if (std::abs(c.target.norm() - 1.0) > kTolerances.unit_input) throw DomainError("solve: target is not a unit quaternion");
  }
}

Quat sign_quat(int eps) { return eps > 0 ? Quat::identity() : -Quat::identity(); }

}  // namespace

SolveResult solve(const ConstraintSystem& system, const SolverOptions& options, std::uint64_t seed) {
  validate(system);
  ConstraintSystem sys = system;
  for (auto& c : sys.constraints) c.target = c.target.normalized();

  SolveResult out;
  out.best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < options.restarts; ++r) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(r + 1)));
    RestartOutcome o = run_restart(sys, options, rng);
    out.restarts_used = r + 1;
    out.best_residual = std::min(out.best_residual, o.max_residual);
    if (o.max_residual < options.tolerance) {
      Witness w;
      w.rep = std::move(o.point);
      w.residuals = residuals(system, w.rep);
      w.restarts_used = r + 1;
      w.seed = seed;
      if (w.max_residual() < options.tolerance) {
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

Thm1Outcome solve_thm1(const Presentation& p, const std::vector<Word>& gammas, const std::vector<Quat>& targets,
                       const SolverOptions& options, std::uint64_t seed) {
  if (targets.size() != gammas.size()) throw DomainError("solve_thm1: need one target per gamma");
  Thm1Outcome out;
  out.check = check_thm1(p, gammas);
  if (!out.check.holds) throw HypothesisError("solve_thm1: hypotheses fail: " + out.check.reason);
  out.system.n = p.n;
  out.system.origin = SystemOrigin::thm1;
  for (const Word& w : p.relators) out.system.constraints.push_back({w, Quat::identity()});
  for (std::size_t i = 0; i < gammas.size(); ++i) out.system.constraints.push_back({gammas[i], targets[i]});
  out.result = solve(out.system, options, seed);
  return out;
}

Thm1Outcome solve_thm1(const Presentation& p, const std::vector<Word>& gammas, const std::vector<Rot3>& targets,
                       const SolverOptions& options, std::uint64_t seed) {
  if (targets.size() != gammas.size()) throw DomainError("solve_thm1: need one target per gamma");
  std::vector<Quat> lifted;
  for (const Rot3& r : targets) lifted.push_back(lift(r));
  const std::size_t patterns = std::size_t{1} << std::min<std::size_t>(lifted.size(), 6);
  Thm1Outcome best;
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    std::vector<Quat> t = lifted;
    for (std::size_t i = 0; i < t.size() && i < 6; ++i)
      if (mask >> i & 1) t[i] = -t[i];
    Thm1Outcome o = solve_thm1(p, gammas, t, options, seed);
    if (o.result.success()) return o;
    if (mask == 0 || o.result.best_residual < best.result.best_residual) best = std::move(o);
  }
  return best;
}

Thm2Outcome solve_thm2(const Presentation& p, const std::vector<Word>& gammas,
                       const std::optional<std::vector<int>>& eta, const SolverOptions& options, std::uint64_t seed) {
  Thm2Outcome out;
  out.check = check_thm2(p, gammas);
  if (!out.check.holds) throw HypothesisError("solve_thm2: hypotheses fail: " + out.check.reason);
  out.constraints = build_thm2_constraints(p, out.check, eta);
  const auto& c = *out.constraints;

  out.system.n = p.n;
  out.system.origin = SystemOrigin::thm2;
  for (std::size_t j = 0; j < c.v_words.size(); ++j) out.system.constraints.push_back({c.v_words[j], sign_quat(c.epsilons[j])});
  for (const Word& z : c.gammas) out.system.constraints.push_back({z, Quat::identity()});
  out.result = solve(out.system, options, seed);
  if (!out.result.success()) return out;

  const QTuple& psi = out.result.witness->rep;
  const std::vector<Rot3> rep = to_so3(psi);
  W2Report w2;
  for (const Word& w : p.relators) w2.lift_signs.push_back(word_eval(w, psi).w < 0 ? 1 : 0);
  w2.matches_eta = w2.lift_signs == c.eta;

  std::vector<int> sigma_mod2;
  for (const auto& x : out.check.sigma->coefficients) sigma_mod2.push_back(static_cast<int>(abs(x) % 2));
  w2.cycles.push_back(sigma_mod2);
  for (auto& cyc : mod2_cycle_basis(out.check.profile))
    if (cyc != sigma_mod2) w2.cycles.push_back(std::move(cyc));
  for (const auto& cyc : w2.cycles) w2.pairings.push_back(w2_evaluate(p, rep, cyc));
  out.w2 = std::move(w2);
  out.torus = torus_report(rep);
  return out;
}

int w2_evaluate(const Presentation& p, const QTuple& lifts, const std::vector<int>& cycle) {
  const std::size_t s = p.relators.size();
  if (cycle.size() != s) throw DomainError("w2_evaluate: cycle needs one entry per relator");
  if (lifts.size() != p.n) throw DomainError("w2_evaluate: need one image per generator");
  IntVector boundary(p.n);
  for (std::size_t i = 0; i < s; ++i) {
    if (cycle[i] != 0 && cycle[i] != 1) throw DomainError("w2_evaluate: cycle entries must be 0 or 1");
    if (!cycle[i]) continue;
    const AbelianVector a = abelianize(p.relators[i]);
    for (std::size_t k = 0; k < p.n; ++k) boundary[k] += a[k];
  }
  for (const auto& b : boundary)
    if (b % 2 != 0) throw DomainError("w2_evaluate: chain is not a mod-2 cycle");

  int total = 0;
  for (std::size_t i = 0; i < s; ++i) {
    const Quat v = word_eval(p.relators[i], lifts);
    const bool plus = distance(v, Quat::identity()) <= kTolerances.sign_snap;
    const bool minus = distance(v, -Quat::identity()) <= kTolerances.sign_snap;
    if (!plus && !minus) throw DomainError("w2_evaluate: images do not satisfy relator " + std::to_string(i + 1));
    if (cycle[i] && minus) total ^= 1;
  }
  return total;
}

int w2_evaluate(const Presentation& p, const std::vector<Rot3>& rep, const std::vector<int>& cycle) {
  QTuple lifts;
  lifts.reserve(rep.size());
  for (const Rot3& r : rep) lifts.push_back(lift(r));
  return w2_evaluate(p, lifts, cycle);
}

TorusReport torus_report(const std::vector<Rot3>& rep) {
  const double tol = kTolerances.commute;
  TorusReport t;
  std::vector<Vec3> axes;
  bool all_pi = true;
  for (const Rot3& r : rep) {
    const Quat q = lift(r);
    if (q.imag().norm() < tol) continue;
    axes.push_back(q.imag().normalized());
    if (std::abs(q.w) > tol) all_pi = false;
  }
  t.in_maximal_torus = true;
  bool orthogonal = true;
  for (std::size_t a = 0; a < axes.size(); ++a)
    for (std::size_t b = a + 1; b < axes.size(); ++b) {
      const bool parallel = axes[a].cross(axes[b]).norm() < tol;
      if (!parallel) {
        t.in_maximal_torus = false;
        if (std::abs(axes[a].dot(axes[b])) > tol) orthogonal = false;
      }
    }
  t.images_commute = true;
  for (std::size_t a = 0; a < rep.size(); ++a)
    for (std::size_t b = a + 1; b < rep.size(); ++b)
      if ((rep[a].matrix * rep[b].matrix - rep[b].matrix * rep[a].matrix).norm() > tol) t.images_commute = false;
  if (all_pi && !axes.empty()) t.pi_rotation_axes_orthogonal = orthogonal;
  return t;
}

bool nonabelian_check(const std::vector<Rot3>& rep) { return !torus_report(rep).in_maximal_torus; }

std::vector<Rot3> to_so3(const QTuple& rep) {
  std::vector<Rot3> out;
  out.reserve(rep.size());
  for (const Quat& q : rep) out.push_back(covering_map(q));
  return out;
}

}  // namespace repwitness
