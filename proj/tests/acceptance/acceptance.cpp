// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/presentation_file.hpp"
#include "oracles.hpp"
#include "repwitness/homology.hpp"
#include "repwitness/solver.hpp"

using namespace repwitness;

namespace {

constexpr double kExactLimit = 1.0;      // criteria 1-3, seconds
constexpr double kWitnessLimit = 30.0;   // per fixture, criteria 4-5
constexpr double kDegreeLimit = 60.0;    // criterion 6
constexpr double kOracleLimit = 10.0;    // criteria 8-9
constexpr double kPropertyLimit = 60.0;  // criterion 10
constexpr double kResidual = 1e-9;
constexpr double kConjugacy = 1e-6;
constexpr std::size_t kBudget = 200;
constexpr std::size_t kMaxNewtonStarts = 10'000;

const std::filesystem::path kFixtures = REPWITNESS_FIXTURES;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    failures += (pass ? "" : "; ") + what;
    pass = false;
  }
};

struct Fixture {
  std::string name;
  cli::PresentationFile file;
  cli::CompiledPresentation compiled;
};

std::vector<Fixture> all_fixtures() {
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures))
    if (e.path().extension() == ".grp") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::vector<Fixture> out;
  for (const auto& p : paths) {
    Fixture f;
    f.name = p.filename().string();
    f.file = cli::load_presentation(p);
    f.compiled = cli::compile(f.file);
    out.push_back(std::move(f));
  }
  return out;
}

Fixture fixture(const std::string& name) {
  Fixture f;
  f.name = name;
  f.file = cli::load_presentation(kFixtures / name);
  f.compiled = cli::compile(f.file);
  return f;
}

Presentation surface(std::size_t genus) {
  std::string rel;
  for (std::size_t l = 1; l <= genus; ++l) rel += "[x" + std::to_string(l) + ",x" + std::to_string(l + genus) + "]";
  return Presentation(2 * genus, {parse_word(rel, 2 * genus)});
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  cli::AnalyzeArgs args;
  args.path = (kFixtures / "hopf.grp").string();
  const cli::Report r = cli::analyze_report(args);
  const double dt = since(t0);
  o.require(r.profile && r.profile->b1 == 2 && r.profile->b2 == 1 && r.profile->torsion_order == "1", "profile");
  o.require(r.mu && r.mu->terms.size() == 1 && r.mu->terms[0].p == 1 && r.mu->terms[0].q == 2 &&
                (r.mu->terms[0].coefficient == "1" || r.mu->terms[0].coefficient == "-1"),
            "mu != +-x1^x2");
  o.require(dt < kExactLimit, "runtime");
  if (r.profile && r.mu)
    o.detail << "b1=" << r.profile->b1 << " b2=" << r.profile->b2 << " |T|=" << r.profile->torsion_order
             << " mu=" << r.mu->text;
  o.detail << " (" << dt << " s)";
}

void criterion2(Outcome& o) {
  const auto t0 = Clock::now();
  for (std::size_t genus = 1; genus <= 3; ++genus) {
    const Presentation p = surface(genus);
    const auto h = analyze(p);
    const auto mu = mu_form(p, h, sigma_generator(h)).mu;
    ExteriorElement expected(2, 2 * genus);
    for (std::size_t l = 0; l < genus; ++l) expected += ExteriorElement::basis(2 * genus, {l, l + genus});
    o.require(mu == expected, "genus " + std::to_string(genus));
    o.detail << "g" << genus << ": " << mu.to_string() << "; ";
  }
  const double dt = since(t0);
  o.require(dt < kExactLimit, "runtime");
  o.detail << "(" << dt << " s)";
}

void criterion3(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t count = 0;
  bool saw_torsion = false;
  for (const char* name : {"hopf.grp", "torsion3.grp", "hopf_redundant.grp", "twisted.grp", "genus2.grp",
                           "genus3.grp", "torus_link_2_4.grp", "genus2_standard.grp"}) {
    const Fixture f = fixture(name);
    const Presentation& p = f.compiled.presentation;
    const auto c = check_thm2(p, f.compiled.gammas);
    if (!c.holds) {
      o.require(false, std::string(name) + " fails check_thm2");
      continue;
    }
    const auto k = build_thm2_constraints(p, c, f.file.eta);
    const Integer kap = kappa(k.commutator_pairs, k.rest_words(), p.n);
    const Integer expected = c.profile.torsion_order * top_det(*c.wedge);
    o.require(*c.kappa_prediction == expected, std::string(name) + " prediction");
    o.require(kap != 0 && abs_int(kap) == abs_int(expected), std::string(name) + " kappa");
    if (std::string(name) == "torsion3.grp") saw_torsion = c.profile.torsion_order == 3;
    o.detail << name << " kappa=" << kap << " |T|det=" << expected << "; ";
    ++count;
  }
  o.require(count >= 5, "fewer than 5 fixtures");
  o.require(saw_torsion, "torsion fixture");
  const double dt = since(t0);
  o.require(dt < kExactLimit, "runtime");
  o.detail << "(" << dt << " s)";
}

void criterion4(Outcome& o) {
  std::size_t count = 0;
  double worst = 0.0;
  for (const auto& f : all_fixtures()) {
    const Presentation& p = f.compiled.presentation;
    if (!check_thm2(p, f.compiled.gammas).holds) continue;
    const auto t0 = Clock::now();
    SolverOptions opt;
    opt.restarts = kBudget;
    const auto r = solve_thm2(p, f.compiled.gammas, f.file.eta, opt, 0);
    const double dt = since(t0);
    worst = std::max(worst, dt);
    ++count;
    if (!r.result.success()) {
      o.require(false, f.name + " no witness");
      continue;
    }
    const auto so3 = to_so3(r.result.witness->rep);
    const auto sigma = sigma_generator(r.check.profile);
    std::vector<int> sigma2;
    for (const auto& x : sigma.coefficients) sigma2.push_back(static_cast<int>(abs_int(x) % 2));
    o.require(r.result.witness->max_residual() < kResidual, f.name + " residual");
    o.require(w2_evaluate(p, so3, sigma2) == 1, f.name + " w2(sigma)");
    o.require(nonabelian_check(so3), f.name + " torus");
    o.require(dt < kWitnessLimit, f.name + " runtime");
    o.detail << f.name << " (" << r.result.restarts_used << " restarts, " << r.result.witness->max_residual()
             << "); ";
  }
  o.require(count > 0, "no fixtures");
  o.detail << count << " fixtures, slowest " << worst << " s";
}

void criterion5(Outcome& o) {
  std::size_t count = 0;
  double worst = 0.0;
  for (const auto& f : all_fixtures()) {
    const Presentation& p = f.compiled.presentation;
    const auto& gammas = f.compiled.gammas;
    if (gammas.empty() || !check_thm1(p, gammas).holds) continue;
    ++count;
    for (std::uint64_t seed : {1, 2, 3}) {
      std::mt19937_64 rng(seed);
      std::vector<Quat> targets;
      for (std::size_t i = 0; i < gammas.size(); ++i) targets.push_back(random_unit_quat(rng));
      const auto t0 = Clock::now();
      SolverOptions opt;
      opt.restarts = kBudget;
      const auto r = solve_thm1(p, gammas, targets, opt, seed);
      const double dt = since(t0);
      worst = std::max(worst, dt);
      o.require(r.result.success() && r.result.witness->max_residual() < kResidual,
                f.name + " seed " + std::to_string(seed));
      o.require(dt < kWitnessLimit, f.name + " runtime");
    }
    o.detail << f.name << "; ";
  }
  o.require(count >= 3, "fewer than 3 fixtures");
  o.detail << count << " fixtures x 3 seeds, slowest " << worst << " s";
}

void criterion6(Outcome& o) {
  const auto t0 = Clock::now();
  constexpr std::size_t kStarts = 2000;
  static_assert(kStarts <= kMaxNewtonStarts);
  for (int k : {1, 2, 3, 5}) {
    const Word w = Word::generator(1, 1, k);
    const Integer formula = degree_formula({w}, 1);
    std::mt19937_64 rng(static_cast<std::uint64_t>(100 + k));
    std::string counts;
    for (int t = 0; t < 3; ++t) {
      const auto e = empirical_degree(w, random_unit_quat(rng), kStarts, static_cast<std::uint64_t>(t));
      o.require(e.degree && Integer(*e.degree) == formula && formula == k, "k=" + std::to_string(k));
      counts += (e.degree ? std::to_string(*e.degree) : "?") + (t < 2 ? "," : "");
    }
    o.detail << "k=" << k << ": " << counts << "; ";
  }
  const double dt = since(t0);
  o.require(dt < kDegreeLimit, "runtime");
  o.detail << "(" << dt << " s)";
}

void criterion7(Outcome& o) {
  ConstraintSystem sys;
  sys.n = 2;
  sys.constraints.push_back({parse_word("[x1,x2]", 2), -Quat::identity()});
  const Quat i{0, 1, 0, 0}, j{0, 0, 1, 0};
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = solve(sys, {}, seed);
    if (!r.success()) {
      o.require(false, "seed " + std::to_string(seed) + " no witness");
      continue;
    }
    const QTuple n = normalize_conjugacy(r.witness->rep);
    const double d = std::max(distance(n[0], i), distance(n[1], j));
    worst = std::max(worst, d);
    o.require(d < kConjugacy, "seed " + std::to_string(seed));
  }
  o.detail << "20 solves, max distance to (i, j) " << worst;
}

void criterion8(Outcome& o) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> count(1, 4);
  std::size_t agree = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::pair<oracle::Letters, oracle::Letters>> pairs;
    oracle::Letters product;
    for (int k = count(rng); k > 0; --k) {
      auto u = oracle::random_letters(rng, 4, 6), v = oracle::random_letters(rng, 4, 6);
      const auto c = oracle::commutator(u, v);
      product.insert(product.end(), c.begin(), c.end());
      pairs.emplace_back(std::move(u), std::move(v));
    }
    agree += oracle::to_form(lambda_form(oracle::to_word(4, product))) == oracle::lambda_of_pairs(4, pairs);
  }
  const double dt = since(t0);
  o.require(agree == 1000, std::to_string(1000 - agree) + " mismatches");
  o.require(dt < kOracleLimit, "runtime");
  o.detail << agree << "/1000 agree (" << dt << " s)";
}

// Generator images rotating about one axis with the relators satisfied.
std::vector<std::vector<Rot3>> abelian_representations(const Presentation& p, std::mt19937_64& rng) {
  const HomologyProfile h = analyze(p);
  const Vec3 axis = Vec3(0.3, -0.5, 0.8).normalized();
  std::vector<std::vector<Rot3>> reps;
  reps.push_back(std::vector<Rot3>(p.n));
  // integer vectors c with c . w_i = 0: angles s c_p for any real s
  const auto left = kernel_basis(h.boundary.transpose());
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int t = 0; t < 5 && !left.empty(); ++t) {
    IntVector c(p.n);
    for (const auto& b : left) {
      const int f = coeff(rng);
      for (std::size_t k = 0; k < p.n; ++k) c[k] += f * b[k];
    }
    const double s = angle(rng);
    std::vector<Rot3> rep;
    for (std::size_t k = 0; k < p.n; ++k) rep.push_back(Rot3::about_axis(axis, s * static_cast<double>(c[k])));
    reps.push_back(rep);
  }
  // c with c . w_i even: rotations by pi c_p
  for (std::size_t mask = 1; mask < (std::size_t{1} << std::min<std::size_t>(p.n, 10)); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < p.relators.size() && ok; ++i) {
      Integer dot = 0;
      for (std::size_t k = 0; k < p.n; ++k)
        if (mask >> k & 1) dot += h.boundary(k, i);
      ok = dot % 2 == 0;
    }
    if (!ok) continue;
    std::vector<Rot3> rep;
    for (std::size_t k = 0; k < p.n; ++k) rep.push_back(Rot3::about_axis(axis, (mask >> k & 1) ? M_PI : 0.0));
    reps.push_back(rep);
  }
  return reps;
}

void criterion9(Outcome& o) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(9);
  std::size_t checks = 0, abelian = 0, fixtures = 0;
  for (const auto& f : all_fixtures()) {
    const Presentation& p = f.compiled.presentation;
    const auto h = analyze(p);
    const auto cycles = mod2_cycle_basis(h);
    if (cycles.empty()) continue;
    // reductions of integral 2-cycles; a mod-2 cycle that does not lift can pair
    // nontrivially with an abelian image
    std::vector<std::vector<int>> integral;
    for (const auto& z : kernel_basis(h.boundary)) {
      std::vector<int> c;
      for (const auto& x : z) c.push_back(static_cast<int>(abs_int(x) % 2));
      integral.push_back(c);
    }
    ++fixtures;
    std::vector<QTuple> reps;
    if (check_thm2(p, f.compiled.gammas).holds) {
      const auto r = solve_thm2(p, f.compiled.gammas, f.file.eta, {}, 0);
      if (r.result.success()) reps.push_back(r.result.witness->rep);
    }
    if (!f.compiled.gammas.empty() && check_thm1(p, f.compiled.gammas).holds) {
      std::vector<Quat> targets;
      for (std::size_t i = 0; i < f.compiled.gammas.size(); ++i) targets.push_back(random_unit_quat(rng));
      const auto r = solve_thm1(p, f.compiled.gammas, targets, {}, 0);
      if (r.result.success()) reps.push_back(r.result.witness->rep);
    }
    for (const auto& rep : abelian_representations(p, rng)) {
      QTuple lifts;
      for (const Rot3& r : rep) lifts.push_back(lift(r));
      reps.push_back(lifts);
      for (const auto& c : integral) {
        o.require(w2_evaluate(p, rep, c) == 0, f.name + " abelian image gives w2 != 0");
        ++abelian;
      }
    }
    for (const QTuple& base : reps)
      for (const auto& c : cycles) {
        const int expected = w2_evaluate(p, base, c);
        for (int t = 0; t < 100; ++t) {
          QTuple lifts = base;
          for (auto& q : lifts)
            if (rng() & 1) q = -q;
          o.require(w2_evaluate(p, lifts, c) == expected, f.name + " lift dependence");
          ++checks;
        }
      }
  }
  const double dt = since(t0);
  o.require(dt < kOracleLimit, "runtime");
  o.detail << fixtures << " fixtures, " << checks << " re-lift checks, " << abelian
           << " abelian checks on integral classes (" << dt
           << " s)";
}

void criterion10(Outcome& o) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::size_t snf_ok = 0;
  for (int t = 0; t < 10'000; ++t) {
    const IntMatrix m = oracle::random_matrix(rng, dim(rng), dim(rng), 9);
    const SnfResult s = smith_normal_form(m);
    bool ok = s.U * m * s.V == s.D && abs_int(oracle::cofactor_det(oracle::to_dense(s.U))) == 1 &&
              abs_int(oracle::cofactor_det(oracle::to_dense(s.V))) == 1;
    for (std::size_t i = 0; i < s.D.rows() && ok; ++i)
      for (std::size_t j = 0; j < s.D.cols() && ok; ++j)
        ok = (i == j && i < s.rank) ? s.D(i, i) == s.divisors[i] : s.D(i, j) == 0;
    for (std::size_t k = 0; k + 1 < s.rank && ok; ++k) ok = s.divisors[k] >= 1 && s.divisors[k + 1] % s.divisors[k] == 0;
    snf_ok += ok;
  }
  std::size_t wedge_ok = 0;
  std::uniform_int_distribution<std::size_t> deg(0, 3);
  std::uniform_int_distribution<int> coeff(-5, 5);
  const std::size_t n = 6;
  auto random_element = [&](std::size_t d) {
    ExteriorElement e(d, n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int t = 0; t < 3; ++t) {
      std::vector<std::size_t> ks;
      for (std::size_t k = 0; k < d; ++k) ks.push_back(idx(rng));
      e += Integer(coeff(rng)) * ExteriorElement::basis(n, ks);
    }
    return e;
  };
  for (int t = 0; t < 10'000; ++t) {
    const ExteriorElement a = random_element(deg(rng)), b = random_element(deg(rng)),
                          b2 = random_element(b.degree());
    const Integer s(coeff(rng));
    const bool odd = a.degree() * b.degree() % 2 == 1;
    const bool ok = wedge(a, b) == (odd ? -wedge(b, a) : wedge(b, a)) &&
                    wedge(a, b + b2) == wedge(a, b) + wedge(a, b2) &&
                    wedge(a + a, b) == wedge(a, b) + wedge(a, b) && wedge(s * a, b) == s * wedge(a, b);
    wedge_ok += ok;
  }
  const double dt = since(t0);
  o.require(snf_ok == 10'000, "SNF " + std::to_string(10'000 - snf_ok) + " failures");
  o.require(wedge_ok == 10'000, "wedge " + std::to_string(10'000 - wedge_ok) + " failures");
  o.require(dt < kPropertyLimit, "runtime");
  o.detail << "SNF " << snf_ok << "/10000, wedge " << wedge_ok << "/10000 (" << dt << " s)";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Hopf-link certificate", criterion1},
      {2, "surface-group mu", criterion2},
      {3, "kappa consistency", criterion3},
      {4, "witnesses for b2 = 1 with prescribed w2", criterion4},
      {5, "witnesses for b2 = 0 with prescribed values", criterion5},
      {6, "degree verification", criterion6},
      {7, "commutator uniqueness up to conjugacy", criterion7},
      {8, "lambda oracle equivalence", criterion8},
      {9, "w2 well-definedness", criterion9},
      {10, "exact-algebra properties", criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str());
    if (!o.pass) std::printf("       failed: %s\n", o.failures.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
