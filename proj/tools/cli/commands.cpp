#include "cli/commands.hpp"

#include <chrono>
#include <sstream>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "cli/presentation_file.hpp"
#include "repwitness/errors.hpp"
#include "repwitness/homology.hpp"
#include "repwitness/liegrp.hpp"
#include "repwitness/solver.hpp"
#include "repwitness/words.hpp"

namespace repwitness::cli {

namespace {

std::string str(const Integer& x) { return x.str(); }

std::string str(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::array<double, 4> arr(const Quat& q) { return {q.w + 0.0, q.x + 0.0, q.y + 0.0, q.z + 0.0}; }

std::array<double, 4> arr12(const Quat& q) { return {round12(q.w), round12(q.x), round12(q.y), round12(q.z)}; }

std::vector<std::string> words_text(const std::vector<Word>& ws, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const Word& w : ws) out.push_back(to_string(w, names));
  return out;
}

struct Loaded {
  PresentationFile file;
  CompiledPresentation compiled;
};

Loaded load(const std::string& path, std::uint64_t max_letters) {
  Loaded l;
  l.file = load_presentation(path);
  ParseOptions opts;
  opts.max_letters = max_letters;
  l.compiled = compile(l.file, opts);
  return l;
}

Report base_report(const std::string& command, const std::string& input, const Presentation& p) {
  Report r;
  r.command = command;
  r.input = input;
  r.generators = p.generator_names();
  r.relators = words_text(p.relators, r.generators);
  return r;
}

void fill_profile(Report& r, const Presentation& p, const HomologyProfile& h, const std::optional<SigmaClass>& sigma,
                  const std::optional<MuForm>& mu) {
  r.profile = ProfileInfo{h.b1, h.b2, str(h.torsion_order)};
  if (sigma) {
    std::vector<std::string> s;
    for (const auto& c : sigma->coefficients) s.push_back(str(c));
    r.sigma = s;
  }
  if (mu) {
    MuInfo m;
    m.basis = quotient_basis_labels(p, h);
    for (const auto& [key, coeff] : mu->mu.terms()) m.terms.push_back({str(coeff), key[0] + 1, key[1] + 1});
    m.text = mu->mu.to_string(m.basis);
    r.mu = m;
  }
}

WitnessInfo witness_info(const ConstraintSystem& sys, const SolveResult& res, const std::vector<std::string>& names) {
  WitnessInfo w;
  w.origin = to_string(sys.origin);
  for (const auto& c : sys.constraints) w.constraints.push_back({to_string(c.word, names), arr(c.target)});
  w.success = res.success();
  w.best_residual = res.best_residual;
  w.restarts_used = res.restarts_used;
  if (res.witness) {
    for (const Quat& q : res.witness->rep) w.rep.push_back(arr12(q));
    w.residuals = res.witness->residuals;
    w.max_residual = res.witness->max_residual();
  }
  return w;
}

SolverOptions solver_options(const SolveArgs& a, const PresentationFile& f, Report& r, std::uint64_t& seed) {
  SolverOptions o;
  if (a.budget) o.restarts = *a.budget;
  else if (f.budget) o.restarts = *f.budget;
  if (a.iterations) o.iterations = *a.iterations;
  if (a.tol) o.tolerance = *a.tol;
  if (o.restarts == 0) throw DomainError("budget must be positive");
  if (!(o.tolerance > 0.0)) throw DomainError("tolerance must be positive");
  seed = a.seed ? *a.seed : f.seed.value_or(0);
  r.flags["seed"] = std::to_string(seed);
  r.flags["budget"] = std::to_string(o.restarts);
  r.flags["iterations"] = std::to_string(o.iterations);
  r.flags["tol"] = str(o.tolerance);
  return o;
}

template <class Args>
int run(Report (*build)(const Args&), const Args& args, bool json, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Report r = build(args);
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (json) out << to_json(r).dump(2) << '\n';
    else out << to_text(r);
    return r.exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const HypothesisError& e) {
    err << "hypotheses not satisfied: " << e.what() << '\n';
    return kPrecondition;
  } catch (const DomainError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kPrecondition;
  }
}

}  // namespace

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Report analyze_report(const AnalyzeArgs& args) {
  const Loaded l = load(args.path, args.max_letters);
  const Presentation& p = l.compiled.presentation;
  Report r = base_report("analyze", args.path, p);
  const HomologyProfile h = analyze(p);
  std::optional<SigmaClass> sigma;
  std::optional<MuForm> mu;
  if (h.b2 == 1) {
    sigma = sigma_generator(h);
    mu = mu_form(p, h, *sigma);
  }
  fill_profile(r, p, h, sigma, mu);
  r.exit_code = kSuccess;
  return r;
}

Report check_report(const CheckArgs& args) {
  if (args.theorem != 1 && args.theorem != 2) throw DomainError("--theorem must be 1 or 2");
  const Loaded l = load(args.path, args.max_letters);
  const Presentation& p = l.compiled.presentation;
  const auto& names = p.generator_names();
  Report r = base_report("check", args.path, p);
  r.flags["theorem"] = std::to_string(args.theorem);
  PredictionInfo pred;
  if (args.theorem == 1) {
    r.flags["rank"] = std::to_string(args.rank_m);
    const Thm1Check c = check_thm1(p, l.compiled.gammas, args.rank_m);
    fill_profile(r, p, c.profile, std::nullopt, std::nullopt);
    r.decision = DecisionInfo{1, c.holds, c.reason};
    pred.gammas = words_text(c.gammas, names);
    pred.given_gammas = c.given_gammas;
    if (c.predicted_degree) pred.degree = str(*c.predicted_degree);
    if (c.word_map_degree) pred.word_map_degree = str(*c.word_map_degree);
  } else {
    const Thm2Check c = check_thm2(p, l.compiled.gammas);
    fill_profile(r, p, c.profile, c.sigma, c.mu);
    r.decision = DecisionInfo{2, c.holds, c.reason};
    pred.gammas = words_text(c.gammas, names);
    pred.given_gammas = c.given_gammas;
    if (c.wedge) pred.wedge = c.wedge->to_string(quotient_basis_labels(p, c.profile));
    if (c.kappa_prediction) pred.kappa = str(*c.kappa_prediction);
    if (c.holds) {
      const Thm2Constraints k = build_thm2_constraints(p, c, l.file.eta);
      pred.kappa_constraints = str(kappa(k.commutator_pairs, k.rest_words(), p.n));
    }
  }
  r.prediction = pred;
  r.exit_code = r.decision->holds ? kSuccess : kNegative;
  return r;
}

Report solve_report(const SolveArgs& args) {
  if (args.raw == args.theorem.has_value()) throw DomainError("give exactly one of --theorem and --raw");
  if (args.theorem && *args.theorem != 1 && *args.theorem != 2) throw DomainError("--theorem must be 1 or 2");
  const Loaded l = load(args.path, args.max_letters);
  const Presentation& p = l.compiled.presentation;
  const auto& names = p.generator_names();
  Report r = base_report("solve", args.path, p);
  std::uint64_t seed = 0;
  const SolverOptions opt = solver_options(args, l.file, r, seed);

  if (args.raw) {
    r.flags["mode"] = "raw";
    ConstraintSystem sys;
    sys.n = p.n;
    sys.origin = SystemOrigin::raw;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      const bool flip = l.file.eta && (*l.file.eta)[i];
      sys.constraints.push_back({p.relators[i], flip ? -Quat::identity() : Quat::identity()});
    }
    for (std::size_t i = 0; i < l.compiled.gammas.size(); ++i)
      sys.constraints.push_back(
          {l.compiled.gammas[i], l.compiled.targets.empty() ? Quat::identity() : l.compiled.targets[i]});
    const SolveResult res = solve(sys, opt, seed);
    r.witness = witness_info(sys, res, names);
    r.exit_code = res.success() ? kSuccess : kNegative;
    return r;
  }

  r.flags["theorem"] = std::to_string(*args.theorem);
  PredictionInfo pred;
  if (*args.theorem == 1) {
    std::vector<Quat> targets = l.compiled.targets;
    if (targets.empty()) {
      std::mt19937_64 rng(seed);
      for (std::size_t i = 0; i < l.compiled.gammas.size(); ++i) targets.push_back(random_unit_quat(rng));
    }
    const Thm1Outcome o = solve_thm1(p, l.compiled.gammas, targets, opt, seed);
    fill_profile(r, p, o.check.profile, std::nullopt, std::nullopt);
    r.decision = DecisionInfo{1, o.check.holds, o.check.reason};
    pred.gammas = words_text(o.check.gammas, names);
    pred.given_gammas = o.check.given_gammas;
    if (o.check.predicted_degree) pred.degree = str(*o.check.predicted_degree);
    if (o.check.word_map_degree) pred.word_map_degree = str(*o.check.word_map_degree);
    r.prediction = pred;
    r.witness = witness_info(o.system, o.result, names);
    r.exit_code = o.result.success() ? kSuccess : kNegative;
    return r;
  }

  if (!l.file.targets.empty()) throw DomainError("--theorem 2 fixes every gamma to 1; remove the target lines");
  const Thm2Outcome o = solve_thm2(p, l.compiled.gammas, l.file.eta, opt, seed);
  fill_profile(r, p, o.check.profile, o.check.sigma, o.check.mu);
  r.decision = DecisionInfo{2, o.check.holds, o.check.reason};
  pred.gammas = words_text(o.check.gammas, names);
  pred.given_gammas = o.check.given_gammas;
  if (o.check.wedge) pred.wedge = o.check.wedge->to_string(quotient_basis_labels(p, o.check.profile));
  if (o.check.kappa_prediction) pred.kappa = str(*o.check.kappa_prediction);
  const auto& k = *o.constraints;
  pred.kappa_constraints = str(kappa(k.commutator_pairs, k.rest_words(), p.n));
  r.prediction = pred;
  r.witness = witness_info(o.system, o.result, names);
  bool verified = o.result.success();
  if (o.w2) {
    r.w2 = W2Info{k.eta, o.w2->lift_signs, o.w2->matches_eta, o.w2->cycles, o.w2->pairings};
    verified = verified && o.w2->matches_eta && o.w2->pairings.front() == 1;
  }
  if (o.torus) {
    r.torus = TorusInfo{!o.torus->in_maximal_torus, o.torus->in_maximal_torus, o.torus->images_commute,
                        o.torus->pi_rotation_axes_orthogonal};
    verified = verified && !o.torus->in_maximal_torus;
  }
  r.exit_code = verified ? kSuccess : kNegative;
  return r;
}

Report degree_report(const DegreeArgs& args) {
  if (args.rank_m == 0) throw DomainError("--rank must be positive");
  std::vector<std::string> texts;
  for (const auto& a : args.words)
    for (const auto& w : split_words(a)) texts.push_back(trimmed(w));
  if (texts.empty()) throw ParseError("no words given", 0);
  const std::size_t n = texts.size();
  ParseOptions opts;
  opts.max_letters = args.max_letters;
  std::vector<Word> words;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      words.push_back(parse_word(texts[i], n, opts));
    } catch (const ParseError& e) {
      throw ParseError("word " + std::to_string(i + 1) + " of " + std::to_string(n) + ": " + e.message(), e.position());
    }
  }
  Report r;
  r.command = "degree";
  r.input = texts.front();
  for (std::size_t i = 1; i < n; ++i) r.input += ", " + texts[i];
  r.generators = default_generator_names(n);
  r.flags["rank"] = std::to_string(args.rank_m);
  DegreeInfo d;
  d.words = words_text(words, r.generators);
  d.rank_m = args.rank_m;
  d.formula = str(degree_formula(words, args.rank_m));
  r.exit_code = kSuccess;
  if (args.verify) {
    if (n != 1) throw DomainError("--verify needs a single word in one generator");
    r.flags["verify"] = "true";
    r.flags["starts"] = std::to_string(args.starts);
    r.flags["seed"] = std::to_string(args.seed);
    std::mt19937_64 rng(args.seed);
    const Quat target = random_unit_quat(rng);
    const EmpiricalDegree e = empirical_degree(words.front(), target, args.starts, args.seed);
    EmpiricalInfo info;
    info.degree = e.degree;
    info.target = arr12(e.target);
    info.target_resampled = e.target_resampled;
    info.solutions = e.solutions;
    info.positive = e.positive;
    info.negative = e.negative;
    info.starts = e.starts_used;
    // Sp(1) has rank 1, so the empirical count is compared with the m = 1 formula.
    const Integer expected = degree_formula(words, 1);
    if (!e.degree) info.verdict = "INCONCLUSIVE";
    else info.verdict = Integer(*e.degree) == expected ? "AGREE" : "DISAGREE";
    d.empirical = info;
    r.exit_code = info.verdict == "AGREE" ? kSuccess : kNegative;
  }
  r.degree = d;
  return r;
}

int cmd_analyze(const AnalyzeArgs& a, bool json, std::ostream& out, std::ostream& err) {
  return run(&analyze_report, a, json, out, err);
}
int cmd_check(const CheckArgs& a, bool json, std::ostream& out, std::ostream& err) {
  return run(&check_report, a, json, out, err);
}
int cmd_solve(const SolveArgs& a, bool json, std::ostream& out, std::ostream& err) {
  return run(&solve_report, a, json, out, err);
}
int cmd_degree(const DegreeArgs& a, bool json, std::ostream& out, std::ostream& err) {
  return run(&degree_report, a, json, out, err);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representation witnesses for finitely presented groups in SU(2) and SO(3)", "repwitness"};
  app.require_subcommand(1);

  bool json = false;
  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Betti numbers, torsion, sigma and mu of a presentation");
  analyze_cmd->add_option("file", analyze_args.path, "Presentation file (.grp text or .json)")->required();
  analyze_cmd->add_flag("--json", json, "Machine-readable report");
  analyze_cmd->add_option("--max-letters", analyze_args.max_letters, "Word length guard");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Decide the hypotheses of theorem 1 or 2");
  check_cmd->add_option("file", check_args.path, "Presentation file")->required();
  check_cmd->add_option("--theorem", check_args.theorem, "1 (b2 = 0) or 2 (b2 = 1)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  check_cmd->add_option("--rank", check_args.rank_m, "Rank m of the group in the degree prediction")
      ->check(CLI::PositiveNumber);
  check_cmd->add_flag("--json", json, "Machine-readable report");
  check_cmd->add_option("--max-letters", check_args.max_letters, "Word length guard");

  SolveArgs solve_args;
  int solve_theorem = 0;
  std::uint64_t solve_seed = 0;
  std::size_t solve_budget = 0;
  std::size_t solve_iterations = 0;
  double solve_tol = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "Construct a witness representation numerically");
  solve_cmd->add_option("file", solve_args.path, "Presentation file")->required();
  auto* theorem_opt =
      solve_cmd->add_option("--theorem", solve_theorem, "Solve the system of theorem 1 or 2")->check(CLI::IsMember({1, 2}));
  auto* raw_opt = solve_cmd->add_flag("--raw", solve_args.raw,
                                      "Solve relators = (-1)^eta and gammas = targets directly");
  theorem_opt->excludes(raw_opt);
  auto* seed_opt = solve_cmd->add_option("--seed", solve_seed, "64-bit seed (default: file, else 0)");
  auto* budget_opt =
      solve_cmd->add_option("--budget", solve_budget, "Random restarts (default 200)")->check(CLI::PositiveNumber);
  auto* iter_opt = solve_cmd->add_option("--iterations", solve_iterations, "Gauss-Newton iterations per restart (default 100)")
                       ->check(CLI::PositiveNumber);
  auto* tol_opt = solve_cmd->add_option("--tol", solve_tol, "Max residual for success (default 1e-9)")
                      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--json", json, "Machine-readable report");
  solve_cmd->add_option("--max-letters", solve_args.max_letters, "Word length guard");

  DegreeArgs degree_args;
  auto* degree_cmd = app.add_subcommand("degree", "Degree of the word map G^n -> G^n");
  degree_cmd->add_option("words", degree_args.words, "Words, comma separated (one per generator)")->required();
  degree_cmd->add_option("--rank", degree_args.rank_m, "Rank m of G")->check(CLI::PositiveNumber);
  degree_cmd->add_flag("--verify", degree_args.verify, "Count preimages numerically in Sp(1) (n = 1)");
  degree_cmd->add_option("--starts", degree_args.starts, "Newton starts for --verify")->check(CLI::PositiveNumber);
  degree_cmd->add_option("--seed", degree_args.seed, "64-bit seed for --verify");
  degree_cmd->add_flag("--json", json, "Machine-readable report");
  degree_cmd->add_option("--max-letters", degree_args.max_letters, "Word length guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  if (*analyze_cmd) return cmd_analyze(analyze_args, json, out, err);
  if (*check_cmd) return cmd_check(check_args, json, out, err);
  if (*degree_cmd) return cmd_degree(degree_args, json, out, err);
  if (*theorem_opt) solve_args.theorem = solve_theorem;
  if (*seed_opt) solve_args.seed = solve_seed;
  if (*budget_opt) solve_args.budget = solve_budget;
  if (*iter_opt) solve_args.iterations = solve_iterations;
  if (*tol_opt) solve_args.tol = solve_tol;
  return cmd_solve(solve_args, json, out, err);
}

}  // namespace repwitness::cli
