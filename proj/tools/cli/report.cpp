#include "cli/report.hpp"

#include <cstdio>
#include <sstream>
#include <tuple>

namespace repwitness::cli {

using nlohmann::json;

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

std::string fmt(double x, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x + 0.0);
  return buf;
}

std::string bits(const std::vector<int>& v) {
  std::string s;
  for (int b : v) s += static_cast<char>('0' + b);
  return s;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

double round12(double x) { return std::stod(fmt(x, "%.11e")) + 0.0; }

bool Report::operator==(const Report& o) const {
  auto fields = [](const Report& r) {
    return std::tie(r.command, r.input, r.flags, r.generators, r.relators, r.profile, r.sigma, r.mu, r.decision,
                    r.prediction, r.witness, r.w2, r.torus, r.degree, r.exit_code);
  };
  return fields(*this) == fields(o);
}

json to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["input"] = r.input;
  j["flags"] = r.flags;
  j["generators"] = r.generators;
  j["relators"] = r.relators;
  j["exit_code"] = r.exit_code;
  if (r.profile) j["profile"] = {{"b1", r.profile->b1}, {"b2", r.profile->b2}, {"torsion_order", r.profile->torsion_order}};
  put(j, "sigma", r.sigma);
  if (r.mu) {
    json terms = json::array();
    for (const auto& t : r.mu->terms) terms.push_back({{"coefficient", t.coefficient}, {"p", t.p}, {"q", t.q}});
    j["mu"] = {{"basis", r.mu->basis}, {"terms", terms}, {"text", r.mu->text}};
  }
  if (r.decision)
    j["decision"] = {{"theorem", r.decision->theorem}, {"holds", r.decision->holds}, {"reason", r.decision->reason}};
  if (r.prediction) {
    const auto& p = *r.prediction;
    json pj{{"gammas", p.gammas}, {"given_gammas", p.given_gammas}};
    put(pj, "degree", p.degree);
    put(pj, "word_map_degree", p.word_map_degree);
    put(pj, "kappa", p.kappa);
    put(pj, "kappa_constraints", p.kappa_constraints);
    put(pj, "wedge", p.wedge);
    j["prediction"] = pj;
  }
  if (r.witness) {
    const auto& w = *r.witness;
    json cons = json::array();
    for (const auto& c : w.constraints) cons.push_back({{"word", c.word}, {"target", c.target}});
    j["witness"] = {{"origin", w.origin},           {"constraints", cons},
                    {"success", w.success},         {"rep", w.rep},
                    {"residuals", w.residuals},     {"max_residual", w.max_residual},
                    {"best_residual", w.best_residual}, {"restarts_used", w.restarts_used}};
  }
  if (r.w2)
    j["w2"] = {{"eta", r.w2->eta},       {"lift_signs", r.w2->lift_signs}, {"matches_eta", r.w2->matches_eta},
               {"cycles", r.w2->cycles}, {"pairings", r.w2->pairings}};
  if (r.torus) {
    json t{{"nonabelian", r.torus->nonabelian},
           {"in_maximal_torus", r.torus->in_maximal_torus},
           {"images_commute", r.torus->images_commute}};
    put(t, "pi_rotation_axes_orthogonal", r.torus->pi_rotation_axes_orthogonal);
    j["torus"] = t;
  }
  if (r.degree) {
    const auto& d = *r.degree;
    json dj{{"words", d.words}, {"rank", d.rank_m}, {"formula", d.formula}};
    if (d.empirical) {
      const auto& e = *d.empirical;
      json ej{{"target", e.target},       {"target_resampled", e.target_resampled},
              {"solutions", e.solutions}, {"positive", e.positive},
              {"negative", e.negative},   {"starts", e.starts},
              {"verdict", e.verdict}};
      put(ej, "degree", e.degree);
      dj["empirical"] = ej;
    }
    j["degree"] = dj;
  }
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.input = j.at("input").get<std::string>();
  r.flags = j.at("flags").get<std::map<std::string, std::string>>();
  r.generators = j.at("generators").get<std::vector<std::string>>();
  r.relators = j.at("relators").get<std::vector<std::string>>();
  r.exit_code = j.at("exit_code").get<int>();
  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    r.profile = ProfileInfo{p.at("b1").get<std::size_t>(), p.at("b2").get<std::size_t>(),
                            p.at("torsion_order").get<std::string>()};
  }
  get(j, "sigma", r.sigma);
  if (j.contains("mu")) {
    const auto& m = j.at("mu");
    MuInfo mu;
    mu.basis = m.at("basis").get<std::vector<std::string>>();
    for (const auto& t : m.at("terms"))
      mu.terms.push_back({t.at("coefficient").get<std::string>(), t.at("p").get<std::size_t>(), t.at("q").get<std::size_t>()});
    mu.text = m.at("text").get<std::string>();
    r.mu = mu;
  }
  if (j.contains("decision")) {
    const auto& d = j.at("decision");
    r.decision = DecisionInfo{d.at("theorem").get<int>(), d.at("holds").get<bool>(), d.at("reason").get<std::string>()};
  }
  if (j.contains("prediction")) {
    const auto& pj = j.at("prediction");
    PredictionInfo p;
    p.gammas = pj.at("gammas").get<std::vector<std::string>>();
    p.given_gammas = pj.at("given_gammas").get<std::size_t>();
    get(pj, "degree", p.degree);
    get(pj, "word_map_degree", p.word_map_degree);
    get(pj, "kappa", p.kappa);
    get(pj, "kappa_constraints", p.kappa_constraints);
    get(pj, "wedge", p.wedge);
    r.prediction = p;
  }
  if (j.contains("witness")) {
    const auto& wj = j.at("witness");
    WitnessInfo w;
    w.origin = wj.at("origin").get<std::string>();
    for (const auto& c : wj.at("constraints"))
      w.constraints.push_back({c.at("word").get<std::string>(), c.at("target").get<std::array<double, 4>>()});
    w.success = wj.at("success").get<bool>();
    w.rep = wj.at("rep").get<std::vector<std::array<double, 4>>>();
    w.residuals = wj.at("residuals").get<std::vector<double>>();
    w.max_residual = wj.at("max_residual").get<double>();
    w.best_residual = wj.at("best_residual").get<double>();
    w.restarts_used = wj.at("restarts_used").get<std::size_t>();
    r.witness = w;
  }
  if (j.contains("w2")) {
    const auto& wj = j.at("w2");
    r.w2 = W2Info{wj.at("eta").get<std::vector<int>>(), wj.at("lift_signs").get<std::vector<int>>(),
                  wj.at("matches_eta").get<bool>(), wj.at("cycles").get<std::vector<std::vector<int>>>(),
                  wj.at("pairings").get<std::vector<int>>()};
  }
  if (j.contains("torus")) {
    const auto& t = j.at("torus");
    TorusInfo ti{t.at("nonabelian").get<bool>(), t.at("in_maximal_torus").get<bool>(),
                 t.at("images_commute").get<bool>(), std::nullopt};
    get(t, "pi_rotation_axes_orthogonal", ti.pi_rotation_axes_orthogonal);
    r.torus = ti;
  }
  if (j.contains("degree")) {
    const auto& dj = j.at("degree");
    DegreeInfo d;
    d.words = dj.at("words").get<std::vector<std::string>>();
    d.rank_m = dj.at("rank").get<unsigned>();
    d.formula = dj.at("formula").get<std::string>();
    if (dj.contains("empirical")) {
      const auto& ej = dj.at("empirical");
      EmpiricalInfo e;
      get(ej, "degree", e.degree);
      e.target = ej.at("target").get<std::array<double, 4>>();
      e.target_resampled = ej.at("target_resampled").get<bool>();
      e.solutions = ej.at("solutions").get<std::size_t>();
      e.positive = ej.at("positive").get<std::size_t>();
      e.negative = ej.at("negative").get<std::size_t>();
      e.starts = ej.at("starts").get<std::size_t>();
      e.verdict = ej.at("verdict").get<std::string>();
      d.empirical = e;
    }
    r.degree = d;
  }
  return r;
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << r.command << ' ' << r.input << '\n';
  if (!r.flags.empty()) {
    out << "options:";
    for (const auto& [k, v] : r.flags) out << ' ' << k << '=' << v;
    out << '\n';
  }
  if (r.profile)
    out << "b1=" << r.profile->b1 << " b2=" << r.profile->b2 << " |T|=" << r.profile->torsion_order << '\n';
  if (r.sigma) {
    out << "sigma = (";
    for (std::size_t i = 0; i < r.sigma->size(); ++i) out << (i ? ", " : "") << (*r.sigma)[i];
    out << ")\n";
  }
  if (r.mu) out << "mu = " << r.mu->text << '\n';
  if (r.decision)
    out << "theorem " << r.decision->theorem << ": " << (r.decision->holds ? "HOLDS" : "FAILS") << " ("
        << r.decision->reason << ")\n";
  if (r.prediction) {
    const auto& p = *r.prediction;
    if (!p.gammas.empty()) {
      out << "gammas:";
      for (std::size_t i = 0; i < p.gammas.size(); ++i)
        out << (i ? ", " : " ") << p.gammas[i] << (i >= p.given_gammas ? " (completion)" : "");
      out << '\n';
    }
    if (p.wedge) out << "mu ^ gammas = " << *p.wedge << '\n';
    if (p.degree) out << "predicted degree = " << *p.degree << '\n';
    if (p.word_map_degree) out << "word map degree = " << *p.word_map_degree << '\n';
    if (p.kappa) out << "prediction |T| det(mu ^ gammas) = " << *p.kappa << '\n';
    if (p.kappa_constraints) out << "kappa(constraints) = " << *p.kappa_constraints << '\n';
  }
  if (r.witness) {
    const auto& w = *r.witness;
    out << "system (" << w.origin << "):\n";
    for (const auto& c : w.constraints)
      out << "  " << c.word << " = (" << fmt(c.target[0]) << ", " << fmt(c.target[1]) << ", " << fmt(c.target[2])
          << ", " << fmt(c.target[3]) << ")\n";
    if (w.success) {
      out << "witness found after " << w.restarts_used << " restart(s), max residual " << fmt(w.max_residual, "%.3e")
          << '\n';
      for (std::size_t i = 0; i < w.rep.size(); ++i) {
        const auto& q = w.rep[i];
        const std::string name = i < r.generators.size() ? r.generators[i] : "x" + std::to_string(i + 1);
        out << "  " << name << " -> " << fmt(q[0]) << ' ' << fmt(q[1]) << ' ' << fmt(q[2]) << ' ' << fmt(q[3]) << '\n';
      }
      out << "residuals:";
      for (double x : w.residuals) out << ' ' << fmt(x, "%.3e");
      out << '\n';
    } else {
      out << "no witness after " << w.restarts_used << " restart(s); best residual " << fmt(w.best_residual, "%.3e")
          << '\n';
    }
  }
  if (r.w2) {
    out << "w2: eta=" << bits(r.w2->eta) << " lift signs=" << bits(r.w2->lift_signs)
        << (r.w2->matches_eta ? " (matches eta)" : " (DOES NOT match eta)") << '\n';
    for (std::size_t i = 0; i < r.w2->cycles.size(); ++i)
      out << "  <w2, " << bits(r.w2->cycles[i]) << "> = " << r.w2->pairings[i] << (i == 0 ? "  (sigma mod 2)" : "")
          << '\n';
  }
  if (r.torus) {
    out << "nonabelian (not in a maximal torus): " << yes(r.torus->nonabelian)
        << "; images commute: " << yes(r.torus->images_commute);
    if (r.torus->pi_rotation_axes_orthogonal)
      out << "; pi-rotations with orthogonal axes: " << yes(*r.torus->pi_rotation_axes_orthogonal);
    out << '\n';
  }
  if (r.degree) {
    const auto& d = *r.degree;
    out << "degree formula (rank " << d.rank_m << ") = " << d.formula << '\n';
    if (d.empirical) {
      const auto& e = *d.empirical;
      out << "empirical = " << (e.degree ? (*e.degree > 0 ? "+" : "") + std::to_string(*e.degree) : "n/a") << " ("
          << e.positive << " positive, " << e.negative << " negative, " << e.starts << " starts"
          << (e.target_resampled ? ", target resampled" : "") << ") " << e.verdict << '\n';
    }
  }
  out << "time " << fmt(r.elapsed_seconds, "%.3f") << " s\n";
  return out.str();
}

}  // namespace repwitness::cli
