#include "cli/presentation_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "repwitness/errors.hpp"

namespace repwitness::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, line);
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return value;
}

double parse_real(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    fail(line, "bad real '" + tok + "'");
  }
  if (used != tok.size() || !std::isfinite(v)) fail(line, "bad real '" + tok + "'");
  return v;
}

int parse_bit(std::string_view tok, std::size_t line) {
  if (tok == "0") return 0;
  if (tok == "1") return 1;
  fail(line, "eta entries must be 0 or 1, got '" + std::string(tok) + "'");
}

}  // namespace

PresentationFile parse_presentation_text(std::string_view text) {
  PresentationFile f;
  bool have_generators = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail(line_no, "expected 'key: value'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));

    if (key == "generators") {
      if (have_generators) fail(line_no, "duplicate generators line");
      f.generators = split_ws(value);
      if (f.generators.empty()) fail(line_no, "no generators");
      have_generators = true;
    } else if (key == "relator") {
      if (value.empty()) fail(line_no, "empty relator");
      f.relators.emplace_back(value);
    } else if (key == "gamma") {
      if (value.empty()) fail(line_no, "empty gamma");
      f.gammas.emplace_back(value);
    } else if (key == "target") {
      const auto toks = split_ws(value);
      if (toks.size() != 4) fail(line_no, "target needs four reals");
      std::array<double, 4> q{};
      for (std::size_t i = 0; i < 4; ++i) q[i] = parse_real(toks[i], line_no);
      f.targets.push_back(q);
    } else if (key == "eta") {
      if (f.eta) fail(line_no, "duplicate eta line");
      std::vector<int> bits;
      for (const auto& t : split_ws(value)) bits.push_back(parse_bit(t, line_no));
      f.eta = std::move(bits);
    } else if (key == "seed") {
      f.seed = parse_number<std::uint64_t>(value, line_no, "seed");
    } else if (key == "budget") {
      f.budget = parse_number<std::size_t>(value, line_no, "budget");
    } else {
      fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_generators) throw ParseError("missing 'generators:' line", 0);
  return f;
}

PresentationFile parse_presentation_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  PresentationFile f;
  try {
    if (!j.is_object()) throw ParseError("expected a JSON object", 0);
    if (!j.contains("generators")) throw ParseError("missing \"generators\"", 0);
    f.generators = j.at("generators").get<std::vector<std::string>>();
    if (f.generators.empty()) throw ParseError("no generators", 0);
    if (j.contains("relators")) f.relators = j.at("relators").get<std::vector<std::string>>();
    if (j.contains("gammas")) f.gammas = j.at("gammas").get<std::vector<std::string>>();
    if (j.contains("targets")) f.targets = j.at("targets").get<std::vector<std::array<double, 4>>>();
    if (j.contains("eta")) {
      f.eta = j.at("eta").get<std::vector<int>>();
      for (int b : *f.eta)
        if (b != 0 && b != 1) throw ParseError("eta entries must be 0 or 1", 0);
    }
    if (j.contains("seed")) f.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("budget")) f.budget = j.at("budget").get<std::size_t>();
    for (const auto& [key, _] : j.items()) {
      static const std::set<std::string> known{"generators", "relators", "gammas", "targets", "eta", "seed", "budget"};
      if (!known.count(key)) throw ParseError("unknown key \"" + key + "\"", 0);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed presentation: ") + e.what(), 0);
  }
  return f;
}

PresentationFile load_presentation(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  const std::string text = buf.str();
  if (path.extension() == ".json") return parse_presentation_json(text);
  return parse_presentation_text(text);
}

std::string to_text(const PresentationFile& f) {
  std::ostringstream out;
  out.precision(17);
  out << "generators:";
  for (const auto& g : f.generators) out << ' ' << g;
  out << '\n';
  for (const auto& r : f.relators) out << "relator: " << r << '\n';
  for (const auto& g : f.gammas) out << "gamma: " << g << '\n';
  for (const auto& t : f.targets) out << "target: " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
  if (f.eta) {
    out << "eta:";
    for (int b : *f.eta) out << ' ' << b;
    out << '\n';
  }
  if (f.seed) out << "seed: " << *f.seed << '\n';
  if (f.budget) out << "budget: " << *f.budget << '\n';
  return out.str();
}

CompiledPresentation compile(const PresentationFile& f, const ParseOptions& options) {
  std::set<std::string> seen;
  for (const auto& g : f.generators) {
    if (!seen.insert(g).second) throw ParseError("duplicate generator name '" + g + "'", 0);
    const bool ident = !g.empty() && (std::isalpha(static_cast<unsigned char>(g[0])) || g[0] == '_') &&
                       std::all_of(g.begin(), g.end(), [](char c) {
                         return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                       });
    if (!ident) throw ParseError("generator name '" + g + "' is not an identifier", 0);
  }
  auto parse = [&](const std::string& text, const char* what, std::size_t idx) {
    try {
      return parse_word(text, f.generators, options);
    } catch (const ParseError& e) {
      throw ParseError(std::string(what) + " " + std::to_string(idx + 1) + ": " + e.message(), e.position());
    }
  };
  CompiledPresentation c;
  std::vector<Word> rels;
  for (std::size_t i = 0; i < f.relators.size(); ++i) rels.push_back(parse(f.relators[i], "relator", i));
  for (std::size_t i = 0; i < f.gammas.size(); ++i) c.gammas.push_back(parse(f.gammas[i], "gamma", i));
  if (!f.targets.empty() && f.targets.size() != f.gammas.size())
    throw ParseError("need one target per gamma (" + std::to_string(f.gammas.size()) + " gammas, " +
                         std::to_string(f.targets.size()) + " targets)",
                     0);
  for (const auto& t : f.targets) {
    const Quat q{t[0], t[1], t[2], t[3]};
    if (std::abs(q.norm() - 1.0) > kTolerances.unit_input) throw ParseError("target is not a unit quaternion", 0);
    c.targets.push_back(q);
  }
  if (f.eta && f.eta->size() != f.relators.size())
    throw ParseError("eta needs one entry per relator", 0);
  c.presentation = Presentation(f.generators.size(), std::move(rels), f.generators);
  return c;
}

}  // namespace repwitness::cli
