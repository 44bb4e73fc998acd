#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/presentation_file.hpp"
#include "repwitness/errors.hpp"

using namespace repwitness;
using namespace repwitness::cli;

namespace {

const std::filesystem::path kFixtures = REPWITNESS_FIXTURES;

std::string fixture(const char* name) { return (kFixtures / name).string(); }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "repwitness");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("repwitness_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("text presentation format") {
  const auto f = parse_presentation_text(
      "# comment\n"
      "generators: a b  # trailing comment\n"
      "\n"
      "relator: [a,b]\n"
      "gamma: a\n"
      "target: 0 0 1 0\n"
      "eta: 1\n"
      "seed: 18446744073709551615\n"
      "budget: 7\n");
  CHECK(f.generators == std::vector<std::string>{"a", "b"});
  CHECK(f.relators == std::vector<std::string>{"[a,b]"});
  CHECK(f.gammas == std::vector<std::string>{"a"});
  CHECK(f.targets.size() == 1);
  CHECK(f.eta == std::optional<std::vector<int>>(std::vector<int>{1}));
  CHECK(f.seed == std::optional<std::uint64_t>(18446744073709551615ULL));
  CHECK(f.budget == std::optional<std::size_t>(7));
  CHECK(parse_presentation_text(to_text(f)) == f);
}

TEST_CASE("text presentation errors report the line") {
  auto line_of = [](const char* text) {
    try {
      (void)parse_presentation_text(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::size_t{999};
  };
  CHECK(line_of("generators: x1\nbogus: 1\n") == 2);
  CHECK(line_of("generators: x1\nrelator x1\n") == 2);
  CHECK(line_of("generators: x1\n\ntarget: 1 0 0\n") == 3);
  CHECK(line_of("generators: x1\neta: 2\n") == 2);
  CHECK(line_of("generators: x1\nseed: -1\n") == 2);
  CHECK(line_of("generators: x1\ngenerators: x2\n") == 2);
  CHECK(line_of("relator: x1\n") == 0);
}

TEST_CASE("JSON presentation format is equivalent") {
  const auto text = parse_presentation_text("generators: x1 x2\nrelator: [x1,x2]\neta: 1\n");
  const auto json = parse_presentation_json(R"({"generators": ["x1", "x2"], "relators": ["[x1,x2]"], "eta": [1]})");
  CHECK(text == json);
  CHECK(load_presentation(fixture("hopf.json")) == load_presentation(fixture("hopf.grp")));
  CHECK_THROWS_AS((void)parse_presentation_json("{"), ParseError);
  CHECK_THROWS_AS((void)parse_presentation_json(R"({"relators": []})"), ParseError);
  CHECK_THROWS_AS((void)parse_presentation_json(R"({"generators": ["x1"], "extra": 1})"), ParseError);
  CHECK_THROWS_AS((void)parse_presentation_json(R"({"generators": "x1"})"), ParseError);
  CHECK_THROWS_AS((void)load_presentation(fixture("missing.grp")), IoError);
}

TEST_CASE("compile checks consistency") {
  auto f = parse_presentation_text("generators: x1 x1\n");
  CHECK_THROWS_AS((void)compile(f), ParseError);
  f = parse_presentation_text("generators: x1 x2\ngamma: x1\ntarget: 1 0 0 0\ntarget: 1 0 0 0\n");
  CHECK_THROWS_AS((void)compile(f), ParseError);
  f = parse_presentation_text("generators: x1\ngamma: x1\ntarget: 2 0 0 0\n");
  CHECK_THROWS_AS((void)compile(f), ParseError);
  f = parse_presentation_text("generators: x1\nrelator: x1\neta: 1 1\n");
  CHECK_THROWS_AS((void)compile(f), ParseError);
  f = parse_presentation_text("generators: x1\nrelator: x2\n");
  CHECK_THROWS_AS((void)compile(f), ParseError);
  f = parse_presentation_text("generators: 1a\n");
  CHECK_THROWS_AS((void)compile(f), ParseError);
  f = parse_presentation_text("generators: s t\nrelator: s t s^-1 t^-2\ngamma: s\n");
  const auto c = compile(f);
  CHECK(c.presentation.n == 2);
  CHECK(c.gammas.front() == Word::generator(2, 1));
}

TEST_CASE("split_words respects brackets") {
  CHECK(split_words("x1 x2, x2") == std::vector<std::string>{"x1 x2", " x2"});
  CHECK(split_words("[x1,x2] x3, x3") == std::vector<std::string>{"[x1,x2] x3", " x3"});
  CHECK(split_words("x1") == std::vector<std::string>{"x1"});
}

TEST_CASE("analyze") {
  auto r = run_cli({"analyze", fixture("hopf.grp")});
  CHECK(r.code == 0);
  CHECK(r.out.find("b1=2 b2=1 |T|=1") != std::string::npos);
  CHECK(r.out.find("mu = x1^x2") != std::string::npos);
  r = run_cli({"analyze", fixture("cyclic5.grp")});
  CHECK(r.code == 0);
  CHECK(r.out.find("b1=0 b2=0 |T|=5") != std::string::npos);
  r = run_cli({"analyze", fixture("genus2.grp")});
  CHECK(r.out.find("mu = x1^x3 + x2^x4") != std::string::npos);
  CHECK(run_cli({"analyze", fixture("missing.grp")}).code == 3);
  CHECK(run_cli({"analyze", temp_file("bad.grp", "generators: x1\nrelator: x1^\n")}).code == 2);
  CHECK(run_cli({"analyze"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("analyze JSON round-trips to the in-memory report") {
  for (const char* name : {"hopf.grp", "genus2.grp", "torsion3.grp", "cyclic5.grp", "hopf.json"}) {
    const Report direct = analyze_report({fixture(name)});
    const auto r = run_cli({"analyze", fixture(name), "--json"});
    REQUIRE(r.code == 0);
    CHECK(report_from_json(nlohmann::json::parse(r.out)) == direct);
    CHECK(report_from_json(to_json(direct)) == direct);
  }
}

TEST_CASE("check") {
  auto r = run_cli({"check", fixture("hopf.grp"), "--theorem", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("prediction |T| det(mu ^ gammas) = 1") != std::string::npos);
  CHECK(run_cli({"check", fixture("hopf.grp"), "--theorem", "1"}).code == 1);
  CHECK(run_cli({"check", fixture("genus2.grp"), "--theorem", "2"}).code == 0);
  CHECK(run_cli({"check", fixture("genus2_dependent.grp"), "--theorem", "2"}).code == 1);
  CHECK(run_cli({"check", fixture("cyclic5_free.grp"), "--theorem", "1"}).code == 0);
  r = run_cli({"check", fixture("torsion4.grp"), "--theorem", "1", "--rank", "3", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["prediction"]["degree"] == "64");
  CHECK(run_cli({"check", fixture("hopf.grp"), "--theorem", "3"}).code == 2);
  CHECK(run_cli({"check", fixture("hopf.grp")}).code == 2);
}

TEST_CASE("solve") {
  auto r = run_cli({"solve", fixture("hopf.grp"), "--theorem", "2", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("<w2, 1> = 1") != std::string::npos);
  CHECK(r.out.find("nonabelian (not in a maximal torus): yes") != std::string::npos);
  CHECK(run_cli({"solve", fixture("free2.grp"), "--theorem", "1"}).code == 0);
  CHECK(run_cli({"solve", fixture("mrho.grp"), "--raw"}).code == 0);
  CHECK(run_cli({"solve", fixture("genus2.grp"), "--theorem", "2"}).code == 0);
  CHECK(run_cli({"solve", fixture("torsion3.grp"), "--theorem", "2", "--json"}).code == 0);
  CHECK(run_cli({"solve", fixture("hopf.grp"), "--theorem", "1"}).code == 4);
  CHECK(run_cli({"solve", fixture("genus2_dependent.grp"), "--theorem", "2"}).code == 4);
  CHECK(run_cli({"solve", fixture("free2.grp"), "--theorem", "2"}).code == 4);
  CHECK(run_cli({"solve", fixture("hopf.grp")}).code == 4);
  CHECK(run_cli({"solve", fixture("hopf.grp"), "--raw", "--theorem", "2"}).code == 2);
  CHECK(run_cli({"solve", fixture("hopf.grp"), "--theorem", "2", "--seed", "-3"}).code == 2);
  CHECK(run_cli({"solve", fixture("missing.grp"), "--raw"}).code == 3);
}

TEST_CASE("solve: budget exhaustion prints no witness") {
  const auto path = temp_file("impossible.grp", "generators: x1\nrelator: x1\nrelator: x1\neta: 1 0\n");
  const auto r = run_cli({"solve", path, "--raw", "--budget", "2", "--iterations", "10", "--json"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["witness"]["success"] == false);
  CHECK(j["witness"]["rep"].empty());
  const auto t = run_cli({"solve", path, "--raw", "--budget", "2", "--iterations", "10"});
  CHECK(t.out.find("no witness") != std::string::npos);
  CHECK(t.out.find("x1 ->") == std::string::npos);
}

TEST_CASE("solve JSON is byte-identical for a fixed seed") {
  for (const char* name : {"hopf.grp", "twisted.grp", "genus3.grp"}) {
    const auto a = run_cli({"solve", fixture(name), "--theorem", "2", "--seed", "7", "--json"});
    const auto b = run_cli({"solve", fixture(name), "--theorem", "2", "--seed", "7", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["flags"]["seed"] == "7");
    CHECK(report_from_json(j) == solve_report([&] {
            SolveArgs s;
            s.path = fixture(name);
            s.theorem = 2;
            s.seed = 7;
            return s;
          }()));
  }
}

TEST_CASE("degree") {
  auto r = run_cli({"degree", "x1^3", "--rank", "1", "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("degree formula (rank 1) = 3") != std::string::npos);
  CHECK(r.out.find("empirical = +3") != std::string::npos);
  CHECK(r.out.find("AGREE") != std::string::npos);
  r = run_cli({"degree", "x1,x2", "--rank", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("= 1") != std::string::npos);
  r = run_cli({"degree", "x1 x2, x2", "--rank", "2", "--json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["degree"]["formula"] == "1");
  CHECK(run_cli({"degree", "x1", "x2"}).code == 0);
  CHECK(run_cli({"degree", "x1, x3"}).code == 2);
  CHECK(run_cli({"degree", "x1 x2"}).code == 2);
  CHECK(run_cli({"degree", "x1,x2", "--verify"}).code == 4);
  CHECK(run_cli({"degree", "x1", "--rank", "0"}).code == 2);
}

}  // TEST_SUITE
