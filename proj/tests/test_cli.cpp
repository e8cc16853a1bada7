#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = agt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(AGT_SAMPLES_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check reports all three properties") {
  const auto r = run({"check", "aleshin"});
  CHECK(r.code == 0);
  CHECK(r.out.find("invertible: yes\nreversible: yes\nbireversible: yes\n") != std::string::npos);
  const auto j = nlohmann::json::parse(run({"--format", "json", "check", "--n", "3", "--active", "c,d1,d2"}).out);
  CHECK(j["bireversible"] == true);
  CHECK(j["states"] == 6);
}

TEST_CASE("presets and sample files agree") {
  for (const std::string name : {"aleshin", "f4", "f6"}) {
    CHECK(run({"pm", name}).out == run({"pm", sample(name + ".mealy")}).out);
  }
  // Sample files are the canonical text plus leading comments.
  auto strip = [](const std::string& text) {
    std::istringstream in(text);
    std::string out;
    for (std::string line; std::getline(in, line);)
      if (line.empty() || line[0] != '#') out += line + '\n';
    return out;
  };
  CHECK(strip(slurp(sample("f4.mealy"))) == run({"family", "--n", "1", "--active", "d1"}).out);
  CHECK(strip(slurp(sample("f6.mealy"))) == run({"family", "--n", "1", "--active", "d1", "--prime"}).out);
  CHECK(strip(slurp(sample("six_state.mealy"))) == run({"family", "--n", "3", "--active", "d3"}).out);
}

TEST_CASE("act, section, trivial and minimize") {
  CHECK(run({"act", "aleshin", "--state", "b", "--input", "010"}).out == "100\n");
  CHECK(run({"act", "f4", "--word", "a a^-1", "--input", "0110"}).out == "0110\n");
  CHECK(run({"trivial", "f4", "--word", "a a^-1"}).out == "trivial\n");
  CHECK(run({"trivial", "f4", "--word", "a b"}).out == "nontrivial\n");
  CHECK(run({"trivial", "f4", "--word", "a b"}).code == 0);
  const auto m = run({"minimize", "f4", "--word", "d1 d1^-1"});
  CHECK(m.out == "# start s0\nalphabet 0 1\nstates s0\ntrans s0 0 s0 0\ntrans s0 1 s0 1\n");
  // Sections of a single state are the successor states.
  CHECK(run({"section", "aleshin", "--word", "a", "--at", "0"}).out == "c\n");
  CHECK(run({"section", "aleshin", "--word", "a b", "--at", "0"}).out == "b b\n");
}

TEST_CASE("section output matches the library") {
  const agt::Mealy f4 = agt::family_f(agt::FamilySpec::four_state());
  const auto word = agt::parse_signed_word("a b^-1 c");
  const agt::AutomatonGroup g(f4);
  const auto u = f4.alphabet().encode_text("0110");
  const auto sec = agt::section(g.element(word), u);
  const auto printed = run({"section", "f4", "--word", "a b^-1 c", "--at", "0110"}).out;
  const auto back = agt::parse_signed_word(printed);
  CHECK(agt::equivalent(sec, g.element(back)));
}

TEST_CASE("invert, pm, dual and dot print parseable text") {
  CHECK(agt::parse_mealy(run({"invert", "aleshin"}).out) == agt::inverse_mealy(agt::aleshin()));
  CHECK(agt::parse_mealy(run({"pm", "f4"}).out) == agt::pm_union(agt::family_f(agt::FamilySpec::four_state())));
  CHECK(agt::parse_dual(run({"dual", "aleshin"}).out) == agt::dual(agt::aleshin()));
  CHECK(agt::parse_dual(run({"dual", "aleshin", "--pm"}).out) == agt::dual_of_pm(agt::aleshin()));
  CHECK(run({"dot", "f6"}).out.rfind("digraph", 0) == 0);
}

TEST_CASE("orbit output") {
  const auto r = run({"orbit", "aleshin", "--word", "a b"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("orbit seed=\"a b\" size=9\n", 0) == 0);
  const auto j = nlohmann::json::parse(run({"--format", "json", "orbit", "f4", "--word", "a b", "--gens", "1"}).out);
  CHECK(j["generators"] == nlohmann::json::array({"1"}));
}

TEST_CASE("verify suites pass on good inputs") {
  CHECK(run({"verify", "lemmas"}).code == 0);
  CHECK(run({"verify", "lemmas", "--n", "3", "--active", "d3"}).code == 0);
  CHECK(run({"verify", "transitivity", "--max-pattern", "3"}).code == 0);
  CHECK(run({"verify", "transitivity", "--pattern", "+-+-"}).code == 0);
  CHECK(run({"verify", "freeness", "--n", "1", "--active", "d1", "--max-pattern", "4"}).code == 0);
  CHECK(run({"verify", "c2", "--max-len", "4"}).code == 0);
  CHECK(run({"verify", "dual-theorem", "--trials", "200", "--max-len", "6"}).code == 0);
  CHECK(run({"verify", "section4", "--trials", "20"}).code == 0);
  CHECK(run({"verify", "aleshin", "--max-pattern", "3"}).code == 0);
}

TEST_CASE("negative controls exit with code 2") {
  const auto m = run({"verify", "lemmas", "--n", "1", "--active", "c,d1", "--unchecked-parity"});
  CHECK(m.code == 2);
  CHECK(m.out.find("FAIL F0^(n+1) = G0") != std::string::npos);
  CHECK(run({"verify", "freeness", "--n", "1", "--active", "c,d1", "--unchecked-parity", "--max-pattern", "2"}).code == 2);
  const auto d = run({"verify", "dual-theorem", "--automaton", "f4", "--corrupt-dual"});
  CHECK(d.code == 2);
  CHECK(d.out.find("FAIL") != std::string::npos);
}

TEST_CASE("usage and input errors exit with code 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"verify", "nothing"}).code == 1);
  CHECK(run({"verify", "lemmas", "--n", "2", "--active", "d1"}).code == 1);
  CHECK(run({"verify", "lemmas", "--n", "1", "--active", "c,d1"}).code == 1);
  CHECK(run({"check", "/nonexistent/file"}).code == 1);
  CHECK(run({"act", "aleshin", "--state", "z", "--input", "0"}).code == 1);
  CHECK(run({"act", "aleshin", "--state", "a", "--input", "2"}).code == 1);
  CHECK(run({"check"}).code == 1);
  const auto e = run({"check", "aleshin", "--n", "1", "--active", "d1"});
  CHECK(e.code == 1);
  CHECK(e.err.find("error:") == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("orbit cap exits with code 3") {
  ::setenv("AGT_ORBIT_CAP", "5", 1);
  const auto r = run({"orbit", "f4", "--word", "a b c"});
  ::unsetenv("AGT_ORBIT_CAP");
  CHECK(r.code == 3);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("repeated runs give identical output") {
  const std::vector<std::vector<std::string>> cmds{
      {"verify", "freeness", "--max-pattern", "4", "--cross-check", "--jobs", "3"},
      {"--format", "json", "verify", "section4", "--seed", "9"},
      {"orbit", "f4", "--word", "c^-1 a b"},
  };
  for (const auto& c : cmds) CHECK(run(c).out == run(c).out);
  CHECK(run({"verify", "freeness", "--max-pattern", "4", "--cross-check", "--jobs", "1"}).out ==
        run({"verify", "freeness", "--max-pattern", "4", "--cross-check", "--jobs", "4"}).out);
}
