#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctlstar2ltl/cli.hpp"

using namespace ctlstar2ltl;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("ctlstar2ltl_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Run {
  int rc;
  std::string out, err;
};

Run run(RunConfig cfg) {
  std::ostringstream out, err;
  const int rc = run_command(cfg, out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kSpecs = SPECS_DIR;

RunConfig config(const std::string& command, const std::string& spec) {
  RunConfig c;
  c.command = command;
  c.spec_path = spec;
  return c;
}

}  // namespace

TEST_CASE("parse_k") {
  CHECK(parse_k("auto").mode == KMode::Auto);
  CHECK(parse_k("sweep").mode == KMode::Sweep);
  CHECK(parse_k("3").mode == KMode::Fixed);
  CHECK(parse_k("3").value == 3);
  CHECK_THROWS(parse_k("0"));
  CHECK_THROWS(parse_k("-1"));
  CHECK_THROWS(parse_k("2x"));
  CHECK_THROWS(parse_k(""));
}

TEST_CASE("bound schedule") {
  CHECK(bound_schedule(8) == std::vector<unsigned>{1, 2, 4, 8});
  CHECK(bound_schedule(5) == std::vector<unsigned>{1, 2, 4, 5});
  CHECK(bound_schedule(1) == std::vector<unsigned>{1});
}

TEST_CASE("k values") {
  const Spec sog = load_spec(kSpecs + "/stay_or_grant.spec");
  CHECK(k_values(sog, {KMode::Auto, 0}) == std::vector<unsigned>{5});
  CHECK(k_values(sog, {KMode::Sweep, 0}) == std::vector<unsigned>{1, 2, 3, 4, 5});
  CHECK(k_values(sog, {KMode::Fixed, 2}) == std::vector<unsigned>{2});
  const Spec ltl = parse_spec("INPUTS r; OUTPUTS g; FORMULA A G (r -> X g);");
  CHECK(k_values(ltl, {KMode::Sweep, 0}) == std::vector<unsigned>{0});
}

TEST_CASE("convert") {
  Scratch s;
  auto c = config("convert", kSpecs + "/two_grants.spec");
  c.k = KSetting{KMode::Fixed, 1};
  c.out_path = s.path("two.ltl");
  const Run r = run(c);
  CHECK(r.rc == 0);
  CHECK(r.out.find("# k=1\n") != std::string::npos);
  CHECK(r.out.find("nbw=") != std::string::npos);
  CHECK(slurp(c.out_path) == r.out);
  // the output is a valid LTL spec
  const LtlSpec l = load_ltl_spec(c.out_path);
  CHECK(l.outputs.size() == 3);

  auto plain = config("convert", s.file("ltl.spec", "INPUTS r; OUTPUTS g; FORMULA A G (r -> X g);"));
  plain.inline_universal = true;
  const Run p = run(plain);
  CHECK(p.rc == 0);
  CHECK(p.out.find("# k=0\n") != std::string::npos);
  CHECK(p.out.find("FORMULA G (!r || X g);") != std::string::npos);
}

TEST_CASE("input errors") {
  Scratch s;
  CHECK(run(config("convert", s.file("bad.spec", "INPUTS r; OUTPUTS g FORMULA g;"))).rc == 2);
  CHECK(run(config("synth", s.path("missing.spec"))).rc == 2);
  CHECK(run(config("frobnicate", kSpecs + "/stay_or_grant.spec")).rc == 2);
  const Run coll = run(config("convert", s.file("coll.spec", "INPUTS r; OUTPUTS g, d1__r; FORMULA E F g;")));
  CHECK(coll.rc == 3);
  CHECK(coll.err.find("error:") == 0);
}

TEST_CASE("synth stay-or-grant writes machine, projection and transcript") {
  Scratch s;
  auto c = config("synth", kSpecs + "/stay_or_grant.spec");
  c.out_path = s.path("sog.moore");
  c.dot_path = s.path("sog.dot");
  const Run r = run(c);
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("REALISABLE k=2 b=1 states=2") != std::string::npos);
  const MooreMachine p = load_machine(c.out_path + ".projected");
  CHECK(p.size() == 2);
  CHECK(p.outputs == std::vector<std::string>{"g"});
  CHECK(slurp(c.out_path + ".check").rfind("HOLDS\n", 0) == 0);
  CHECK(slurp(c.dot_path).find("digraph") != std::string::npos);

  // the projection passes the checker command too
  RunConfig chk;
  chk.command = "check";
  chk.machine_path = c.out_path + ".projected";
  chk.spec_path = c.spec_path;
  CHECK(run(chk).rc == 0);
  // and the full machine satisfies the reduced formula at its k
  auto conv = config("convert", c.spec_path);
  conv.k = KSetting{KMode::Fixed, 2};
  conv.out_path = s.path("sog.ltl");
  REQUIRE(run(conv).rc == 0);
  chk.machine_path = c.out_path;
  chk.spec_path = conv.out_path;
  chk.ltl_mode = true;
  CHECK(run(chk).rc == 0);
}

TEST_CASE("synth is deterministic") {
  auto c = config("synth", kSpecs + "/two_grants.spec");
  CHECK(run(c).out == run(c).out);
}

TEST_CASE("synth reports exhausted bounds") {
  auto c = config("synth", kSpecs + "/always_grant_escape.spec");
  c.max_counter = 4;
  const Run r = run(c);
  CHECK(r.rc == 1);
  CHECK(r.out.find("UNREALISABLE-UPTO b=4") != std::string::npos);
  CHECK(r.out.find("# k=3 b=4 unrealisable") != std::string::npos);
}

TEST_CASE("check verdicts") {
  Scratch s;
  RunConfig c;
  c.command = "check";
  c.machine_path = std::string(TEST_DATA_DIR) + "/stay_or_grant.moore";
  c.spec_path = kSpecs + "/stay_or_grant.spec";
  CHECK(run(c).rc == 0);
  c.spec_path = s.file("ag.spec", "INPUTS r; OUTPUTS g; FORMULA A G g;");
  const Run fail = run(c);
  CHECK(fail.rc == 1);
  CHECK(fail.out.find("counterexample f0") != std::string::npos);
  c.ltl_mode = true;
  c.spec_path = s.file("agl.spec", "INPUTS r; OUTPUTS g; FORMULA G g;");
  const Run lf = run(c);
  CHECK(lf.rc == 1);
  CHECK(lf.out.find("counterexample") != std::string::npos);
  c.spec_path = s.file("other.spec", "INPUTS r; OUTPUTS h; FORMULA G h;");
  CHECK(run(c).rc == 2);
}

TEST_CASE("dualize") {
  auto c = config("dualize", kSpecs + "/always_grant_escape.spec");
  c.k = KSetting{KMode::Fixed, 2};
  const Run plain = run(c);
  CHECK(plain.rc == 0);
  CHECK(plain.out.find("OUTPUTS r;") != std::string::npos);
  c.solve = true;
  const Run solved = run(c);
  CHECK(solved.rc == 0);
  CHECK(solved.out.find("DUAL-REALISABLE b=1 states=2") != std::string::npos);
  CHECK(solved.out.find("MEALY") != std::string::npos);

  Scratch s;
  auto t = config("dualize", s.file("true.spec", "INPUTS r; OUTPUTS g; FORMULA true;"));
  t.solve = true;
  t.max_counter = 4;
  const Run tr = run(t);
  CHECK(tr.rc == 1);
  CHECK(tr.out.find("UNREALISABLE-UPTO b=4") != std::string::npos);
}

TEST_CASE("oracle on the pattern corpus") {
  RunConfig c;
  c.command = "oracle";
  c.count = 0;  // patterns only
  const auto corpus = oracle_corpus(c);
  CHECK(corpus.size() > 40);
  const OracleReport r = run_oracle(c);
  CHECK(r.completeness_violations == 0);
  CHECK(r.soundness_violations == 0);
  CHECK(r.inconclusive == 0);
}

TEST_CASE("oracle cases") {
  RunConfig c;
  const OracleCase two = oracle_case("two", load_spec(kSpecs + "/two_grants.spec"), c);
  CHECK(two.ctl_realisable);
  CHECK(two.ctl_size == 2);
  CHECK(two.ltl_realisable);
  CHECK(two.ltl_size == 3);
  const OracleCase no = oracle_case("false", parse_spec("INPUTS r; OUTPUTS g; FORMULA false;"), c);
  CHECK_FALSE(no.ctl_realisable);
  CHECK_FALSE(no.ltl_realisable);
  CHECK_FALSE(no.ltl_inconclusive);
}

TEST_CASE("oracle corpus is seeded") {
  RunConfig a;
  a.count = 80;
  RunConfig b = a;
  b.seed = 2;
  const auto x = oracle_corpus(a), y = oracle_corpus(a), z = oracle_corpus(b);
  REQUIRE(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].second.formula == y[i].second.formula);
  bool differs = x.size() != z.size();
  for (std::size_t i = 0; !differs && i < x.size(); ++i) differs = !(x[i].second.formula == z[i].second.formula);
  CHECK(differs);
}
