// End-to-end acceptance checks. One PASS/FAIL line per check, nonzero exit
// when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/cli.hpp"
#include "ctlstar2ltl/enumerate.hpp"
#include "generators.hpp"

using namespace ctlstar2ltl;
using namespace ctlstar2ltl::testing;

namespace {

const std::string kSpecs = SPECS_DIR;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::optional<MooreMachine> smallest_ctl(const Spec& s, unsigned max_states) {
  const CtlStarChecker c(s.formula, s.inputs, s.outputs);
  return smallest_model(s.inputs, s.outputs, max_states, [&](const MooreMachine& m) { return c.holds(m); });
}

std::optional<MooreMachine> smallest_ltl(const LtlSpec& s, unsigned max_states) {
  const LtlFastChecker c(s.formula, s.inputs, s.outputs);
  return smallest_model(s.inputs, s.outputs, max_states, [&](const MooreMachine& m) { return c.holds(m); });
}

std::string size_or_none(const std::optional<MooreMachine>& m) { return m ? std::to_string(m->size()) : "none"; }

Verdict stay_or_grant() {
  const Spec spec = load_spec(kSpecs + "/stay_or_grant.spec");
  const SynthRun run = synthesize(spec, RunConfig{});
  const auto brute = smallest_ctl(spec, 2);
  std::ostringstream d;
  d << "synth realisable=" << run.realisable;
  if (run.realisable)
    d << " k=" << run.k << " b=" << run.b << " projected=" << run.projected->size()
      << " check=" << (run.verification->holds ? "HOLDS" : "FAILS");
  d << " brute-force smallest=" << size_or_none(brute);
  const bool pass = run.realisable && run.verification->holds && run.projected->size() <= 2 && brute &&
                    brute->size() <= 2 && check_ctlstar(*brute, spec).holds;
  return {pass, d.str()};
}

Verdict two_grants() {
  const Spec spec = load_spec(kSpecs + "/two_grants.spec");
  const auto ctl = smallest_ctl(spec, 2);
  const unsigned K = static_cast<unsigned>(compute_k(spec));
  bool no_ltl2 = true;
  std::ostringstream d;
  d << "ctl smallest=" << size_or_none(ctl);
  for (unsigned k : {1U, K}) {
    const auto m = smallest_ltl(reduce(spec, {.k = k}).ltl(), 2);
    d << " ltl<=2@k=" << k << ":" << size_or_none(m);
    no_ltl2 = no_ltl2 && !m;
  }
  const SynthRun run = synthesize(spec, RunConfig{});
  d << " synth realisable=" << run.realisable;
  if (run.realisable) d << " k=" << run.k << " states=" << run.machine->size();
  const bool pass = ctl && ctl->size() == 2 && no_ltl2 && run.realisable && run.machine->size() == 3 &&
                    run.verification->holds;
  return {pass, d.str()};
}

Verdict unrealisable() {
  const Spec spec = load_spec(kSpecs + "/always_grant_escape.spec");
  RunConfig cfg;
  cfg.max_counter = 8;
  const SynthRun run = synthesize(spec, cfg);
  const auto brute = smallest_ctl(spec, 3);
  RunConfig dcfg;
  dcfg.k = KSetting{KMode::Fixed, 2};
  dcfg.solve = true;
  const DualRun dual = dualize_spec(spec, dcfg);
  std::ostringstream d;
  d << "synth realisable=" << run.realisable << " truncated=" << run.truncated << " cap=" << cfg.max_counter
    << " k<=" << run.steps.back().k << " ctl<=3=" << size_or_none(brute);
  bool dual_ok = dual.result && dual.result->realisable && dual.result->mealy;
  if (dual_ok) {
    d << " dual mealy states=" << dual.result->mealy->size();
    dual_ok = dual.result->mealy->size() == 2 &&
              check_ltl(letter_system(*dual.result->mealy), dual.dual.spec.formula).holds;
  }
  const bool pass = !run.realisable && !run.truncated && !brute && dual_ok;
  return {pass, d.str()};
}

Verdict oracle() {
  RunConfig cfg;
  cfg.count = 500;
  cfg.depth = 4;
  cfg.seed = 1;
  const OracleReport r = run_oracle(cfg);
  std::size_t ctl = 0, ltl = 0;
  for (const auto& c : r.cases) ctl += c.ctl_realisable, ltl += c.ltl_realisable;
  std::ostringstream d;
  d << "formulas=" << r.cases.size() << " ctl-realisable=" << ctl << " ltl-realisable=" << ltl
    << " completeness-violations=" << r.completeness_violations
    << " projection-violations=" << r.soundness_violations << " larger=" << r.larger
    << " inconclusive=" << r.inconclusive;
  const bool pass = r.cases.size() >= 200 && r.completeness_violations == 0 && r.soundness_violations == 0 &&
                    r.inconclusive == 0;
  return {pass, d.str()};
}

Verdict automata() {
  Rng rng(2024);
  const std::vector<std::string> props{"a", "b"};
  const Alphabet basis(props);
  std::size_t pairs = 0, mismatches = 0, accepted = 0;
  for (int i = 0; i < 250; ++i) {
    const Formula phi = to_pnf(random_ltl(rng, props, 8));
    const Nbw a = nbw_of_path_formula(phi, basis);
    for (int j = 0; j < 5; ++j) {
      const LassoWord w = random_lasso(rng, 2, 4, 4);
      const bool expected = eval_ltl_on_lasso(phi, basis, w);
      mismatches += accepts_lasso(a, w) != expected;
      accepted += expected;
      ++pairs;
    }
  }
  std::ostringstream d;
  d << "pairs=" << pairs << " accepted=" << accepted << " mismatches=" << mismatches;
  return {pairs >= 1000 && mismatches == 0, d.str()};
}

Verdict growth() {
  std::ostringstream d;
  bool pass = true;
  for (const char* name : {"stay_or_grant", "loop_arbiter2"}) {
    const Spec spec = load_spec(kSpecs + "/" + name + ".spec");
    const auto K = static_cast<unsigned>(compute_k(spec));
    const double s1 = static_cast<double>(formula_size_reduced(reduce(spec, {.k = 1})));
    const double sK = static_cast<double>(formula_size_reduced(reduce(spec, {.k = K})));
    const double ratio = sK / s1;
    pass = pass && ratio >= K / 2.0 && ratio <= 2.0 * K;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s k=%u size(1)=%.0f size(k)=%.0f ratio=%.2f; ", name, K, s1, sK, ratio);
    d << buf;
  }
  return {pass, d.str()};
}

Verdict arbiters() {
  std::ostringstream d;
  bool pass = true;
  for (const char* name : {"loop_arbiter2", "res_arbiter2"}) {
    const Spec spec = load_spec(kSpecs + "/" + name + ".spec");
    const SynthRun run = synthesize(spec, RunConfig{});
    d << name << " realisable=" << run.realisable;
    if (run.realisable) {
      d << " k=" << run.k << " b=" << run.b << " states=" << run.machine->size()
        << " projected=" << run.projected->size() << " check=" << (run.verification->holds ? "HOLDS" : "FAILS");
      pass = pass && run.machine->size() <= 8 && run.verification->holds;
    } else {
      pass = false;
    }
    d << "; ";
  }
  return {pass, d.str()};
}

Verdict duality() {
  Rng rng(77);
  const std::vector<std::string> props{"r", "g"};
  std::vector<MooreMachine> machines;
  for (unsigned n = 1; n <= 2; ++n)
    for_each_machine({"r"}, {"g"}, n, [&](const MooreMachine& m) {
      machines.push_back(m);
      return false;
    });
  std::size_t checks = 0, bad = 0;
  for (int i = 0; i < 50; ++i) {
    const Formula phi = to_pnf(random_ltl(rng, props, 6));
    const Formula a = Formula::forall(phi);
    const Formula e = Formula::exists(to_pnf(Formula::negation(phi)));
    const CtlStarChecker ca(a, {"r"}, {"g"}), ce(e, {"r"}, {"g"});
    for (const auto& m : machines) {
      const auto la = ca.check(m, false).labels.at(0), le = ce.check(m, false).labels.at(0);
      for (unsigned s = 0; s < m.size(); ++s, ++checks) bad += la[s] == le[s];
    }
  }
  const Formula er = Formula::exists(Formula::lit("r")), enr = Formula::exists(Formula::lit("r", false));
  const CtlStarChecker cr(Formula::conj(er, enr), {"r"}, {"g"});
  for (const auto& m : machines) {
    const auto res = cr.check(m, false);
    for (const auto& lab : res.labels)
      for (unsigned s = 0; s < m.size(); ++s, ++checks) bad += !lab[s];
  }
  std::ostringstream d;
  d << "machines=" << machines.size() << " label-checks=" << checks << " mismatches=" << bad;
  return {bad == 0 && machines.size() == 50, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> checks{
      {"stay-or-grant-end-to-end", stay_or_grant},
      {"two-grants-nonminimal-2-vs-3", two_grants},
      {"unrealisable-with-dual-witness", unrealisable},
      {"oracle-ctlstar-implies-ltl", oracle},
      {"automata-lasso-oracle", automata},
      {"reduced-size-growth", growth},
      {"arbiters-realisable-small", arbiters},
      {"path-quantifier-duality", duality},
  };
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << " (" << t << "): " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
