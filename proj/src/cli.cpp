#include "ctlstar2ltl/cli.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ctlstar2ltl/enumerate.hpp"

namespace ctlstar2ltl {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::string commented(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += "# " + line + "\n";
  return out;
}

KSetting k_or(const RunConfig& cfg, KMode fallback) { return cfg.k.value_or(KSetting{fallback, 0}); }

ReduceOptions reduce_options(const Spec& spec, unsigned k, bool inline_universal) {
  ReduceOptions o;
  o.inline_universal = inline_universal;
  if (compute_k(spec) > 0) o.k = k;
  return o;
}

// Random CTL* formulas over one input and one output. Inputs only appear
// below a path quantifier.
using Rng = std::mt19937_64;

unsigned pick(Rng& rng, unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); }

Formula random_state(Rng& rng, const std::string& in, const std::string& out, int depth);

Formula random_path(Rng& rng, const std::string& in, const std::string& out, int depth) {
  if (depth <= 0) return Formula::lit(pick(rng, 2) ? out : in, pick(rng, 2));
  switch (pick(rng, 10)) {
    case 0: return Formula::next(random_path(rng, in, out, depth - 1));
    case 1: return Formula::globally(random_path(rng, in, out, depth - 1));
    case 2: return Formula::finally(random_path(rng, in, out, depth - 1));
    case 3: return Formula::until(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 4: return Formula::release(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 5: return Formula::conj(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 6: return Formula::disj(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 7: return Formula::negation(random_path(rng, in, out, depth - 1));
    case 8: return random_state(rng, in, out, depth);
    default: return random_path(rng, in, out, 0);
  }
}

Formula random_state(Rng& rng, const std::string& in, const std::string& out, int depth) {
  if (depth <= 0) return Formula::lit(out, pick(rng, 2));
  switch (pick(rng, 6)) {
    case 0:
    case 5: return Formula::exists(random_path(rng, in, out, depth - 1));
    case 1: return Formula::forall(random_path(rng, in, out, depth - 1));
    case 2: return Formula::conj(random_state(rng, in, out, depth - 1), random_state(rng, in, out, depth - 1));
    case 3: return Formula::disj(random_state(rng, in, out, depth - 1), random_state(rng, in, out, depth - 1));
    default: return Formula::negation(random_state(rng, in, out, depth - 1));
  }
}

bool has_input(const Formula& f, const std::string& in) {
  auto ps = propositions(f);
  return std::find(ps.begin(), ps.end(), in) != ps.end();
}

// EG x, AF x, EF x with x a literal.
std::vector<Formula> quantified(const Formula& x) {
  return {Formula::exists(Formula::globally(x)), Formula::forall(Formula::finally(x)),
          Formula::exists(Formula::finally(x))};
}

std::vector<Formula> pattern_corpus(const std::string& in, const std::string& out) {
  const std::vector<Formula> lits{Formula::lit(out), Formula::lit(out, false), Formula::lit(in)};
  std::vector<Formula> single;
  for (const auto& x : lits)
    for (auto& q : quantified(x)) single.push_back(q);
  std::vector<Formula> all = single;
  // nested: Q1 (Q2 x)
  for (const auto& x : lits)
    for (const auto& inner : quantified(x))
      for (auto& outer : quantified(inner)) all.push_back(outer);
  // conjunctions of two output patterns
  for (std::size_t i = 0; i < single.size(); ++i)
    for (std::size_t j = i + 1; j < single.size(); ++j)
      if (!has_input(single[i], in) && !has_input(single[j], in)) all.push_back(Formula::conj(single[i], single[j]));
  return all;
}

}  // namespace

KSetting parse_k(const std::string& text) {
  if (text == "auto") return {KMode::Auto, 0};
  if (text == "sweep") return {KMode::Sweep, 0};
  unsigned long v = 0;
  std::size_t used = 0;
  try {
    v = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v == 0 || v > 1000) throw InputError("--k expects auto, sweep or a positive integer");
  return {KMode::Fixed, static_cast<unsigned>(v)};
}

std::vector<unsigned> bound_schedule(unsigned cap) {
  std::vector<unsigned> out;
  for (unsigned b = 1; b < cap; b *= 2) out.push_back(b);
  if (cap > 0) out.push_back(cap);
  return out;
}

std::vector<unsigned> k_values(const Spec& spec, const KSetting& k) {
  const auto K = static_cast<unsigned>(compute_k(spec));
  if (K == 0) return {0};
  switch (k.mode) {
    case KMode::Fixed: return {k.value};
    case KMode::Auto: return {K};
    case KMode::Sweep: break;
  }
  std::vector<unsigned> out;
  for (unsigned i = 1; i <= K; ++i) out.push_back(i);
  return out;
}

SynthRun synthesize(const Spec& spec, const RunConfig& cfg) {
  SynthRun run;
  for (unsigned k : k_values(spec, k_or(cfg, KMode::Sweep))) {
    ReducedSpec reduced = reduce(spec, reduce_options(spec, k, cfg.inline_universal));
    const LtlSpec ltl = reduced.ltl();
    for (unsigned b : bound_schedule(cfg.max_counter)) {
      SynthOptions opts;
      opts.bound = b;
      opts.max_positions = cfg.max_positions;
      SynthResult r = synth_bounded(ltl, opts);
      run.steps.push_back({k, b, r.realisable, r.truncated, r.positions});
      spdlog::debug("k={} b={} {} positions={}", k, b,
                   r.realisable ? "realisable" : (r.truncated ? "truncated" : "unrealisable"), r.positions);
      if (r.truncated) {
        run.truncated = true;
        break;
      }
      if (!r.realisable) continue;
      run.realisable = true;
      run.k = k;
      run.b = b;
      run.machine = *r.moore;
      MooreMachine projected = minimize(project_outputs(*r.moore, reduced.original_outputs));
      rename_states(projected, "t");
      run.verification = check_ctlstar(projected, spec);
      run.projected = std::move(projected);
      run.reduced = std::move(reduced);
      return run;
    }
  }
  return run;
}

DualRun dualize_spec(const Spec& spec, const RunConfig& cfg) {
  const auto ks = k_values(spec, k_or(cfg, KMode::Auto));
  ReducedSpec reduced = reduce(spec, reduce_options(spec, ks.back(), cfg.inline_universal));
  DualSpec dual = dualize(reduced.ltl(), SystemType::Moore);
  DualRun run{std::move(reduced), dual, std::nullopt};
  if (cfg.solve) run.result = synth_schedule(dual.spec, dual.system, cfg.max_counter, cfg.max_positions);
  return run;
}

std::vector<std::pair<std::string, Spec>> oracle_corpus(const RunConfig& cfg) {
  const std::string in = "r", out = "g";
  std::vector<std::pair<std::string, Spec>> corpus;
  std::set<std::string> seen;
  auto add = [&](const std::string& name, const Formula& f) {
    Formula pnf = to_pnf(f);
    if (!seen.insert(pnf.key()).second) return;
    corpus.emplace_back(name, Spec{{in}, {out}, pnf});
  };
  std::size_t i = 0;
  for (const auto& f : pattern_corpus(in, out)) add("pattern" + std::to_string(i++), f);
  Rng rng(cfg.seed);
  const int depth = static_cast<int>(std::min(cfg.depth, 4U));
  for (std::size_t tries = 0; corpus.size() < cfg.count && tries < 100U * cfg.count; ++tries) {
    Formula f = random_state(rng, in, out, 1 + static_cast<int>(pick(rng, static_cast<unsigned>(depth))));
    add("random" + std::to_string(tries), f);
  }
  if (!cfg.corpus_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(cfg.corpus_dir))
      if (e.path().extension() == ".spec") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      Spec s = load_spec(p.string());
      if (s.inputs.size() == 1 && s.outputs.size() == 1 && seen.insert(s.formula.key()).second)
        corpus.emplace_back(p.stem().string(), std::move(s));
    }
  }
  return corpus;
}

OracleCase oracle_case(const std::string& name, const Spec& spec, const RunConfig& cfg) {
  OracleCase c;
  c.name = name;
  c.spec = spec;
  CtlStarChecker checker(spec.formula, spec.inputs, spec.outputs);
  if (auto m = smallest_model(spec.inputs, spec.outputs, cfg.machine_bound,
                              [&](const MooreMachine& x) { return checker.holds(x); })) {
    c.ctl_realisable = true;
    c.ctl_size = m->size();
  }
  // realisability is monotone in k, so the first success of the sweep
  // settles realisability at compute_k
  RunConfig sub = cfg;
  sub.k = KSetting{KMode::Sweep, 0};
  SynthRun run = synthesize(spec, sub);
  c.k = run.steps.empty() ? 0 : run.steps.back().k;
  c.ltl_inconclusive = run.truncated && !run.realisable;
  if (run.realisable) {
    c.ltl_realisable = true;
    c.ltl_size = run.projected->size();
    c.projection_holds = run.verification->holds;
  }
  return c;
}

OracleReport run_oracle(const RunConfig& cfg) {
  OracleReport r;
  for (const auto& [name, spec] : oracle_corpus(cfg)) {
    spdlog::debug("oracle {}: {}", name, to_string(spec.formula));
    OracleCase c = oracle_case(name, spec, cfg);
    if (c.ctl_realisable && !c.ltl_realisable && !c.ltl_inconclusive) ++r.completeness_violations;
    if (c.ltl_realisable && !c.projection_holds) ++r.soundness_violations;
    if (c.ctl_realisable && c.ltl_realisable && c.ltl_size > c.ctl_size) ++r.larger;
    if (c.ltl_inconclusive) ++r.inconclusive;
    r.cases.push_back(std::move(c));
  }
  return r;
}

std::string oracle_text(const OracleReport& r) {
  std::ostringstream os;
  for (const auto& c : r.cases) {
    os << c.name << " k=" << c.k << " ctl=" << (c.ctl_realisable ? std::to_string(c.ctl_size) : "-")
       << " ltl=" << (c.ltl_inconclusive ? "?" : c.ltl_realisable ? std::to_string(c.ltl_size) : "-");
    if (c.ctl_realisable && !c.ltl_realisable && !c.ltl_inconclusive) os << " VIOLATION-COMPLETENESS";
    if (c.ltl_realisable && !c.projection_holds) os << " VIOLATION-PROJECTION";
    if (c.ctl_realisable && c.ltl_realisable && c.ltl_size > c.ctl_size) os << " larger";
    os << "  # " << to_string(c.spec.formula) << "\n";
  }
  os << "formulas=" << r.cases.size() << " completeness-violations=" << r.completeness_violations
     << " projection-violations=" << r.soundness_violations << " larger=" << r.larger
     << " inconclusive=" << r.inconclusive << "\n";
  return os.str();
}

Spec load_spec(const std::string& path) { return parse_spec(read_file(path)); }
LtlSpec load_ltl_spec(const std::string& path) { return parse_ltl_spec(read_file(path)); }
MooreMachine load_machine(const std::string& path) { return parse_machine(read_file(path)); }

int cmd_convert(const RunConfig& cfg, std::ostream& out) {
  const Spec spec = load_spec(cfg.spec_path);
  const auto ks = k_values(spec, k_or(cfg, KMode::Auto));
  const ReducedSpec reduced = reduce(spec, reduce_options(spec, ks.back(), cfg.inline_universal));
  std::string text;
  if (cfg.readable) {
    text = "INPUTS ";
    for (std::size_t i = 0; i < reduced.inputs.size(); ++i) text += (i ? ", " : "") + reduced.inputs[i];
    text += ";\nOUTPUTS ";
    for (std::size_t i = 0; i < reduced.outputs.size(); ++i) text += (i ? ", " : "") + reduced.outputs[i];
    text += ";\nFORMULA " + to_string(reduced.formula) + ";\n";
  } else {
    text = print_ltl_spec(reduced.ltl());
  }
  text = commented(ledger_report(reduced)) + text;
  if (!cfg.out_path.empty()) write_file(cfg.out_path, text);
  out << text;
  return exit_code::kOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  const Spec spec = load_spec(cfg.spec_path);
  const SynthRun run = synthesize(spec, cfg);
  for (const auto& s : run.steps)
    out << "# k=" << s.k << " b=" << s.b << " "
        << (s.realisable ? "realisable" : s.truncated ? "position-limit" : "unrealisable")
        << " positions=" << s.positions << "\n";
  if (!run.realisable) {
    if (run.truncated)
      out << "INCONCLUSIVE b=" << run.steps.back().b << "  # position limit " << cfg.max_positions << "\n";
    else
      out << "UNREALISABLE-UPTO b=" << cfg.max_counter << "  # k up to " << run.steps.back().k << "\n";
    return exit_code::kNegative;
  }
  const std::string machine = serialize_machine(*run.machine);
  const std::string projected = serialize_machine(*run.projected);
  const std::string check = ctlstar_report(*run.projected, *run.verification);
  out << "REALISABLE k=" << run.k << " b=" << run.b << " states=" << run.machine->size()
      << " projected-states=" << run.projected->size() << "\n"
      << machine << "# projection\n"
      << projected << "# check against the CTL* formula\n"
      << check;
  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path, machine);
    write_file(cfg.out_path + ".projected", projected);
    write_file(cfg.out_path + ".check", check);
  }
  if (!cfg.dot_path.empty()) write_file(cfg.dot_path, to_dot(*run.projected));
  if (!run.verification->holds) {
    spdlog::error("projected machine fails the original formula");
    return exit_code::kInternal;
  }
  return exit_code::kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const MooreMachine m = load_machine(cfg.machine_path);
  if (cfg.ltl_mode) {
    const LtlSpec spec = load_ltl_spec(cfg.spec_path);
    check_ctlstar(m, Spec{spec.inputs, spec.outputs, Formula::tt()});  // alphabet check only
    const LtlVerdict v = check_ltl(m, spec.formula);
    out << ltl_report(m, v);
    return v.holds ? exit_code::kOk : exit_code::kNegative;
  }
  const Spec spec = load_spec(cfg.spec_path);
  const CtlStarResult r = check_ctlstar(m, spec);
  out << ctlstar_report(m, r);
  return r.holds ? exit_code::kOk : exit_code::kNegative;
}

int cmd_dualize(const RunConfig& cfg, std::ostream& out) {
  const Spec spec = load_spec(cfg.spec_path);
  const DualRun run = dualize_spec(spec, cfg);
  std::string text = "# dual: environment plays " +
                     std::string(run.dual.system == SystemType::Mealy ? "Mealy" : "Moore") + "\n" +
                     print_ltl_spec(run.dual.spec);
  if (!cfg.out_path.empty()) write_file(cfg.out_path, text);
  out << text;
  if (!run.result) return exit_code::kOk;
  const SynthResult& r = *run.result;
  if (!r.realisable) {
    if (r.truncated)
      out << "INCONCLUSIVE b=" << r.bound << "  # position limit " << cfg.max_positions << "\n";
    else
      out << "UNREALISABLE-UPTO b=" << cfg.max_counter << "\n";
    return exit_code::kNegative;
  }
  out << "DUAL-REALISABLE b=" << r.bound << " states=" << r.machine_size() << "\n";
  if (r.mealy) out << serialize_mealy(*r.mealy);
  if (r.moore) out << serialize_machine(*r.moore);
  return exit_code::kOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const OracleReport r = run_oracle(cfg);
  const std::string text = oracle_text(r);
  if (!cfg.out_path.empty()) write_file(cfg.out_path, text);
  out << text;
  return r.completeness_violations + r.soundness_violations == 0 ? exit_code::kOk : exit_code::kNegative;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.k && cfg.k->mode == KMode::Fixed && cfg.k->value == 0) throw InputError("--k must be at least 1");
    if (cfg.command == "convert") return cmd_convert(cfg, out);
    if (cfg.command == "synth") return cmd_synth(cfg, out);
    if (cfg.command == "check") return cmd_check(cfg, out);
    if (cfg.command == "dualize") return cmd_dualize(cfg, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out);
    throw InputError("unknown command '" + cfg.command + "'");
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInput;
  } catch (const AlphabetMismatch& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInput;
  } catch (const ReductionError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ReductionError::Kind::NameCollision ? exit_code::kInternal : exit_code::kInput;
  } catch (const SynthError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::kInternal;
  }
}

}  // namespace ctlstar2ltl
