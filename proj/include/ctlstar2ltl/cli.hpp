#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctlstar2ltl/machine.hpp"
#include "ctlstar2ltl/modelcheck.hpp"
#include "ctlstar2ltl/reduction.hpp"
#include "ctlstar2ltl/spec.hpp"
#include "ctlstar2ltl/synth.hpp"

namespace ctlstar2ltl {

namespace exit_code {
constexpr int kOk = 0;        // success, holds, realisable
constexpr int kNegative = 1;  // fails, unrealisable up to the bounds
constexpr int kInput = 2;     // parse error, alphabet mismatch, bad flag
constexpr int kInternal = 3;  // name collision, internal consistency failure
}  // namespace exit_code

enum class KMode { Auto, Fixed, Sweep };

struct KSetting {
  KMode mode = KMode::Auto;
  unsigned value = 0;
};

/// `auto`, `sweep` or a positive integer.
KSetting parse_k(const std::string& text);

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string machine_path;
  bool ltl_mode = false;           // check: treat the spec as LTL
  std::optional<KSetting> k;       // default: sweep for synth, auto otherwise
  bool inline_universal = false;
  bool readable = false;           // convert: keep witness atoms
  bool solve = false;              // dualize: also synthesize the dual
  unsigned max_counter = 8;
  std::size_t max_positions = 2'000'000;
  std::string out_path;
  std::string dot_path;
  std::uint64_t seed = 1;
  std::string corpus_dir;
  unsigned count = 200;  // oracle corpus size
  unsigned depth = 4;    // oracle formula depth
  unsigned machine_bound = 2;
};

/// 1, 2, 4, ... below `cap`, then `cap`.
std::vector<unsigned> bound_schedule(unsigned cap);

/// Witness bounds to try for `spec`: the sweep runs 1..compute_k.
std::vector<unsigned> k_values(const Spec& spec, const KSetting& k);

struct SweepStep {
  unsigned k = 0;
  unsigned b = 0;
  bool realisable = false;
  bool truncated = false;
  std::size_t positions = 0;
};

struct SynthRun {
  bool realisable = false;
  bool truncated = false;
  unsigned k = 0;
  unsigned b = 0;
  std::vector<SweepStep> steps;
  std::optional<ReducedSpec> reduced;
  std::optional<MooreMachine> machine;    // over the reduced alphabet
  std::optional<MooreMachine> projected;  // original outputs only
  std::optional<CtlStarResult> verification;
};

/// Reduce, synthesize along the k and bound schedules, project and check the
/// projection against the original formula.
SynthRun synthesize(const Spec& spec, const RunConfig& cfg);

struct DualRun {
  ReducedSpec reduced;
  DualSpec dual;
  std::optional<SynthResult> result;
};

DualRun dualize_spec(const Spec& spec, const RunConfig& cfg);

struct OracleCase {
  std::string name;
  Spec spec;
  unsigned k = 0;
  bool ctl_realisable = false;     // some machine within the bound
  std::size_t ctl_size = 0;
  bool ltl_realisable = false;
  bool ltl_inconclusive = false;   // position limit hit
  std::size_t ltl_size = 0;
  bool projection_holds = true;
};

struct OracleReport {
  std::vector<OracleCase> cases;
  std::size_t completeness_violations = 0;  // CTL* model found, LTL side unrealisable
  std::size_t soundness_violations = 0;     // LTL model whose projection fails
  std::size_t larger = 0;                   // LTL model bigger than the CTL* one
  std::size_t inconclusive = 0;
};

/// Fixed quantifier patterns followed by random formulas up to `cfg.count`,
/// plus the spec files of `cfg.corpus_dir` when given.
std::vector<std::pair<std::string, Spec>> oracle_corpus(const RunConfig& cfg);
OracleReport run_oracle(const RunConfig& cfg);
OracleCase oracle_case(const std::string& name, const Spec& spec, const RunConfig& cfg);
std::string oracle_text(const OracleReport& r);

Spec load_spec(const std::string& path);
LtlSpec load_ltl_spec(const std::string& path);
MooreMachine load_machine(const std::string& path);

int cmd_convert(const RunConfig& cfg, std::ostream& out);
int cmd_synth(const RunConfig& cfg, std::ostream& out);
int cmd_check(const RunConfig& cfg, std::ostream& out);
int cmd_dualize(const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const RunConfig& cfg, std::ostream& out);

/// Dispatches on `cfg.command` and maps exceptions to exit codes.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ctlstar2ltl
