#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/formula.hpp"
#include "ctlstar2ltl/machine.hpp"
#include "ctlstar2ltl/spec.hpp"
#include "ctlstar2ltl/subformulas.hpp"

namespace ctlstar2ltl {

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite transition system whose edges carry the letter read while taking
/// them. Moore machines put out(s) together with the edge input on the edge
/// leaving s; Mealy machines put the input and the produced output there.
struct LetterSystem {
  struct Edge {
    Valuation letter;
    unsigned target;
    unsigned input;
  };
  Alphabet basis;
  unsigned initial = 0;
  std::vector<std::vector<Edge>> edges;

  std::size_t size() const { return edges.size(); }
};

LetterSystem letter_system(const MooreMachine& m);

struct Step {
  unsigned state;
  unsigned input;
};

struct PathLasso {
  std::vector<Step> stem;
  std::vector<Step> loop;
};

/// States from which some path satisfies the quantifier-free `phi`.
std::vector<bool> exists_states(const LetterSystem& sys, const Formula& phi);

/// A path from `from` satisfying `phi`, shortest stem first, then shortest loop.
std::optional<PathLasso> exists_path(const LetterSystem& sys, unsigned from, const Formula& phi);

struct LtlVerdict {
  bool holds = false;
  std::optional<PathLasso> counterexample;
};

LtlVerdict check_ltl(const LetterSystem& sys, const Formula& phi);
LtlVerdict check_ltl(const MooreMachine& m, const Formula& phi);

struct CtlStarResult {
  bool holds = false;
  std::vector<QuantifiedSubformula> subformulas;  // bottom-up
  std::vector<std::vector<bool>> labels;          // [subformula][state]
  std::vector<std::pair<unsigned, PathLasso>> witnesses;  // top-level E holding initially
  std::vector<std::pair<unsigned, PathLasso>> counterexamples;  // top-level A failing initially
};

/// Compiled CTL* formula for repeated checks against machines over one
/// alphabet: the automata of all subformulas are built once.
class CtlStarChecker {
 public:
  CtlStarChecker(const Formula& state_formula, std::vector<std::string> inputs, std::vector<std::string> outputs);
  CtlStarResult check(const MooreMachine& m, bool with_witnesses = true) const;
  bool holds(const MooreMachine& m) const { return check(m, false).holds; }

 private:
  std::vector<std::string> inputs_, outputs_;
  std::vector<QuantifiedSubformula> subformulas_;
  std::vector<Formula> bodies_;
  std::vector<Nbw> nbws_;
  std::vector<bool> top_level_;
  Formula top_;
  Alphabet basis_;
  std::size_t label_base_ = 0;
};

/// Bottom-up labeling. Each quantified subformula gets a label proposition
/// that outer subformulas read at the state they are evaluated in.
CtlStarResult check_ctlstar(const MooreMachine& m, const Formula& state_formula);
CtlStarResult check_ctlstar(const MooreMachine& m, const Spec& spec);

std::string format_lasso(const MooreMachine& m, const PathLasso& l);

/// `HOLDS`/`FAILS`, a legend, `label` lines and `witness` lines.
std::string ctlstar_report(const MooreMachine& m, const CtlStarResult& r);
std::string ltl_report(const MooreMachine& m, const LtlVerdict& v);

}  // namespace ctlstar2ltl
