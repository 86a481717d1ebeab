#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/machine.hpp"
#include "ctlstar2ltl/modelcheck.hpp"
#include "ctlstar2ltl/spec.hpp"

namespace ctlstar2ltl {

/// Universal co-Büchi automaton: the NBW of the negation, read dually. A word
/// is accepted iff every run visits `rejecting` states finitely often. The
/// sink of the NBW never rejects and is ignored by the game.
struct Ucw {
  Nbw automaton;

  std::size_t size() const { return automaton.size(); }
  bool rejecting(unsigned q) const { return automaton.accepting[q]; }
  std::size_t rejecting_count() const;
};

/// `basis` must contain every proposition of `phi`.
Ucw ucw_of_ltl(const Formula& phi, const Alphabet& basis);
bool ucw_accepts_lasso(const Ucw& u, const LassoWord& w);

enum class SystemType { Moore, Mealy };

/// Output may depend on the input of the same step: `out[s][e]`.
struct MealyMachine {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> names;
  unsigned initial = 0;
  std::vector<std::vector<Valuation>> out;
  std::vector<std::vector<unsigned>> next;

  std::size_t size() const { return names.size(); }
  std::size_t input_count() const { return std::size_t{1} << inputs.size(); }
};

LetterSystem letter_system(const MealyMachine& m);
std::string serialize_mealy(const MealyMachine& m);
MealyMachine minimize(const MealyMachine& m);

class SynthError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SynthOptions {
  unsigned bound = 2;                       // counter cap b
  std::size_t max_positions = 2'000'000;    // game positions before giving up
  bool shrink = true;                       // minimize and merge after extraction
};

/// Either a machine of the requested type or a bounded failure. `positions`
/// is the size of the explored game, reported for both outcomes.
struct SynthResult {
  bool realisable = false;
  unsigned bound = 0;
  std::size_t positions = 0;
  bool truncated = false;  // position limit hit, failure says nothing
  std::optional<MooreMachine> moore;
  std::optional<MealyMachine> mealy;

  std::size_t machine_size() const;
};

/// Counting-function safety game for `spec.formula` at counter bound b.
SynthResult synth_bounded(const LtlSpec& spec, const SynthOptions& opts = {});
SynthResult synth_dual(const LtlSpec& dual, const SynthOptions& opts = {});
SynthResult synth_game(const LtlSpec& spec, SystemType type, const SynthOptions& opts);

/// Tries b = 1, 2, 4, ... up to `cap` (and `cap` itself); first success wins.
SynthResult synth_schedule(const LtlSpec& spec, SystemType type, unsigned cap, std::size_t max_positions = 2'000'000);

/// Swaps players: inputs and outputs trade places, the formula is negated.
struct DualSpec {
  LtlSpec spec;
  SystemType system = SystemType::Mealy;
};
DualSpec dualize(const LtlSpec& spec, SystemType original = SystemType::Moore);

/// Greedy state merging; a merge is kept only if the machine still satisfies
/// `phi`. Starts from the minimized machine.
MooreMachine shrink(const MooreMachine& m, const Formula& phi);
MealyMachine shrink(const MealyMachine& m, const Formula& phi);

/// Outputs missing from `m` are added and held at 0.
MooreMachine extend_outputs(const MooreMachine& m, const std::vector<std::string>& outputs);

}  // namespace ctlstar2ltl
