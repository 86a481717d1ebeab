#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/valuation.hpp"

namespace ctlstar2ltl {

/// Moore machine. Outputs label states; `next[s][e]` is the successor of `s`
/// under input valuation `e` (bit i = inputs[i]), so every state has exactly
/// 2^|inputs| transitions.
struct MooreMachine {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> names;
  unsigned initial = 0;
  std::vector<Valuation> out;
  std::vector<std::vector<unsigned>> next;

  std::size_t size() const { return names.size(); }
  std::size_t input_count() const { return std::size_t{1} << inputs.size(); }
  /// Inputs followed by outputs; the basis of `run_lasso` letters.
  Alphabet io_alphabet() const;
  /// The letter read on the edge leaving `s` under input `e`.
  Valuation letter(unsigned s, unsigned e) const { return Valuation{e | (out[s].bits << inputs.size())}; }
  unsigned index_of(std::string_view name) const;
};

MooreMachine parse_machine(std::string_view text);
std::string serialize_machine(const MooreMachine& m);

/// Keeps only the listed outputs, in the given order.
MooreMachine project_outputs(const MooreMachine& m, const std::vector<std::string>& keep);

/// Input-labeled path through the machine, stem then loop.
struct Trace {
  std::vector<unsigned> states;
  std::vector<unsigned> inputs;
  std::size_t loop_start = 0;
};

Trace run_trace(const MooreMachine& m, const std::vector<unsigned>& stem, const std::vector<unsigned>& loop);

/// Letters over `io_alphabet()` of the run on stem·loop^ω.
LassoWord run_lasso(const MooreMachine& m, const std::vector<unsigned>& stem, const std::vector<unsigned>& loop);

std::string to_dot(const MooreMachine& m);

/// Drops unreachable states and merges equivalent ones (partition
/// refinement on outputs and successors). State order follows a BFS from
/// the initial state.
MooreMachine minimize(const MooreMachine& m);

/// Redirects every transition into `drop` to `keep` and removes `drop`.
MooreMachine merge_states(const MooreMachine& m, unsigned keep, unsigned drop);

bool bisimilar(const MooreMachine& a, const MooreMachine& b);

/// Renames states to `prefix0`, `prefix1`, ... in index order.
void rename_states(MooreMachine& m, const std::string& prefix);

/// `r=0, x=1` style rendering of an input valuation.
std::string format_inputs(const MooreMachine& m, unsigned e);

}  // namespace ctlstar2ltl
