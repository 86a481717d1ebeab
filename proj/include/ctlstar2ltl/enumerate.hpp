#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/machine.hpp"

namespace ctlstar2ltl {

/// LTL model checking for brute-force search: the automaton of the negation
/// is built once and each machine is checked by a bitmask fixpoint.
class LtlFastChecker {
 public:
  LtlFastChecker(const Formula& phi, std::vector<std::string> inputs, std::vector<std::string> outputs);
  bool holds(const MooreMachine& m) const;

 private:
  std::vector<std::string> inputs_, outputs_;
  Nbw neg_;
  std::uint64_t accepting_ = 0;
};

/// Calls `visit` on every machine with exactly `n` states, all reachable
/// from the initial state 0, until it returns true. Returns the number of
/// machines visited.
std::size_t for_each_machine(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                             unsigned n, const std::function<bool(const MooreMachine&)>& visit);

/// First machine, by size then enumeration order, with at most `max_states`
/// states that satisfies `pred`.
std::optional<MooreMachine> smallest_model(const std::vector<std::string>& inputs,
                                           const std::vector<std::string>& outputs, unsigned max_states,
                                           const std::function<bool(const MooreMachine&)>& pred);

}  // namespace ctlstar2ltl
