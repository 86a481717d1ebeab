#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctlstar2ltl/formula.hpp"
#include "ctlstar2ltl/valuation.hpp"

namespace ctlstar2ltl {

/// Ultimately periodic word `stem · loop^ω`; the loop is never empty.
struct LassoWord {
  std::vector<Valuation> stem;
  std::vector<Valuation> loop;

  std::size_t length() const { return stem.size() + loop.size(); }
  std::size_t successor(std::size_t pos) const { return pos + 1 < length() ? pos + 1 : stem.size(); }
  Valuation at(std::size_t pos) const { return pos < stem.size() ? stem[pos] : loop[pos - stem.size()]; }
};

struct NbwEdge {
  Cube guard;
  unsigned target = 0;
  bool completion = false;  // added by sink completion
};

/// Complete nondeterministic Büchi automaton over valuations of `basis`.
/// Completion routes every letter not covered by a state's own edges into
/// the rejecting `sink` state.
struct Nbw {
  Alphabet basis;
  unsigned initial = 0;
  std::vector<std::vector<NbwEdge>> edges;
  std::vector<bool> accepting;
  std::optional<unsigned> sink;
  std::vector<std::string> names;  // obligations per state, for debug output

  std::size_t size() const { return edges.size(); }

  template <typename Out>
  void successors(unsigned q, Valuation v, Out&& out) const {
    for (const auto& e : edges[q])
      if (e.guard.matches(v)) out(e.target);
  }
};

/// Tableau translation of a quantifier-free PNF formula, degeneralized to a
/// state-based Büchi automaton. States that cannot reach an accepting cycle
/// are folded into the sink; unreachable states are dropped.
Nbw nbw_of_path_formula(const Formula& phi, const Alphabet& basis);

/// Number of states without the completion sink.
std::size_t state_count(const Nbw& a);

/// Every state has a successor for every valuation (checked by cube cover).
bool is_complete(const Nbw& a);

bool accepts_lasso(const Nbw& a, const LassoWord& w);

/// Direct semantic evaluation of a quantifier-free formula at position 0.
/// Accepts general syntax (negation, G, F, ->, <->) as well as PNF.
bool eval_ltl_on_lasso(const Formula& phi, const Alphabet& basis, const LassoWord& w);

/// Graph-description export; completion edges are dashed.
std::string to_dot(const Nbw& a);

}  // namespace ctlstar2ltl
