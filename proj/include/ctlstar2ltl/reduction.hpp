#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlstar2ltl/formula.hpp"
#include "ctlstar2ltl/spec.hpp"

namespace ctlstar2ltl {

class ReductionError : public std::runtime_error {
 public:
  enum class Kind { BadBound, NameCollision };
  ReductionError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ExistentialEntry {
  Formula node;       // E phi as it occurs in the spec
  Formula body;       // phi with inner quantifiers replaced
  std::string family; // witness atom family, e.g. v__1a2b3c4d
  std::vector<std::string> bits;  // LSB first
  std::size_t nbw_states = 0;
};

struct UniversalEntry {
  Formula node;
  Formula body;
  std::string prop;  // empty when every occurrence was inlined
};

struct FreshLedger {
  unsigned k = 0;
  unsigned width = 0;  // bits per witness ID
  std::vector<ExistentialEntry> existentials;
  std::vector<UniversalEntry> universals;
  std::vector<std::vector<std::string>> directions;  // [j-1][input index]

  /// Every fresh output in declaration order.
  std::vector<std::string> fresh_outputs() const;
  const ExistentialEntry* find_family(const std::string& family) const;
};

/// Reduced LTL problem. `formula` still carries witness atoms (`v = j` etc.)
/// so it reads like the integer-valued original; `blast` turns them into bits.
struct ReducedSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;  // original outputs first, then fresh ones
  std::vector<std::string> original_outputs;
  Formula formula;
  FreshLedger ledger;

  LtlSpec ltl() const;
};

/// Number of witness ID bits for bound k.
unsigned id_width(unsigned k);

/// Sum of NBW sizes over the distinct existential subformulas.
std::size_t compute_k(const Spec& spec);

/// Conjunction over inputs of `d_j^i <-> i`, as PNF.
Formula follow_constraint(unsigned j, const std::vector<std::string>& inputs, const FreshLedger& ledger);

/// G[(v = j) -> (G follow_j -> body)] for j = 1..k, as PNF.
Formula encode_existential(const ExistentialEntry& e, const std::vector<std::string>& inputs,
                           const FreshLedger& ledger);

/// G[p -> body], as PNF.
Formula encode_universal(const UniversalEntry& u);

struct ReduceOptions {
  std::optional<unsigned> k;
  bool inline_universal = false;
};

ReducedSpec reduce(const Spec& spec, const ReduceOptions& opts = {});

/// Replaces witness atoms by their bit patterns.
Formula blast(const Formula& f, const FreshLedger& ledger);

/// Replaces witness atoms by literals named after the atom, for automata that
/// should treat `v != 0` as one proposition.
Formula atomize_witnesses(const Formula& f);

/// AST size of the reduced formula with witness atoms counted as one node.
std::size_t formula_size_reduced(const ReducedSpec& r);

/// Multi-line human-readable summary: k, fresh propositions, NBW sizes.
std::string ledger_report(const ReducedSpec& r);

}  // namespace ctlstar2ltl
