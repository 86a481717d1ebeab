#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ctlstar2ltl {

/// Node kinds of the formula tree.
///
/// One tree type serves both the general syntax produced by the parser
/// (with `Not`, `Implies`, `Iff`, `Globally`, `Finally`) and positive normal
/// form, where negation only sits on literals and G/F are expressed through
/// release/until. `Witness` atoms are introduced by the reduction and stand
/// for a relation over a bit-encoded witness ID.
enum class Op : std::uint8_t {
  True,
  False,
  Lit,
  Witness,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Release,
  Globally,
  Finally,
  Exists,
  Forall,
};

/// Relation carried by a witness atom: `v != 0`, `v = j`, `v <= j`.
enum class WitnessRel : std::uint8_t { NonZero, Equals, AtMost };

struct SourcePos {
  int line = 0;
  int column = 0;
};

namespace detail {
struct Node;
}

/// Immutable, shareable formula handle. Identity is structural: two formulas
/// compare equal iff their canonical keys match.
class Formula {
 public:
  Formula();

  static Formula tt();
  static Formula ff();
  static Formula constant(bool value);
  static Formula lit(std::string name, bool positive = true, SourcePos pos = {});
  static Formula witness(std::string family, WitnessRel rel, unsigned value = 0, bool positive = true);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula until(Formula a, Formula b);
  static Formula release(Formula a, Formula b);
  static Formula globally(Formula f);
  static Formula finally(Formula f);
  static Formula exists(Formula f);
  static Formula forall(Formula f);

  /// Right-folded conjunction/disjunction; empty input yields true/false.
  static Formula conj(std::span<const Formula> parts);
  static Formula disj(std::span<const Formula> parts);

  Op op() const;
  const std::string& name() const;
  bool positive() const;
  WitnessRel rel() const;
  unsigned value() const;
  SourcePos pos() const;
  std::span<const Formula> children() const;
  const Formula& child(std::size_t i) const;
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }

  /// Canonical prefix-form key; equal keys mean equal trees.
  const std::string& key() const;
  std::size_t hash() const;

  /// Same operator over new children; leaves return themselves.
  Formula with_children(std::vector<Formula> kids) const;

  bool is(Op o) const { return op() == o; }
  bool is_quantifier() const { return op() == Op::Exists || op() == Op::Forall; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b) { return a.key() < b.key(); }

 private:
  explicit Formula(std::shared_ptr<const detail::Node> node);
  static Formula make(Op op, std::vector<Formula> kids);

  std::shared_ptr<const detail::Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Converts a general-syntax formula to positive normal form.
Formula to_pnf(const Formula& f);

/// True iff `f` has no `Not`/`Implies`/`Iff`/`Globally`/`Finally` nodes and
/// negation only occurs on literals and witness atoms.
bool is_pnf(const Formula& f);

bool has_quantifier(const Formula& f);

/// Folds `true`/`false` through the boolean and temporal operators.
Formula fold_constants(const Formula& f);

/// Node count; `false R x` and `true U x` count as one G/F node.
std::size_t ast_size(const Formula& f);

/// Human-readable print in the spec-file syntax. PNF G/F patterns are
/// re-sugared. Witness atoms print as `[family!=0]`-style brackets, which the
/// parser does not accept; blast them before emitting a spec file.
std::string to_string(const Formula& f);

/// Stable 8-hex-digit digest of the canonical key.
std::string hash8(const Formula& f);

/// All proposition names occurring in literals, sorted.
std::vector<std::string> propositions(const Formula& f);

}  // namespace ctlstar2ltl
