#pragma once

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ctlstar2ltl/formula.hpp"
#include "ctlstar2ltl/spec.hpp"

namespace ctlstar2ltl {

enum class Quantifier { Existential, Universal };

/// A path-quantified subformula `E body` or `A body`.
struct QuantifiedSubformula {
  Quantifier kind;
  Formula node;  // the E/A node itself
  Formula body;  // its path formula, still containing nested quantifiers

  bool existential() const { return kind == Quantifier::Existential; }
};

/// Every distinct quantified subformula, inner before outer (post-order,
/// left to right). Duplicates are dropped at their second occurrence.
std::vector<QuantifiedSubformula> quantified_subformulas(const Formula& formula);
inline std::vector<QuantifiedSubformula> quantified_subformulas(const Spec& spec) {
  return quantified_subformulas(spec.formula);
}

using SubstitutionTable = std::unordered_map<Formula, Formula, FormulaHash>;

class MissingSubstitution : public std::out_of_range {
 public:
  explicit MissingSubstitution(const Formula& f);
};

/// Replaces every maximal E/A node of `path` with its table entry. The result
/// contains no quantifier when the table covers all of them.
Formula substitute(const Formula& path, const SubstitutionTable& table);

/// True iff the formula is `A phi` with quantifier-free `phi`.
bool is_pure_ltl(const Formula& formula);
inline bool is_pure_ltl(const Spec& spec) { return is_pure_ltl(spec.formula); }

}  // namespace ctlstar2ltl
