#include "ctlstar2ltl/subformulas.hpp"

#include <unordered_set>

namespace ctlstar2ltl {

namespace {

void collect(const Formula& f, std::unordered_set<Formula, FormulaHash>& seen,
             std::vector<QuantifiedSubformula>& out) {
  for (const auto& c : f.children()) collect(c, seen, out);
  if (f.is_quantifier() && seen.insert(f).second)
    out.push_back({f.is(Op::Exists) ? Quantifier::Existential : Quantifier::Universal, f, f.child(0)});
}

}  // namespace

std::vector<QuantifiedSubformula> quantified_subformulas(const Formula& formula) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<QuantifiedSubformula> out;
  collect(formula, seen, out);
  return out;
}

MissingSubstitution::MissingSubstitution(const Formula& f)
    : std::out_of_range("no substitution for " + to_string(f)) {}

Formula substitute(const Formula& path, const SubstitutionTable& table) {
  if (path.is_quantifier()) {
    auto it = table.find(path);
    if (it == table.end()) throw MissingSubstitution(path);
    return it->second;
  }
  if (path.children().empty()) return path;
  std::vector<Formula> kids;
  kids.reserve(path.children().size());
  bool changed = false;
  for (const auto& c : path.children()) {
    kids.push_back(substitute(c, table));
    changed = changed || !(kids.back() == c);
  }
  return changed ? path.with_children(std::move(kids)) : path;
}

bool is_pure_ltl(const Formula& formula) {
  return formula.is(Op::Forall) && !has_quantifier(formula.child(0));
}

}  // namespace ctlstar2ltl
