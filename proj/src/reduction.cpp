#include "ctlstar2ltl/reduction.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/subformulas.hpp"

namespace ctlstar2ltl {

namespace {

struct Analysis {
  SubstitutionTable table;
  std::vector<ExistentialEntry> existentials;
  std::vector<UniversalEntry> universals;
  std::unordered_map<Formula, std::size_t, FormulaHash> universal_index;
};

void claim(std::unordered_map<std::string, Formula>& owners, const std::string& name, const Formula& owner) {
  auto [it, fresh] = owners.emplace(name, owner);
  if (!fresh && !(it->second == owner))
    throw ReductionError(ReductionError::Kind::NameCollision,
                         "fresh name '" + name + "' is shared by " + to_string(it->second) + " and " +
                             to_string(owner));
}

Analysis analyze(const Spec& spec) {
  Analysis a;
  std::unordered_map<std::string, Formula> owners;
  for (const auto& n : spec.inputs) owners.emplace(n, Formula::lit(n));
  for (const auto& n : spec.outputs) owners.emplace(n, Formula::lit(n));
  for (const auto& q : quantified_subformulas(spec)) {
    const std::string h = hash8(q.node);
    Formula body = fold_constants(substitute(q.body, a.table));
    if (q.existential()) {
      ExistentialEntry e{q.node, body, "v__" + h, {}, 0};
      claim(owners, e.family, q.node);
      const Formula atomized = atomize_witnesses(body);
      e.nbw_states = state_count(nbw_of_path_formula(atomized, Alphabet(propositions(atomized))));
      a.table.emplace(q.node, Formula::witness(e.family, WitnessRel::NonZero));
      a.existentials.push_back(std::move(e));
    } else {
      UniversalEntry u{q.node, body, "p__" + h};
      claim(owners, u.prop, q.node);
      a.table.emplace(q.node, Formula::lit(u.prop));
      a.universal_index.emplace(q.node, a.universals.size());
      a.universals.push_back(std::move(u));
    }
  }
  return a;
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Op::And)) {
    flatten_and(f.lhs(), out);
    flatten_and(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

void collect_names(const Formula& f, std::unordered_set<std::string>& out) {
  if (f.is(Op::Lit)) out.insert(f.name());
  for (const auto& c : f.children()) collect_names(c, out);
}

Formula bit(const std::string& name, bool value) { return Formula::lit(name, value); }

}  // namespace

std::vector<std::string> FreshLedger::fresh_outputs() const {
  std::vector<std::string> out;
  for (const auto& e : existentials) out.insert(out.end(), e.bits.begin(), e.bits.end());
  for (const auto& row : directions) out.insert(out.end(), row.begin(), row.end());
  for (const auto& u : universals)
    if (!u.prop.empty()) out.push_back(u.prop);
  return out;
}

const ExistentialEntry* FreshLedger::find_family(const std::string& family) const {
  for (const auto& e : existentials)
    if (e.family == family) return &e;
  return nullptr;
}

LtlSpec ReducedSpec::ltl() const { return {inputs, outputs, fold_constants(blast(formula, ledger))}; }

unsigned id_width(unsigned k) {
  unsigned w = 0;
  while ((std::uint64_t{1} << w) < std::uint64_t{k} + 1) ++w;
  return w;
}

std::size_t compute_k(const Spec& spec) {
  std::size_t k = 0;
  for (const auto& e : analyze(spec).existentials) k += e.nbw_states;
  return k;
}

Formula follow_constraint(unsigned j, const std::vector<std::string>& inputs, const FreshLedger& ledger) {
  if (j == 0 || j > ledger.directions.size())
    throw std::out_of_range("witness index " + std::to_string(j) + " outside 1.." +
                            std::to_string(ledger.directions.size()));
  const auto& d = ledger.directions[j - 1];
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    parts.push_back(Formula::disj(Formula::conj(bit(d[i], true), bit(inputs[i], true)),
                                  Formula::conj(bit(d[i], false), bit(inputs[i], false))));
  return Formula::conj(parts);
}

Formula encode_existential(const ExistentialEntry& e, const std::vector<std::string>& inputs,
                           const FreshLedger& ledger) {
  std::vector<Formula> parts;
  for (unsigned j = 1; j <= ledger.k; ++j) {
    const Formula claim = Formula::witness(e.family, WitnessRel::Equals, j);
    const Formula follow = follow_constraint(j, inputs, ledger);
    parts.push_back(Formula::globally(
        Formula::implies(claim, Formula::implies(Formula::globally(follow), e.body))));
  }
  return fold_constants(to_pnf(Formula::conj(parts)));
}

Formula encode_universal(const UniversalEntry& u) {
  return fold_constants(to_pnf(Formula::globally(Formula::implies(Formula::lit(u.prop), u.body))));
}

ReducedSpec reduce(const Spec& spec, const ReduceOptions& opts) {
  Analysis a = analyze(spec);
  FreshLedger ledger;
  if (opts.k) {
    if (*opts.k == 0 && !a.existentials.empty())
      throw ReductionError(ReductionError::Kind::BadBound, "k must be at least 1 when the formula has E subformulas");
    if (a.existentials.empty()) {
      spdlog::warn("ignoring k={}: the formula has no E subformula", *opts.k);
      ledger.k = 0;
    } else {
      ledger.k = *opts.k;
    }
  } else {
    for (const auto& e : a.existentials) ledger.k += static_cast<unsigned>(e.nbw_states);
  }
  ledger.width = a.existentials.empty() ? 0 : id_width(ledger.k);

  std::unordered_map<std::string, Formula> owners;
  for (const auto& n : spec.inputs) owners.emplace(n, Formula::lit(n));
  for (const auto& n : spec.outputs) owners.emplace(n, Formula::lit(n));
  for (auto& e : a.existentials) {
    const std::string h = e.family.substr(3);
    for (unsigned b = 0; b < ledger.width; ++b) {
      e.bits.push_back("v" + std::to_string(b) + "__" + h);
      claim(owners, e.bits.back(), e.node);
    }
  }
  if (!a.existentials.empty()) {
    for (unsigned j = 1; j <= ledger.k; ++j) {
      std::vector<std::string> row;
      for (const auto& i : spec.inputs) {
        row.push_back("d" + std::to_string(j) + "__" + i);
        claim(owners, row.back(), Formula::tt());
      }
      ledger.directions.push_back(std::move(row));
    }
  }
  for (const auto& u : a.universals) claim(owners, u.prop, u.node);

  // Top-level A conjuncts may be inlined: the reduced formula is itself read
  // under an implicit A at the initial state. Deeper occurrences keep p.
  std::vector<Formula> top;
  flatten_and(spec.formula, top);
  std::vector<Formula> phi;
  for (const auto& c : top) {
    if (opts.inline_universal && c.is(Op::Forall))
      phi.push_back(a.universals[a.universal_index.at(c)].body);
    else
      phi.push_back(substitute(c, a.table));
  }
  const Formula head = fold_constants(Formula::conj(phi));

  // Keep only the universals whose p is still referenced somewhere.
  std::unordered_set<std::string> names;
  collect_names(head, names);
  for (const auto& e : a.existentials) collect_names(e.body, names);
  std::vector<bool> used(a.universals.size(), false);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < a.universals.size(); ++i)
      if (!used[i] && names.count(a.universals[i].prop)) {
        used[i] = grew = true;
        collect_names(a.universals[i].body, names);
      }
  }
  for (std::size_t i = 0; i < a.universals.size(); ++i)
    if (!used[i]) a.universals[i].prop.clear();

  ledger.existentials = std::move(a.existentials);
  ledger.universals = std::move(a.universals);

  std::vector<Formula> parts{head};
  for (const auto& e : ledger.existentials) parts.push_back(encode_existential(e, spec.inputs, ledger));
  for (const auto& u : ledger.universals)
    if (!u.prop.empty()) parts.push_back(encode_universal(u));
  if (ledger.width > 0 && (std::uint64_t{1} << ledger.width) > std::uint64_t{ledger.k} + 1)
    for (const auto& e : ledger.existentials)
      parts.push_back(Formula::release(Formula::ff(), Formula::witness(e.family, WitnessRel::AtMost, ledger.k)));

  ReducedSpec r;
  r.inputs = spec.inputs;
  r.original_outputs = spec.outputs;
  r.outputs = spec.outputs;
  for (const auto& n : ledger.fresh_outputs()) r.outputs.push_back(n);
  r.formula = fold_constants(Formula::conj(parts));
  r.ledger = std::move(ledger);
  return r;
}

Formula blast(const Formula& f, const FreshLedger& ledger) {
  if (f.is(Op::Witness)) {
    const auto* e = ledger.find_family(f.name());
    if (!e) throw std::invalid_argument("unknown witness family " + f.name());
    const auto& bits = e->bits;
    Formula out;
    switch (f.rel()) {
      case WitnessRel::NonZero: {
        std::vector<Formula> any;
        for (const auto& b : bits) any.push_back(bit(b, true));
        out = Formula::disj(any);
        break;
      }
      case WitnessRel::Equals: {
        std::vector<Formula> all;
        for (unsigned b = 0; b < bits.size(); ++b) all.push_back(bit(bits[b], (f.value() >> b) & 1U));
        out = Formula::conj(all);
        if (f.value() >> bits.size()) out = Formula::ff();
        break;
      }
      case WitnessRel::AtMost: {
        // lexicographic comparison from the most significant bit down
        out = Formula::tt();
        for (unsigned b = 0; b < bits.size(); ++b) {
          const Formula zero = bit(bits[b], false);
          out = ((f.value() >> b) & 1U) ? Formula::disj(zero, out) : Formula::conj(zero, out);
        }
        if (f.value() >> bits.size()) out = Formula::tt();
        break;
      }
    }
    return f.positive() ? out : to_pnf(Formula::negation(out));
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(blast(c, ledger));
  return f.with_children(std::move(kids));
}

Formula atomize_witnesses(const Formula& f) {
  if (f.is(Op::Witness)) return Formula::lit(Formula::witness(f.name(), f.rel(), f.value()).key(), f.positive());
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(atomize_witnesses(c));
  return f.with_children(std::move(kids));
}

std::size_t formula_size_reduced(const ReducedSpec& r) { return ast_size(r.formula); }

std::string ledger_report(const ReducedSpec& r) {
  const auto& l = r.ledger;
  std::string s = "k=" + std::to_string(l.k) + "\n";
  s += "id-width=" + std::to_string(l.width) + "\n";
  for (const auto& e : l.existentials) {
    s += "exists " + e.family + " nbw=" + std::to_string(e.nbw_states) + " bits=";
    for (std::size_t i = 0; i < e.bits.size(); ++i) s += (i ? "," : "") + e.bits[i];
    s += "  # " + to_string(e.node) + "\n";
  }
  for (const auto& u : l.universals)
    s += "forall " + (u.prop.empty() ? std::string("(inlined)") : u.prop) + "  # " + to_string(u.node) + "\n";
  for (std::size_t j = 0; j < l.directions.size(); ++j) {
    s += "direction " + std::to_string(j + 1) + " =";
    for (const auto& d : l.directions[j]) s += " " + d;
    s += "\n";
  }
  s += "size=" + std::to_string(formula_size_reduced(r)) + "\n";
  return s;
}

}  // namespace ctlstar2ltl
