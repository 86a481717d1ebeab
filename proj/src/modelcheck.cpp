#include "ctlstar2ltl/modelcheck.hpp"

#include <algorithm>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/graph.hpp"

namespace ctlstar2ltl {

namespace {

void require_props(const Formula& phi, const Alphabet& basis) {
  for (const auto& p : propositions(phi))
    if (!basis.contains(p)) throw AlphabetMismatch("proposition '" + p + "' is not part of the system");
}

struct Product {
  Digraph graph;
  std::size_t nq = 0;
  unsigned node(unsigned s, unsigned q) const { return static_cast<unsigned>(s * nq + q); }
};

// Product of the whole system with `a`, arcs labeled by system edge index.
Product product(const LetterSystem& sys, const Nbw& a) {
  Product p;
  p.nq = a.size();
  for (unsigned s = 0; s < sys.size(); ++s)
    for (unsigned q = 0; q < a.size(); ++q) p.graph.add_node(a.accepting[q]);
  for (unsigned s = 0; s < sys.size(); ++s)
    for (unsigned q = 0; q < a.size(); ++q) {
      auto& arcs = p.graph.arcs[p.node(s, q)];
      for (unsigned i = 0; i < sys.edges[s].size(); ++i) {
        const auto& e = sys.edges[s][i];
        a.successors(q, e.letter, [&](unsigned t) { arcs.push_back({p.node(e.target, t), i}); });
      }
    }
  return p;
}

PathLasso to_path(const LetterSystem& sys, const Product& p, const NodeLasso& l) {
  PathLasso out;
  auto conv = [&](const std::vector<unsigned>& nodes, const std::vector<unsigned>& labels, std::vector<Step>& dst) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto s = static_cast<unsigned>(nodes[i] / p.nq);
      dst.push_back({s, sys.edges[s][labels[i]].input});
    }
  };
  conv(l.stem, l.stem_labels, out.stem);
  conv(l.loop, l.loop_labels, out.loop);
  // the automaton part is gone, so the system path may repeat earlier
  auto same = [](const Step& a, const Step& b) { return a.state == b.state && a.input == b.input; };
  while (!out.stem.empty() && same(out.stem.back(), out.loop.back())) {
    std::rotate(out.loop.rbegin(), out.loop.rbegin() + 1, out.loop.rend());
    out.stem.pop_back();
  }
  const std::size_t n = out.loop.size();
  for (std::size_t period = 1; period < n; ++period) {
    if (n % period) continue;
    bool periodic = true;
    for (std::size_t i = period; i < n && periodic; ++i) periodic = same(out.loop[i], out.loop[i - period]);
    if (periodic) {
      out.loop.resize(period);
      break;
    }
  }
  return out;
}

void top_level_quantifiers(const Formula& f, std::vector<Formula>& out) {
  if (f.is_quantifier()) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return;
  }
  for (const auto& c : f.children()) top_level_quantifiers(c, out);
}

bool eval_state(const Formula& f, const Alphabet& basis, Valuation v) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Lit: return v.test(basis.require(f.name())) == f.positive();
    case Op::And: return eval_state(f.lhs(), basis, v) && eval_state(f.rhs(), basis, v);
    case Op::Or: return eval_state(f.lhs(), basis, v) || eval_state(f.rhs(), basis, v);
    default: throw std::invalid_argument("not a state formula: " + to_string(f));
  }
}

}  // namespace

LetterSystem letter_system(const MooreMachine& m) {
  LetterSystem sys;
  sys.basis = m.io_alphabet();
  sys.initial = m.initial;
  sys.edges.resize(m.size());
  for (unsigned s = 0; s < m.size(); ++s)
    for (unsigned e = 0; e < m.input_count(); ++e) sys.edges[s].push_back({m.letter(s, e), m.next[s][e], e});
  return sys;
}

std::vector<bool> exists_states(const LetterSystem& sys, const Nbw& a) {
  const Product p = product(sys, a);
  const auto good = accepting_future(p.graph);
  std::vector<bool> out(sys.size());
  for (unsigned s = 0; s < sys.size(); ++s) out[s] = good[p.node(s, a.initial)];
  return out;
}

std::optional<PathLasso> exists_path(const LetterSystem& sys, unsigned from, const Nbw& a) {
  const Product p = product(sys, a);
  auto l = exists_accepting_path(p.graph, p.node(from, a.initial));
  if (!l) return std::nullopt;
  return to_path(sys, p, *l);
}

std::vector<bool> exists_states(const LetterSystem& sys, const Formula& phi) {
  require_props(phi, sys.basis);
  return exists_states(sys, nbw_of_path_formula(phi, sys.basis));
}

std::optional<PathLasso> exists_path(const LetterSystem& sys, unsigned from, const Formula& phi) {
  require_props(phi, sys.basis);
  return exists_path(sys, from, nbw_of_path_formula(phi, sys.basis));
}

LtlVerdict check_ltl(const LetterSystem& sys, const Formula& phi) {
  require_props(phi, sys.basis);
  LtlVerdict v;
  v.counterexample = exists_path(sys, sys.initial, to_pnf(Formula::negation(phi)));
  v.holds = !v.counterexample;
  return v;
}

LtlVerdict check_ltl(const MooreMachine& m, const Formula& phi) { return check_ltl(letter_system(m), phi); }

CtlStarChecker::CtlStarChecker(const Formula& state_formula, std::vector<std::string> inputs,
                               std::vector<std::string> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  subformulas_ = quantified_subformulas(state_formula);
  const std::size_t n = subformulas_.size();
  std::vector<std::string> names = inputs_;
  names.insert(names.end(), outputs_.begin(), outputs_.end());
  label_base_ = names.size();
  for (std::size_t i = 0; i < n; ++i) names.push_back("@" + std::to_string(i));
  basis_ = Alphabet(names);

  SubstitutionTable table;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& q = subformulas_[i];
    const Formula body = substitute(q.body, table);
    require_props(body, basis_);
    bodies_.push_back(body);
    // universal subformulas are labeled through their negated body
    nbws_.push_back(nbw_of_path_formula(q.existential() ? body : to_pnf(Formula::negation(body)), basis_));
    table.emplace(q.node, Formula::lit("@" + std::to_string(i)));
  }
  top_ = substitute(state_formula, table);
  require_props(top_, basis_);
  for (const auto& p : propositions(top_))
    if (basis_.require(p) < inputs_.size()) throw AlphabetMismatch("input '" + p + "' used as a state formula");
  std::vector<Formula> tops;
  top_level_quantifiers(state_formula, tops);
  for (std::size_t i = 0; i < n; ++i)
    top_level_.push_back(std::find(tops.begin(), tops.end(), subformulas_[i].node) != tops.end());
}

CtlStarResult CtlStarChecker::check(const MooreMachine& m, bool with_witnesses) const {
  if (m.inputs != inputs_ || m.outputs != outputs_)
    throw AlphabetMismatch("machine alphabet differs from the checker's");
  CtlStarResult r;
  r.subformulas = subformulas_;
  LetterSystem sys = letter_system(m);
  sys.basis = basis_;
  for (std::size_t i = 0; i < subformulas_.size(); ++i) {
    std::vector<bool> lab = exists_states(sys, nbws_[i]);
    if (!subformulas_[i].existential()) lab.flip();
    for (unsigned s = 0; s < m.size(); ++s)
      if (lab[s])
        for (auto& e : sys.edges[s]) e.letter.set(static_cast<unsigned>(label_base_ + i));
    r.labels.push_back(std::move(lab));
  }
  // any edge of the initial state carries its state part
  r.holds = eval_state(top_, basis_, sys.edges[m.initial].front().letter);
  if (!with_witnesses) return r;
  for (std::size_t i = 0; i < subformulas_.size(); ++i) {
    if (!top_level_[i]) continue;
    const bool ex = subformulas_[i].existential();
    if (ex != r.labels[i][m.initial]) continue;
    // for A the automaton reads the negated body: its path refutes the formula
    if (auto w = exists_path(sys, m.initial, nbws_[i]))
      (ex ? r.witnesses : r.counterexamples).emplace_back(static_cast<unsigned>(i), *w);
  }
  return r;
}

CtlStarResult check_ctlstar(const MooreMachine& m, const Formula& state_formula) {
  return CtlStarChecker(state_formula, m.inputs, m.outputs).check(m);
}

CtlStarResult check_ctlstar(const MooreMachine& m, const Spec& spec) {
  for (const auto& i : spec.inputs)
    if (std::find(m.inputs.begin(), m.inputs.end(), i) == m.inputs.end())
      throw AlphabetMismatch("spec input '" + i + "' is not a machine input");
  for (const auto& o : spec.outputs)
    if (std::find(m.outputs.begin(), m.outputs.end(), o) == m.outputs.end())
      throw AlphabetMismatch("spec output '" + o + "' is not a machine output");
  return check_ctlstar(m, spec.formula);
}

std::string format_lasso(const MooreMachine& m, const PathLasso& l) {
  auto steps = [&](const std::vector<Step>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += m.names[v[i].state] + "{";
      for (std::size_t b = 0; b < m.inputs.size(); ++b)
        s += std::string(b ? "," : "") + m.inputs[b] + "=" + (((v[i].input >> b) & 1U) ? "1" : "0");
      s += "}";
    }
    return s;
  };
  return "stem=" + steps(l.stem) + " loop=" + steps(l.loop);
}

std::string ctlstar_report(const MooreMachine& m, const CtlStarResult& r) {
  std::string s = r.holds ? "HOLDS\n" : "FAILS\n";
  for (std::size_t i = 0; i < r.subformulas.size(); ++i)
    s += "# f" + std::to_string(i) + " = " + to_string(r.subformulas[i].node) + "\n";
  for (unsigned q = 0; q < m.size(); ++q)
    for (std::size_t i = 0; i < r.subformulas.size(); ++i)
      s += "label " + m.names[q] + " f" + std::to_string(i) + " " + (r.labels[i][q] ? "1" : "0") + "\n";
  for (const auto& [i, w] : r.witnesses) s += "witness f" + std::to_string(i) + " " + format_lasso(m, w) + "\n";
  for (const auto& [i, w] : r.counterexamples)
    s += "counterexample f" + std::to_string(i) + " " + format_lasso(m, w) + "\n";
  return s;
}

std::string ltl_report(const MooreMachine& m, const LtlVerdict& v) {
  std::string s = v.holds ? "HOLDS\n" : "FAILS\n";
  if (v.counterexample) s += "counterexample " + format_lasso(m, *v.counterexample) + "\n";
  return s;
}

}  // namespace ctlstar2ltl
