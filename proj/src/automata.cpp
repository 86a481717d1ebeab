#include "ctlstar2ltl/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ctlstar2ltl/graph.hpp"

namespace ctlstar2ltl {

namespace {

using FormulaSet = std::vector<Formula>;  // sorted by key, unique, no `true`

FormulaSet normalize(FormulaSet s) {
  std::erase_if(s, [](const Formula& f) { return f.is(Op::True); });
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::string set_key(const FormulaSet& s) {
  std::string k;
  for (const auto& f : s) {
    k += f.key();
    k += '\x1f';
  }
  return k;
}

std::string set_text(const FormulaSet& s) {
  if (s.empty()) return "true";
  std::string t;
  for (const auto& f : s) {
    if (!t.empty()) t += " & ";
    t += to_string(f);
  }
  return t;
}

struct Cover {
  Cube cube;
  FormulaSet next;
  std::vector<unsigned> postponed;  // sorted until indices left pending
};

class Tableau {
 public:
  Tableau(const Formula& phi, const Alphabet& basis) : basis_(basis) { index_untils(phi); }

  std::size_t until_count() const { return untils_.size(); }

  std::vector<Cover> expand(const FormulaSet& state) const {
    std::vector<Cover> raw;
    Branch b;
    b.todo.assign(state.rbegin(), state.rend());
    run(std::move(b), raw);
    for (auto& c : raw) {
      c.next = normalize(std::move(c.next));
      std::sort(c.postponed.begin(), c.postponed.end());
      c.postponed.erase(std::unique(c.postponed.begin(), c.postponed.end()), c.postponed.end());
    }
    return prune(std::move(raw));
  }

 private:
  struct Branch {
    std::vector<Formula> todo;
    Cube cube;
    FormulaSet next;
    std::vector<unsigned> postponed;
    std::unordered_set<Formula, FormulaHash> done;
  };

  void index_untils(const Formula& f) {
    if (f.is(Op::Until) && !until_index_.count(f)) {
      until_index_.emplace(f, static_cast<unsigned>(untils_.size()));
      untils_.push_back(f);
    }
    for (const auto& c : f.children()) index_untils(c);
  }

  void run(Branch b, std::vector<Cover>& out) const {
    while (!b.todo.empty()) {
      Formula f = b.todo.back();
      b.todo.pop_back();
      if (!b.done.insert(f).second) continue;
      switch (f.op()) {
        case Op::True: continue;
        case Op::False: return;
        case Op::Lit: {
          const std::uint64_t bit = std::uint64_t{1} << basis_.require(f.name());
          const std::uint64_t val = f.positive() ? bit : 0;
          if ((b.cube.care & bit) && (b.cube.value & bit) != val) return;
          b.cube.care |= bit;
          b.cube.value |= val;
          continue;
        }
        case Op::And:
          b.todo.push_back(f.rhs());
          b.todo.push_back(f.lhs());
          continue;
        case Op::Or: {
          Branch alt = b;
          alt.todo.push_back(f.rhs());
          b.todo.push_back(f.lhs());
          run(std::move(b), out);
          run(std::move(alt), out);
          return;
        }
        case Op::Next: b.next.push_back(f.child(0)); continue;
        case Op::Until: {
          Branch later = b;
          later.todo.push_back(f.lhs());
          later.next.push_back(f);
          later.postponed.push_back(until_index_.at(f));
          b.todo.push_back(f.rhs());
          run(std::move(b), out);
          run(std::move(later), out);
          return;
        }
        case Op::Release: {
          Branch later = b;
          later.todo.push_back(f.rhs());
          later.next.push_back(f);
          b.todo.push_back(f.rhs());
          b.todo.push_back(f.lhs());
          run(std::move(b), out);
          run(std::move(later), out);
          return;
        }
        default:
          throw std::invalid_argument("nbw_of_path_formula: expected quantifier-free PNF, got " +
                                      to_string(f));
      }
    }
    out.push_back({b.cube, std::move(b.next), std::move(b.postponed)});
  }

  // Drops covers that another cover makes redundant: weaker letter
  // requirement, fewer obligations, fewer pending untils.
  static std::vector<Cover> prune(std::vector<Cover> covers) {
    auto subset = [](const auto& a, const auto& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    auto subsumes = [&](const Cover& a, const Cover& b) {
      return (a.cube.care & ~b.cube.care) == 0 && ((a.cube.value ^ b.cube.value) & a.cube.care) == 0 &&
             subset(a.next, b.next) && subset(a.postponed, b.postponed);
    };
    std::vector<bool> redundant(covers.size(), false);
    for (std::size_t i = 0; i < covers.size(); ++i) {
      for (std::size_t j = 0; j < covers.size() && !redundant[i]; ++j) {
        if (i == j || !subsumes(covers[j], covers[i])) continue;
        // identical covers: keep the first
        redundant[i] = !subsumes(covers[i], covers[j]) || j < i;
      }
    }
    std::vector<Cover> kept;
    for (std::size_t i = 0; i < covers.size(); ++i)
      if (!redundant[i]) kept.push_back(std::move(covers[i]));
    return kept;
  }

  const Alphabet& basis_;
  std::vector<Formula> untils_;
  std::unordered_map<Formula, unsigned, FormulaHash> until_index_;
};

// Merges edges to the same target whose cubes differ in one literal, and
// drops edges whose cube is contained in another edge to the same target.
void merge_edges(std::vector<NbwEdge>& edges) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges.size() && !changed; ++i) {
      for (std::size_t j = 0; j < edges.size() && !changed; ++j) {
        if (i == j || edges[i].target != edges[j].target) continue;
        const Cube& a = edges[i].guard;
        const Cube& b = edges[j].guard;
        const bool a_in_b = (b.care & ~a.care) == 0 && ((a.value ^ b.value) & b.care) == 0;
        if (a_in_b) {
          edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        const std::uint64_t diff = a.value ^ b.value;
        if (a.care == b.care && diff && (diff & (diff - 1)) == 0) {
          edges[i].guard = {a.care & ~diff, a.value & ~diff};
          edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }
}

}  // namespace

Nbw nbw_of_path_formula(const Formula& phi, const Alphabet& basis) {
  const Tableau tableau(phi, basis);
  const std::size_t n_sets = tableau.until_count();

  // Generalized automaton over obligation sets, explored breadth first.
  std::vector<FormulaSet> gstates;
  std::unordered_map<std::string, unsigned> gindex;
  std::vector<std::vector<Cover>> gcovers;
  auto intern = [&](FormulaSet s) {
    auto key = set_key(s);
    auto [it, fresh] = gindex.emplace(std::move(key), static_cast<unsigned>(gstates.size()));
    if (fresh) gstates.push_back(std::move(s));
    return it->second;
  };
  intern(normalize({phi}));
  for (std::size_t i = 0; i < gstates.size(); ++i) {
    auto covers = tableau.expand(gstates[i]);
    for (const auto& c : covers) intern(c.next);
    gcovers.push_back(std::move(covers));
  }

  // Counter degeneralization: level n_sets marks a completed round.
  struct Raw {
    unsigned gstate, level;
    std::vector<NbwEdge> edges;
  };
  std::vector<Raw> raw;
  std::map<std::pair<unsigned, unsigned>, unsigned> rindex;
  auto rintern = [&](unsigned g, unsigned level) {
    auto [it, fresh] = rindex.emplace(std::make_pair(g, level), static_cast<unsigned>(raw.size()));
    if (fresh) raw.push_back({g, level, {}});
    return it->second;
  };
  rintern(0, 0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const unsigned g = raw[i].gstate;
    const unsigned level = raw[i].level;
    for (const auto& c : gcovers[g]) {
      unsigned j = level == n_sets ? 0 : level;
      while (j < n_sets && !std::binary_search(c.postponed.begin(), c.postponed.end(), j)) ++j;
      const unsigned target = rintern(gindex.at(set_key(c.next)), j);
      raw[i].edges.push_back({c.cube, target, false});
    }
  }

  Digraph dg;
  for (const auto& r : raw) dg.add_node(r.level == n_sets);
  for (unsigned i = 0; i < raw.size(); ++i)
    for (const auto& e : raw[i].edges) dg.arcs[i].push_back({e.target, 0});
  const auto live = accepting_future(dg);

  Nbw a;
  a.basis = basis;
  std::vector<unsigned> renum(raw.size(), ~0U);
  std::deque<unsigned> queue;
  if (live[0]) {
    renum[0] = 0;
    queue.push_back(0);
  }
  std::vector<unsigned> order;
  while (!queue.empty()) {
    const unsigned v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (const auto& e : raw[v].edges)
      if (live[e.target] && renum[e.target] == ~0U) {
        renum[e.target] = static_cast<unsigned>(order.size() + queue.size());
        queue.push_back(e.target);
      }
  }
  for (unsigned v : order) {
    std::vector<NbwEdge> edges;
    for (const auto& e : raw[v].edges)
      if (live[e.target]) edges.push_back({e.guard, renum[e.target], false});
    merge_edges(edges);
    a.edges.push_back(std::move(edges));
    a.accepting.push_back(raw[v].level == n_sets);
    std::string name = set_text(gstates[raw[v].gstate]);
    if (n_sets > 0) name += " #" + std::to_string(raw[v].level);
    a.names.push_back(std::move(name));
  }

  const auto sink = static_cast<unsigned>(a.edges.size());
  bool need_sink = a.edges.empty();
  for (auto& edges : a.edges) {
    std::vector<Cube> guards;
    for (const auto& e : edges) guards.push_back(e.guard);
    for (const auto& c : complement(guards)) {
      edges.push_back({c, sink, true});
      need_sink = true;
    }
  }
  if (need_sink) {
    a.edges.push_back({{Cube::top(), sink, true}});
    a.accepting.push_back(false);
    a.names.push_back("sink");
    a.sink = sink;
  }
  a.initial = 0;
  return a;
}

std::size_t state_count(const Nbw& a) { return a.size() - (a.sink ? 1 : 0); }

bool is_complete(const Nbw& a) {
  for (const auto& edges : a.edges) {
    std::vector<Cube> guards;
    for (const auto& e : edges) guards.push_back(e.guard);
    if (!complement(guards).empty()) return false;
  }
  return true;
}

bool accepts_lasso(const Nbw& a, const LassoWord& w) {
  const std::size_t len = w.length();
  Digraph g;
  for (unsigned q = 0; q < a.size(); ++q)
    for (std::size_t p = 0; p < len; ++p) g.add_node(a.accepting[q]);
  for (unsigned q = 0; q < a.size(); ++q)
    for (std::size_t p = 0; p < len; ++p) {
      const auto from = static_cast<unsigned>(q * len + p);
      const auto succ = w.successor(p);
      a.successors(q, w.at(p), [&](unsigned t) {
        g.arcs[from].push_back({static_cast<unsigned>(t * len + succ), 0});
      });
    }
  return exists_accepting_path(g, static_cast<unsigned>(a.initial * len)).has_value();
}

bool eval_ltl_on_lasso(const Formula& phi, const Alphabet& basis, const LassoWord& w) {
  const std::size_t n = w.length();
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  std::unordered_map<Formula, std::vector<bool>, FormulaHash> memo;

  std::function<const std::vector<bool>&(const Formula&)> eval = [&](const Formula& f) -> const std::vector<bool>& {
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    std::vector<bool> v(n, false);
    auto lfp = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
      v = b;
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t p = 0; p < n; ++p)
          if (!v[p] && a[p] && v[w.successor(p)]) v[p] = changed = true;
      }
    };
    auto gfp = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
      v = b;
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t p = 0; p < n; ++p)
          if (v[p] && !a[p] && !v[w.successor(p)]) {
            v[p] = false;
            changed = true;
          }
      }
    };
    const std::vector<bool> all(n, true), none(n, false);
    switch (f.op()) {
      case Op::True: v = all; break;
      case Op::False: break;
      case Op::Lit: {
        const unsigned i = basis.require(f.name());
        for (std::size_t p = 0; p < n; ++p) v[p] = w.at(p).test(i) == f.positive();
        break;
      }
      case Op::Not: {
        const auto& a = eval(f.child(0));
        for (std::size_t p = 0; p < n; ++p) v[p] = !a[p];
        break;
      }
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff: {
        const auto a = eval(f.lhs());
        const auto& b = eval(f.rhs());
        for (std::size_t p = 0; p < n; ++p) {
          switch (f.op()) {
            case Op::And: v[p] = a[p] && b[p]; break;
            case Op::Or: v[p] = a[p] || b[p]; break;
            case Op::Implies: v[p] = !a[p] || b[p]; break;
            default: v[p] = a[p] == b[p]; break;
          }
        }
        break;
      }
      case Op::Next: {
        const auto& a = eval(f.child(0));
        for (std::size_t p = 0; p < n; ++p) v[p] = a[w.successor(p)];
        break;
      }
      case Op::Until: {
        const auto a = eval(f.lhs());
        lfp(a, eval(f.rhs()));
        break;
      }
      case Op::Finally: lfp(all, eval(f.child(0))); break;
      case Op::Release: {
        // a R b: b holds up to and including the first a, or forever
        const auto a = eval(f.lhs());
        gfp(a, eval(f.rhs()));
        break;
      }
      case Op::Globally: gfp(none, eval(f.child(0))); break;
      default: throw std::invalid_argument("eval_ltl_on_lasso: unsupported node " + to_string(f));
    }
    return memo.emplace(f, std::move(v)).first->second;
  };
  return eval(phi)[0];
}

std::string to_dot(const Nbw& a) {
  auto escape = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o;
  };
  std::string s = "digraph nbw {\n  rankdir=LR;\n  init [shape=point];\n";
  for (unsigned q = 0; q < a.size(); ++q) {
    s += "  q" + std::to_string(q) + " [label=\"" + escape(a.names[q]) + "\", shape=" +
         (a.accepting[q] ? "doublecircle" : "circle") + "];\n";
  }
  s += "  init -> q" + std::to_string(a.initial) + ";\n";
  for (unsigned q = 0; q < a.size(); ++q)
    for (const auto& e : a.edges[q]) {
      s += "  q" + std::to_string(q) + " -> q" + std::to_string(e.target) + " [label=\"" +
           escape(a.basis.format(e.guard)) + "\"" + (e.completion ? ", style=dashed" : "") + "];\n";
    }
  s += "}\n";
  return s;
}

}  // namespace ctlstar2ltl
