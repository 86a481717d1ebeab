#include "ctlstar2ltl/synth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include <spdlog/spdlog.h>

namespace ctlstar2ltl {

std::size_t Ucw::rejecting_count() const {
  std::size_t n = 0;
  for (unsigned q = 0; q < size(); ++q) n += rejecting(q) && automaton.sink != q;
  return n;
}

Ucw ucw_of_ltl(const Formula& phi, const Alphabet& basis) {
  return Ucw{nbw_of_path_formula(to_pnf(Formula::negation(phi)), basis)};
}

bool ucw_accepts_lasso(const Ucw& u, const LassoWord& w) { return !accepts_lasso(u.automaton, w); }

LetterSystem letter_system(const MealyMachine& m) {
  std::vector<std::string> names = m.inputs;
  names.insert(names.end(), m.outputs.begin(), m.outputs.end());
  LetterSystem sys;
  sys.basis = Alphabet(names);
  sys.initial = m.initial;
  sys.edges.resize(m.size());
  for (unsigned s = 0; s < m.size(); ++s)
    for (unsigned e = 0; e < m.input_count(); ++e)
      sys.edges[s].push_back({Valuation{e | (m.out[s][e].bits << m.inputs.size())}, m.next[s][e], e});
  return sys;
}

namespace {

std::string bits_text(const std::vector<std::string>& props, std::uint64_t v) {
  std::string s;
  for (std::size_t b = 0; b < props.size(); ++b)
    s += std::string(b ? "," : "") + props[b] + "=" + (((v >> b) & 1U) ? "1" : "0");
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

}  // namespace

std::string serialize_mealy(const MealyMachine& m) {
  std::string s = "MEALY\n";
  s += "inputs: " + join(m.inputs) + ";\n";
  s += "outputs: " + join(m.outputs) + ";\n";
  s += "init: " + m.names[m.initial] + ";\n";
  for (unsigned q = 0; q < m.size(); ++q) {
    s += "state " + m.names[q] + "\n";
    for (unsigned e = 0; e < m.input_count(); ++e)
      s += "  " + m.names[q] + " -{" + bits_text(m.inputs, e) + "}/{" + bits_text(m.outputs, m.out[q][e].bits) +
           "}-> " + m.names[m.next[q][e]] + ";\n";
  }
  return s;
}

MealyMachine minimize(const MealyMachine& m) {
  std::vector<unsigned> order, pos(m.size(), ~0U);
  std::deque<unsigned> queue{m.initial};
  pos[m.initial] = 0;
  order.push_back(m.initial);
  while (!queue.empty()) {
    const unsigned q = queue.front();
    queue.pop_front();
    for (unsigned t : m.next[q])
      if (pos[t] == ~0U) {
        pos[t] = static_cast<unsigned>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
  }
  const std::size_t n = order.size();
  std::vector<unsigned> block(n, 0);
  std::size_t count = 1;
  for (;;) {
    std::map<std::vector<std::uint64_t>, unsigned> ids;
    std::vector<unsigned> refined(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint64_t> sig{block[i]};
      for (unsigned e = 0; e < m.input_count(); ++e) {
        sig.push_back(m.out[order[i]][e].bits);
        sig.push_back(block[pos[m.next[order[i]][e]]]);
      }
      refined[i] = ids.emplace(std::move(sig), static_cast<unsigned>(ids.size())).first->second;
    }
    block = std::move(refined);
    if (ids.size() == count) break;
    count = ids.size();
  }
  std::vector<unsigned> renum(n, ~0U), rep;
  for (std::size_t i = 0; i < n; ++i)
    if (renum[block[i]] == ~0U) {
      renum[block[i]] = static_cast<unsigned>(rep.size());
      rep.push_back(order[i]);
    }
  MealyMachine r;
  r.inputs = m.inputs;
  r.outputs = m.outputs;
  for (unsigned q : rep) {
    r.names.push_back(m.names[q]);
    r.out.push_back(m.out[q]);
    std::vector<unsigned> row;
    for (unsigned t : m.next[q]) row.push_back(renum[block[pos[t]]]);
    r.next.push_back(std::move(row));
  }
  return r;
}

std::size_t SynthResult::machine_size() const {
  if (moore) return moore->size();
  if (mealy) return mealy->size();
  return 0;
}

namespace {

using Counts = std::vector<std::int8_t>;  // -1 untracked, else visits to rejecting states

struct CountsHash {
  std::size_t operator()(const Counts& c) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : c) h = (h ^ static_cast<std::uint8_t>(x)) * 1099511628211ULL;
    return h;
  }
};

struct Item {
  Cube cube;  // full letter cube
  unsigned succ;
};

// One decision of the system. Moore has a single slot whose alternatives are
// output cubes, each followed by every input cube. Mealy has a slot per input
// cube whose alternatives are single output cubes.
struct Alt {
  Cube cube;
  std::vector<Item> items;
};

struct Slot {
  Cube scope;
  std::optional<Cube> cursor;  // last alternative tried
  std::optional<Alt> choice;
};

struct Active {
  int count;
  const NbwEdge* edge;
};

struct Position {
  Counts counts;
  bool lost = false;
  bool expanded = false;
  std::size_t checked = 0;  // lost antichain entries already compared
  std::vector<Slot> slots;
};

// a needs at most the obligations of b
bool below(const Counts& a, const Counts& b) {
  for (std::size_t q = 0; q < a.size(); ++q)
    if (a[q] > b[q]) return false;
  return true;
}

// Local solver for the counting-function safety game. Alternatives are tried
// lazily in lexicographic order and a losing verdict is final, so every
// position walks its alternatives at most once. A set of positions closed
// under the current choices is a winning strategy.
class Game {
 public:
  Game(const Ucw& ucw, std::size_t n_inputs, std::size_t n_outputs, SystemType type, unsigned bound)
      : ucw_(ucw), type_(type), bound_(bound) {
    const std::uint64_t in_mask = (std::uint64_t{1} << n_inputs) - 1;
    const std::uint64_t out_mask = ((std::uint64_t{1} << n_outputs) - 1) << n_inputs;
    outputs_ = out_mask;
    inputs_ = in_mask;
    find_doomed();
  }

  enum class Outcome { Win, Lose, Truncated };

  Outcome solve(std::size_t limit) {
    Counts init(ucw_.size(), -1);
    init[ucw_.automaton.initial] = 0;
    return solve_from(init, limit);
  }

  // Positions of every closed strategy found so far keep their choices
  // for good: their successors are winning, so never marked lost.
  Outcome solve_from(const Counts& root_counts, std::size_t limit) {
    const unsigned root = intern(root_counts);
    std::vector<unsigned> strategy;
    for (;;) {
      bool changed = false;
      strategy.clear();
      std::vector<char> seen(positions_.size(), 0);
      std::deque<unsigned> queue{root};
      seen[root] = 1;
      while (!queue.empty()) {
        const unsigned p = queue.front();
        queue.pop_front();
        if (!settle(p)) {
          changed = true;
          if (p == root) return Outcome::Lose;
          continue;
        }
        if (positions_.size() > limit) return Outcome::Truncated;
        strategy.push_back(p);
        seen.resize(positions_.size(), 0);
        for (const auto& s : positions_[p].slots)
          for (const auto& it : s.choice->items)
            if (!seen[it.succ]) {
              seen[it.succ] = 1;
              queue.push_back(it.succ);
            }
      }
      if (!changed) {
        for (unsigned p : strategy)
          if (!verified_[p]) {
            verified_[p] = 1;
            winners_.push_back(p);
          }
        return Outcome::Win;
      }
    }
  }

  unsigned id_of(const Counts& c) const { return ids_.at(c); }

  std::size_t size() const { return positions_.size(); }
  const std::vector<unsigned>& winners() const { return winners_; }
  const Position& position(unsigned p) const { return positions_[p]; }

 private:
  unsigned intern(const Counts& c) {
    auto [it, fresh] = ids_.emplace(c, static_cast<unsigned>(positions_.size()));
    if (fresh) {
      positions_.push_back(Position{c, false, false, 0, {}});
      verified_.push_back(0);
    }
    return it->second;
  }

  // States whose NBW reading accepts every word: a true-guarded path leads
  // to an accepting cycle of true edges. A run entering one rejects forever.
  void find_doomed() {
    const auto& a = ucw_.automaton;
    const std::size_t n = a.size();
    std::vector<std::vector<unsigned>> succ(n);
    for (unsigned q = 0; q < n; ++q)
      for (const auto& e : a.edges[q])
        if (e.guard.care == 0 && e.target != a.sink) succ[q].push_back(e.target);
    doomed_.assign(n, 0);
    // accepting states on a true cycle, then everything reaching them
    for (unsigned q = 0; q < n; ++q) {
      if (!a.accepting[q] || a.sink == q) continue;
      std::vector<char> seen(n, 0);
      std::vector<unsigned> todo(succ[q]);
      while (!todo.empty() && !doomed_[q]) {
        const unsigned x = todo.back();
        todo.pop_back();
        if (seen[x]) continue;
        seen[x] = 1;
        if (x == q) doomed_[q] = 1;
        for (unsigned y : succ[x]) todo.push_back(y);
      }
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (unsigned q = 0; q < n; ++q)
        if (!doomed_[q] && std::any_of(succ[q].begin(), succ[q].end(), [&](unsigned t) { return doomed_[t]; }))
          doomed_[q] = grew = true;
    }
  }

  bool overflows(const Active& a) const {
    return doomed_[a.edge->target] || a.count + (ucw_.rejecting(a.edge->target) ? 1 : 0) > static_cast<int>(bound_);
  }

  // Leaves of the split on `mask` below `c`, in order, strictly after
  // `after` when given; stops as soon as `visit` returns true. Live edge
  // sets are ranges of `stack_`, which only grows while they are in use.
  // On outputs, a subtree is skipped once an edge taken under every
  // completion overflows: all its alternatives are dead.
  template <typename Visit>
  bool leaves(std::uint64_t mask, Cube c, std::size_t from, std::size_t to, const Cube* after, Visit&& visit,
              std::size_t certain_before = 0) {
    const std::size_t begin = stack_.size();
    std::uint64_t pending = 0;
    std::size_t certain = 0;
    for (std::size_t i = from; i < to; ++i) {
      const Active a = stack_[i];
      if (a.edge->guard.intersects(c)) {
        const std::uint64_t open = a.edge->guard.care & mask & ~c.care;
        if (mask == outputs_ && !(a.edge->guard.care & outputs_ & ~c.care)) {
          if (overflows(a)) {
            stack_.resize(begin);
            return false;
          }
          ++certain;
        }
        stack_.push_back(a);
        pending |= open;
      }
    }
    if (mask == outputs_ && certain > certain_before && pending && forced_loss(c, begin, stack_.size())) {
      stack_.resize(begin);
      return false;
    }
    const std::size_t end = stack_.size();
    bool stop = false;
    if (!pending) {
      stop = after ? false : visit(c, begin, end);
    } else {
      const std::uint64_t bit = pending & (~pending + 1);
      const Cube zero{c.care | bit, c.value}, one{c.care | bit, c.value | bit};
      if (after && (after->value & bit))
        stop = leaves(mask, one, begin, end, after, visit, certain);
      else
        stop = leaves(mask, zero, begin, end, after, visit, certain) ||
               leaves(mask, one, begin, end, nullptr, visit, certain);
    }
    stack_.resize(begin);
    return stop;
  }

  // Edges whose outputs are fixed by c fire under every completion, so per
  // input valuation they bound the successor from below. A lost position
  // under that bound loses every alternative below c.
  bool forced_loss(Cube c, std::size_t from, std::size_t to) {
    if (antichain_.empty() || std::popcount(inputs_) > 6) return false;
    const std::size_t n = ucw_.size();
    const unsigned inputs = 1U << std::popcount(inputs_);
    for (unsigned e = 0; e < inputs; ++e) {
      if (type_ == SystemType::Mealy && !c.matches(Valuation{e | (c.value & outputs_)})) continue;
      Counts low(n, -1);
      bool any = false;
      for (std::size_t i = from; i < to; ++i) {
        const Active a = stack_[i];
        const Cube& g = a.edge->guard;
        if ((g.care & outputs_ & ~c.care) || ((e ^ g.value) & g.care & inputs_)) continue;
        const auto v = static_cast<std::int8_t>(a.count + (ucw_.rejecting(a.edge->target) ? 1 : 0));
        low[a.edge->target] = std::max(low[a.edge->target], v);
        any = true;
      }
      if (!any) continue;
      for (unsigned l : antichain_)
        if (below(positions_[l].counts, low)) return true;
    }
    return false;
  }

  // Pushes the edges leaving tracked states of p; returns the range start.
  std::size_t push_active(unsigned p) {
    const std::size_t begin = stack_.size();
    const Counts& cur = positions_[p].counts;
    for (unsigned q = 0; q < cur.size(); ++q) {
      if (cur[q] < 0) continue;
      for (const auto& e : ucw_.automaton.edges[q])
        if (e.target != ucw_.automaton.sink) stack_.push_back({cur[q], &e});
    }
    return begin;
  }

  // Successor counting function of a leaf; nullopt when a counter overflows.
  std::optional<unsigned> successor(unsigned p, std::size_t from, std::size_t to) {
    Counts next(positions_[p].counts.size(), -1);
    for (std::size_t i = from; i < to; ++i) {
      const Active a = stack_[i];
      if (overflows(a)) return std::nullopt;
      const int v = a.count + (ucw_.rejecting(a.edge->target) ? 1 : 0);
      auto& slot = next[a.edge->target];
      slot = std::max<std::int8_t>(slot, static_cast<std::int8_t>(v));
    }
    return intern(next);
  }

  bool lost(unsigned p) {
    auto& pos = positions_[p];
    for (; !pos.lost && pos.checked < antichain_.size(); ++pos.checked)
      pos.lost = below(positions_[antichain_[pos.checked]].counts, pos.counts);
    return pos.lost;
  }

  bool viable(const Alt& a) {
    return std::none_of(a.items.begin(), a.items.end(), [&](const Item& i) { return lost(i.succ); });
  }

  void mark_lost(unsigned p) {
    positions_[p].lost = true;
    antichain_.push_back(p);
  }

  // Moves the slot to its next viable alternative; false when exhausted.
  bool advance(unsigned p, std::size_t si, std::size_t from, std::size_t to) {
    const Cube scope = positions_[p].slots[si].scope;
    std::optional<Cube> after = positions_[p].slots[si].cursor;
    std::optional<Alt> found;
    leaves(outputs_, scope, from, to, after ? &*after : nullptr, [&](Cube c, std::size_t lb, std::size_t le) {
      positions_[p].slots[si].cursor = c;
      Alt alt{c, {}};
      if (type_ == SystemType::Moore) {
        bool dead = false;
        leaves(inputs_, c, lb, le, nullptr, [&](Cube ic, std::size_t ib, std::size_t ie) {
          auto s = successor(p, ib, ie);
          if (!s) return dead = true;
          alt.items.push_back({ic, *s});
          return false;
        });
        if (dead) return false;
      } else {
        auto s = successor(p, lb, le);
        if (!s) return false;
        alt.items.push_back({c, *s});
      }
      if (!viable(alt)) return false;
      found = std::move(alt);
      return true;
    });
    positions_[p].slots[si].choice = std::move(found);
    return positions_[p].slots[si].choice.has_value();
  }

  // Makes every slot of p point at a viable alternative, or marks p lost.
  bool settle(unsigned p) {
    if (lost(p)) return false;
    const std::size_t from = push_active(p), to = stack_.size();
    bool ok = true;
    if (!positions_[p].expanded) {
      positions_[p].expanded = true;
      if (type_ == SystemType::Moore) {
        positions_[p].slots.push_back({Cube::top(), {}, {}});
      } else {
        std::vector<Cube> scopes;
        leaves(inputs_, Cube::top(), from, to, nullptr, [&](Cube c, std::size_t, std::size_t) {
          scopes.push_back(c);
          return false;
        });
        for (const auto& c : scopes) positions_[p].slots.push_back({c, {}, {}});
      }
    }
    for (std::size_t si = 0; ok && si < positions_[p].slots.size(); ++si) {
      const auto& slot = positions_[p].slots[si];
      if (slot.choice && viable(*slot.choice)) continue;
      ok = !(slot.cursor && !slot.choice) && advance(p, si, from, to);
    }
    stack_.resize(from);
    if (!ok) mark_lost(p);
    return ok;
  }

  const Ucw& ucw_;
  SystemType type_;
  unsigned bound_;
  std::uint64_t inputs_ = 0, outputs_ = 0;
  std::vector<Position> positions_;
  std::unordered_map<Counts, unsigned, CountsHash> ids_;
  std::vector<unsigned> winners_;
  std::vector<char> verified_;
  std::vector<unsigned> antichain_;  // genuinely lost positions
  std::vector<char> doomed_;
  std::vector<Active> stack_;
};

// Machine states are strategy positions. A successor may be served by any
// strategy position that dominates it, since winning is downward closed;
// states already in use are preferred, then maximal ones.
class StateMap {
 public:
  StateMap(const Game& g, unsigned root) : g_(g) { resolve(root); }

  unsigned resolve(unsigned succ) {
    if (auto it = alias_.find(succ); it != alias_.end()) return it->second;
    const Counts& c = g_.position(succ).counts;
    std::vector<unsigned> cands;
    for (unsigned p : g_.winners())
      if (below(c, g_.position(p).counts)) cands.push_back(p);
    unsigned pick = succ;
    auto used = std::find_if(states_.begin(), states_.end(), [&](unsigned p) { return below(c, g_.position(p).counts); });
    if (used != states_.end()) {
      pick = *used;
    } else {
      for (unsigned p : cands) {
        const bool maximal = std::none_of(cands.begin(), cands.end(), [&](unsigned o) {
          return o != p && below(g_.position(p).counts, g_.position(o).counts) &&
                 !below(g_.position(o).counts, g_.position(p).counts);
        });
        if (maximal) {
          pick = p;
          break;
        }
      }
    }
    auto [it, fresh] = index_.emplace(pick, static_cast<unsigned>(states_.size()));
    if (fresh) states_.push_back(pick);
    alias_.emplace(succ, it->second);
    return it->second;
  }

  // grows while rows are being filled
  const std::vector<unsigned>& states() const { return states_; }

 private:
  const Game& g_;
  std::vector<unsigned> states_;
  std::unordered_map<unsigned, unsigned> index_, alias_;
};

MooreMachine extract_moore(const Game& g, const LtlSpec& spec, StateMap& map) {
  const std::size_t ni = spec.inputs.size();
  MooreMachine m;
  m.inputs = spec.inputs;
  m.outputs = spec.outputs;
  for (std::size_t si = 0; si < map.states().size(); ++si) {
    const unsigned p = map.states()[si];
    const Alt& alt = *g.position(p).slots.front().choice;
    const std::uint64_t o = alt.cube.value;  // don't-cares at 0
    m.out.push_back(Valuation{o >> ni});
    std::vector<unsigned> row;
    for (unsigned e = 0; e < (1U << ni); ++e) {
      const Valuation letter{o | e};
      auto it = std::find_if(alt.items.begin(), alt.items.end(), [&](const Item& x) { return x.cube.matches(letter); });
      if (it == alt.items.end()) throw SynthError("input not covered by the game");
      row.push_back(map.resolve(it->succ));
    }
    m.next.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < m.out.size(); ++i) m.names.push_back("t" + std::to_string(i));
  return m;
}

MealyMachine extract_mealy(const Game& g, const LtlSpec& spec, StateMap& map) {
  const std::size_t ni = spec.inputs.size();
  MealyMachine m;
  m.inputs = spec.inputs;
  m.outputs = spec.outputs;
  for (std::size_t si = 0; si < map.states().size(); ++si) {
    const unsigned p = map.states()[si];
    const auto& slots = g.position(p).slots;
    std::vector<Valuation> outs;
    std::vector<unsigned> row;
    for (unsigned e = 0; e < (1U << ni); ++e) {
      auto slot = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) { return s.scope.matches(Valuation{e}); });
      if (slot == slots.end()) throw SynthError("input not covered by the game");
      const Item& it = slot->choice->items.front();
      outs.push_back(Valuation{(it.cube.value & ~((std::uint64_t{1} << ni) - 1)) >> ni});
      row.push_back(map.resolve(it.succ));
    }
    m.out.push_back(std::move(outs));
    m.next.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < m.out.size(); ++i) m.names.push_back("t" + std::to_string(i));
  return m;
}

bool holds(const MooreMachine& m, const Formula& phi);
bool holds(const MealyMachine& m, const Formula& phi);

// Two states can share the pointwise maximum of their counting functions
// whenever that position is winning too.
// Returns the plain extraction and the coarsened one.
template <typename M, typename Extract>
std::pair<M, M> coarsen(Game& game, std::size_t extra, Extract&& extract) {
  StateMap first(game, 0);
  const M plain = extract(first);
  M best = plain;
  std::vector<unsigned> states = first.states();
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < states.size() && !improved; ++i)
      for (std::size_t j = i + 1; j < states.size() && !improved; ++j) {
        Counts join = game.position(states[i]).counts;
        const Counts& other = game.position(states[j]).counts;
        for (std::size_t q = 0; q < join.size(); ++q) join[q] = std::max(join[q], other[q]);
        if (game.solve_from(join, game.size() + extra) != Game::Outcome::Win) continue;
        StateMap map(game, 0);
        M cand = extract(map);
        if (cand.size() < best.size()) {
          best = std::move(cand);
          states = map.states();
          improved = true;
        }
      }
  }
  return {plain, best};
}

// Verifies both candidates and keeps the smaller after shrinking.
template <typename M>
M finish(const std::pair<M, M>& cands, const Formula& phi, bool do_shrink) {
  for (const M* m : {&cands.first, &cands.second})
    if (!holds(*m, phi)) throw SynthError("extracted machine violates the specification");
  if (!do_shrink) return cands.second;
  M a = shrink(cands.first, phi), b = shrink(cands.second, phi);
  return b.size() <= a.size() ? b : a;
}

Alphabet game_basis(const LtlSpec& spec) {
  std::vector<std::string> names = spec.inputs;
  names.insert(names.end(), spec.outputs.begin(), spec.outputs.end());
  return Alphabet(names);
}

MealyMachine merge_mealy(const MealyMachine& m, unsigned keep, unsigned drop) {
  MealyMachine r;
  r.inputs = m.inputs;
  r.outputs = m.outputs;
  auto map = [&](unsigned s) {
    if (s == drop) s = keep;
    return s > drop ? s - 1 : s;
  };
  for (unsigned q = 0; q < m.size(); ++q) {
    if (q == drop) continue;
    r.names.push_back(m.names[q]);
    r.out.push_back(m.out[q]);
    std::vector<unsigned> row;
    for (unsigned t : m.next[q]) row.push_back(map(t));
    r.next.push_back(std::move(row));
  }
  r.initial = map(m.initial);
  return r;
}

bool holds(const MooreMachine& m, const Formula& phi) { return check_ltl(m, phi).holds; }
bool holds(const MealyMachine& m, const Formula& phi) { return check_ltl(letter_system(m), phi).holds; }
MooreMachine merge_any(const MooreMachine& m, unsigned a, unsigned b) { return merge_states(m, a, b); }
MealyMachine merge_any(const MealyMachine& m, unsigned a, unsigned b) { return merge_mealy(m, a, b); }

template <typename M>
M shrink_impl(const M& m, const Formula& phi) {
  M cur = minimize(m);
  for (bool progress = true; progress;) {
    progress = false;
    for (unsigned i = 0; i < cur.size() && !progress; ++i)
      for (unsigned j = i + 1; j < cur.size() && !progress; ++j)
        for (auto [keep, drop] : {std::pair{i, j}, std::pair{j, i}}) {
          M cand = minimize(merge_any(cur, keep, drop));
          if (holds(cand, phi)) {
            cur = std::move(cand);
            progress = true;
            break;
          }
        }
  }
  for (unsigned i = 0; i < cur.size(); ++i) cur.names[i] = "t" + std::to_string(i);
  return cur;
}

}  // namespace

MooreMachine shrink(const MooreMachine& m, const Formula& phi) { return shrink_impl(m, phi); }
MealyMachine shrink(const MealyMachine& m, const Formula& phi) { return shrink_impl(m, phi); }

SynthResult synth_game(const LtlSpec& spec, SystemType type, const SynthOptions& opts) {
  if (spec.inputs.size() > 16) throw std::invalid_argument("at most 16 inputs are supported");
  if (opts.bound > 100) throw std::invalid_argument("counter bound above 100");
  const Alphabet basis = game_basis(spec);
  const Ucw ucw = ucw_of_ltl(spec.formula, basis);
  Game game(ucw, spec.inputs.size(), spec.outputs.size(), type, opts.bound);
  SynthResult r;
  r.bound = opts.bound;
  const auto outcome = game.solve(opts.max_positions);
  r.positions = game.size();
  spdlog::debug("game b={} ucw={} positions={} outcome={}", opts.bound, ucw.size(), r.positions, static_cast<int>(outcome));
  if (outcome == Game::Outcome::Truncated) r.truncated = true;
  if (outcome != Game::Outcome::Win) return r;
  r.realisable = true;
  const std::size_t extra = opts.max_positions / 4;
  if (type == SystemType::Moore) {
    auto cands = coarsen<MooreMachine>(game, extra, [&](StateMap& map) { return extract_moore(game, spec, map); });
    r.moore = finish(cands, spec.formula, opts.shrink);
  } else {
    auto cands = coarsen<MealyMachine>(game, extra, [&](StateMap& map) { return extract_mealy(game, spec, map); });
    r.mealy = finish(cands, spec.formula, opts.shrink);
  }
  return r;
}

SynthResult synth_bounded(const LtlSpec& spec, const SynthOptions& opts) {
  return synth_game(spec, SystemType::Moore, opts);
}

SynthResult synth_dual(const LtlSpec& dual, const SynthOptions& opts) {
  return synth_game(dual, SystemType::Mealy, opts);
}

SynthResult synth_schedule(const LtlSpec& spec, SystemType type, unsigned cap, std::size_t max_positions) {
  SynthResult last;
  for (unsigned b = 1;; b = std::min(2 * b, cap)) {
    last = synth_game(spec, type, {.bound = b, .max_positions = max_positions});
    if (last.realisable || last.truncated || b >= cap) return last;
  }
}

DualSpec dualize(const LtlSpec& spec, SystemType original) {
  DualSpec d;
  d.spec.inputs = spec.outputs;
  d.spec.outputs = spec.inputs;
  d.spec.formula = to_pnf(Formula::negation(spec.formula));
  d.system = original == SystemType::Moore ? SystemType::Mealy : SystemType::Moore;
  return d;
}

MooreMachine extend_outputs(const MooreMachine& m, const std::vector<std::string>& outputs) {
  MooreMachine r = m;
  r.outputs = outputs;
  for (unsigned q = 0; q < m.size(); ++q) {
    Valuation v;
    for (unsigned b = 0; b < outputs.size(); ++b) {
      auto it = std::find(m.outputs.begin(), m.outputs.end(), outputs[b]);
      if (it != m.outputs.end()) v.set(b, m.out[q].test(static_cast<unsigned>(it - m.outputs.begin())));
    }
    r.out[q] = v;
  }
  return r;
}

}  // namespace ctlstar2ltl
