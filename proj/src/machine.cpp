#include "ctlstar2ltl/machine.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "ctlstar2ltl/spec.hpp"

namespace ctlstar2ltl {

namespace {

struct MTok {
  enum Kind { Ident, Number, Sym, End } kind;
  std::string text;
  SourcePos pos;
};

std::vector<MTok> lex_machine(std::string_view text) {
  std::vector<MTok> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto step = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (true) {
    while (i < text.size()) {
      if (text[i] == '#') {
        while (i < text.size() && text[i] != '\n') step(1);
      } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
        step(1);
      } else {
        break;
      }
    }
    const SourcePos at{line, col};
    if (i >= text.size()) {
      out.push_back({MTok::End, "", at});
      return out;
    }
    const char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({MTok::Ident, std::string(text.substr(i, j - i)), at});
      step(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      out.push_back({MTok::Number, std::string(1, c), at});
      step(1);
    } else if (text.substr(i, 2) == "->") {
      out.push_back({MTok::Sym, "->", at});
      step(2);
    } else if (std::string_view("{}=,;:*-").find(c) != std::string_view::npos) {
      out.push_back({MTok::Sym, std::string(1, c), at});
      step(1);
    } else {
      throw ParseError(at.line, at.column, std::string("unexpected character '") + c + "'");
    }
  }
}

class MachineParser {
 public:
  explicit MachineParser(std::string_view text) : toks_(lex_machine(text)) {}

  MooreMachine run() {
    word("MOORE");
    word("inputs");
    sym(":");
    m_.inputs = idlist();
    word("outputs");
    sym(":");
    m_.outputs = idlist();
    for (const auto& i : m_.inputs)
      if (std::find(m_.outputs.begin(), m_.outputs.end(), i) != m_.outputs.end())
        fail_at(toks_[0].pos, "'" + i + "' is both input and output");
    if (m_.inputs.size() > 16) fail_at(toks_[0].pos, "at most 16 inputs are supported");
    word("init");
    sym(":");
    const MTok init = ident();
    sym(";");

    struct Edge {
      std::string src;
      std::vector<std::optional<bool>> assign;
      MTok dst;
    };
    std::vector<Edge> edges;
    while (peek().kind != MTok::End) {
      if (peek().kind == MTok::Ident && peek().text == "state" && toks_[pos_ + 1].kind == MTok::Ident) {
        ++pos_;
        const MTok name = ident();
        if (index_.count(name.text)) fail_at(name.pos, "duplicate state '" + name.text + "'");
        index_.emplace(name.text, static_cast<unsigned>(m_.names.size()));
        m_.names.push_back(name.text);
        m_.out.push_back(assignment(m_.outputs, false).first);
        continue;
      }
      Edge e;
      const MTok src = ident();
      e.src = src.text;
      sym("-");
      e.assign = assignment(m_.inputs, true).second;
      sym("->");
      e.dst = ident();
      sym(";");
      if (!index_.count(e.src)) fail_at(src.pos, "transition from undeclared state '" + e.src + "'");
      edges.push_back(std::move(e));
    }

    if (!index_.count(init.text)) fail_at(init.pos, "initial state '" + init.text + "' is not declared");
    m_.initial = index_.at(init.text);
    const std::size_t n_in = std::size_t{1} << m_.inputs.size();
    constexpr unsigned kNone = ~0U;
    m_.next.assign(m_.names.size(), std::vector<unsigned>(n_in, kNone));
    for (const auto& e : edges) {
      auto it = index_.find(e.dst.text);
      if (it == index_.end()) fail_at(e.dst.pos, "transition to undeclared state '" + e.dst.text + "'");
      auto& row = m_.next[index_.at(e.src)];
      for (unsigned v = 0; v < n_in; ++v) {
        bool match = true;
        for (std::size_t b = 0; b < e.assign.size(); ++b)
          if (e.assign[b] && *e.assign[b] != static_cast<bool>((v >> b) & 1U)) match = false;
        if (!match) continue;
        if (row[v] != kNone && row[v] != it->second)
          fail_at(e.dst.pos, "conflicting transitions from '" + e.src + "'");
        row[v] = it->second;
      }
    }
    for (unsigned s = 0; s < m_.names.size(); ++s)
      for (unsigned v = 0; v < n_in; ++v)
        if (m_.next[s][v] == kNone)
          fail_at(toks_.back().pos, "state '" + m_.names[s] + "' has no transition for {" + format_inputs(m_, v) + "}");
    if (m_.names.empty()) fail_at(toks_.back().pos, "machine has no states");
    return m_;
  }

 private:
  const MTok& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail_at(SourcePos p, const std::string& msg) const { throw ParseError(p.line, p.column, msg); }
  [[noreturn]] void fail(const std::string& msg) const {
    fail_at(peek().pos, msg + (peek().kind == MTok::End ? " at end of input" : " near '" + peek().text + "'"));
  }

  void word(const char* w) {
    if (peek().kind != MTok::Ident || peek().text != w) fail(std::string("expected '") + w + "'");
    ++pos_;
  }
  void sym(const char* s) {
    if (peek().kind != MTok::Sym || peek().text != s) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  bool accept(const char* s) {
    if (peek().kind != MTok::Sym || peek().text != s) return false;
    ++pos_;
    return true;
  }
  MTok ident() {
    if (peek().kind != MTok::Ident) fail("expected identifier");
    return toks_[pos_++];
  }

  std::vector<std::string> idlist() {
    std::vector<std::string> ids;
    if (!accept(";")) {
      do {
        const MTok t = ident();
        if (std::find(ids.begin(), ids.end(), t.text) != ids.end()) fail_at(t.pos, "duplicate '" + t.text + "'");
        ids.push_back(t.text);
      } while (accept(","));
      sym(";");
    }
    return ids;
  }

  // `{ a=0, b=1 }`; outputs must be complete, inputs may use `*` or be left out.
  std::pair<Valuation, std::vector<std::optional<bool>>> assignment(const std::vector<std::string>& props,
                                                                    bool wildcards) {
    std::vector<std::optional<bool>> vals(props.size());
    std::vector<bool> seen(props.size(), false);
    sym("{");
    if (!accept("}")) {
      do {
        const MTok name = ident();
        auto it = std::find(props.begin(), props.end(), name.text);
        if (it == props.end()) fail_at(name.pos, "undeclared proposition '" + name.text + "'");
        const auto b = static_cast<std::size_t>(it - props.begin());
        if (seen[b]) fail_at(name.pos, "'" + name.text + "' assigned twice");
        seen[b] = true;
        sym("=");
        if (wildcards && accept("*")) continue;
        if (peek().kind != MTok::Number || (peek().text != "0" && peek().text != "1")) fail("expected 0 or 1");
        vals[b] = peek().text == "1";
        ++pos_;
      } while (accept(","));
      sym("}");
    }
    Valuation v;
    for (std::size_t b = 0; b < props.size(); ++b) {
      if (!wildcards && !vals[b]) fail("output '" + props[b] + "' has no value");
      if (vals[b] && *vals[b]) v.set(static_cast<unsigned>(b));
    }
    return {v, vals};
  }

  std::vector<MTok> toks_;
  std::size_t pos_ = 0;
  MooreMachine m_;
  std::map<std::string, unsigned> index_;
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

std::string format_cube(const std::vector<std::string>& props, const Cube& c) {
  std::string s;
  for (std::size_t b = 0; b < props.size(); ++b) {
    if (!s.empty()) s += ", ";
    s += props[b] + "=" + (((c.care >> b) & 1U) ? (((c.value >> b) & 1U) ? "1" : "0") : "*");
  }
  return s;
}

// Targets in first-use order with the input valuations leading to each.
std::vector<std::pair<unsigned, std::vector<Valuation>>> grouped_edges(const MooreMachine& m, unsigned s) {
  std::vector<std::pair<unsigned, std::vector<Valuation>>> groups;
  for (unsigned e = 0; e < m.input_count(); ++e) {
    const unsigned t = m.next[s][e];
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == t; });
    if (it == groups.end()) {
      groups.push_back({t, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back({e});
  }
  return groups;
}

}  // namespace

Alphabet MooreMachine::io_alphabet() const {
  std::vector<std::string> names = inputs;
  names.insert(names.end(), outputs.begin(), outputs.end());
  return Alphabet(names);
}

unsigned MooreMachine::index_of(std::string_view name) const {
  for (unsigned i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::out_of_range("no state named '" + std::string(name) + "'");
}

MooreMachine parse_machine(std::string_view text) { return MachineParser(text).run(); }

std::string format_inputs(const MooreMachine& m, unsigned e) {
  return format_cube(m.inputs, Cube{(std::uint64_t{1} << m.inputs.size()) - 1, e});
}

std::string serialize_machine(const MooreMachine& m) {
  std::string s = "MOORE\n";
  s += "inputs: " + join(m.inputs) + ";\n";
  s += "outputs: " + join(m.outputs) + ";\n";
  s += "init: " + m.names[m.initial] + ";\n";
  for (unsigned q = 0; q < m.size(); ++q) {
    s += "state " + m.names[q] + " {";
    for (std::size_t b = 0; b < m.outputs.size(); ++b)
      s += std::string(b ? ", " : " ") + m.outputs[b] + "=" + (m.out[q].test(static_cast<unsigned>(b)) ? "1" : "0");
    s += m.outputs.empty() ? "}" : " }";
    for (const auto& [t, vals] : grouped_edges(m, q))
      for (const auto& c : cover(vals, m.inputs.size()))
        s += "  " + m.names[q] + " -{" + format_cube(m.inputs, c) + "}-> " + m.names[t] + ";";
    s += "\n";
  }
  return s;
}

MooreMachine project_outputs(const MooreMachine& m, const std::vector<std::string>& keep) {
  MooreMachine p = m;
  p.outputs = keep;
  std::vector<unsigned> src;
  for (const auto& k : keep) {
    auto it = std::find(m.outputs.begin(), m.outputs.end(), k);
    if (it == m.outputs.end()) throw std::invalid_argument("cannot keep unknown output '" + k + "'");
    src.push_back(static_cast<unsigned>(it - m.outputs.begin()));
  }
  for (unsigned q = 0; q < m.size(); ++q) {
    Valuation v;
    for (unsigned b = 0; b < src.size(); ++b) v.set(b, m.out[q].test(src[b]));
    p.out[q] = v;
  }
  return p;
}

Trace run_trace(const MooreMachine& m, const std::vector<unsigned>& stem, const std::vector<unsigned>& loop) {
  if (loop.empty()) throw std::invalid_argument("input loop must be nonempty");
  Trace t;
  unsigned s = m.initial;
  for (unsigned e : stem) {
    t.states.push_back(s);
    t.inputs.push_back(e);
    s = m.next[s][e];
  }
  // unroll the loop until (state, offset) repeats at an offset-0 boundary
  std::map<unsigned, std::size_t> seen;
  for (;;) {
    auto [it, fresh] = seen.emplace(s, t.states.size());
    if (!fresh) {
      t.loop_start = it->second;
      return t;
    }
    for (unsigned e : loop) {
      t.states.push_back(s);
      t.inputs.push_back(e);
      s = m.next[s][e];
    }
  }
}

LassoWord run_lasso(const MooreMachine& m, const std::vector<unsigned>& stem, const std::vector<unsigned>& loop) {
  const Trace t = run_trace(m, stem, loop);
  LassoWord w;
  for (std::size_t i = 0; i < t.states.size(); ++i)
    (i < t.loop_start ? w.stem : w.loop).push_back(m.letter(t.states[i], t.inputs[i]));
  return w;
}

std::string to_dot(const MooreMachine& m) {
  std::string s = "digraph moore {\n  rankdir=LR;\n  init [shape=point];\n";
  for (unsigned q = 0; q < m.size(); ++q) {
    std::string label = m.names[q] + "\\n";
    for (std::size_t b = 0; b < m.outputs.size(); ++b)
      label += std::string(b ? " " : "") + (m.out[q].test(static_cast<unsigned>(b)) ? "" : "!") + m.outputs[b];
    s += "  " + m.names[q] + " [label=\"" + label + "\", shape=box];\n";
  }
  s += "  init -> " + m.names[m.initial] + ";\n";
  for (unsigned q = 0; q < m.size(); ++q)
    for (const auto& [t, vals] : grouped_edges(m, q)) {
      std::string label;
      for (const auto& c : cover(vals, m.inputs.size())) {
        if (!label.empty()) label += " | ";
        std::string cube;
        for (std::size_t b = 0; b < m.inputs.size(); ++b) {
          if (!((c.care >> b) & 1U)) continue;
          if (!cube.empty()) cube += " & ";
          cube += (((c.value >> b) & 1U) ? "" : "!") + m.inputs[b];
        }
        label += cube.empty() ? "1" : cube;
      }
      s += "  " + m.names[q] + " -> " + m.names[t] + " [label=\"" + label + "\"];\n";
    }
  s += "}\n";
  return s;
}

MooreMachine minimize(const MooreMachine& m) {
  // reachable states in BFS order
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
  std::vector<unsigned> block(n);
  {
    std::map<std::uint64_t, unsigned> ids;
    for (std::size_t i = 0; i < n; ++i)
      block[i] = ids.emplace(m.out[order[i]].bits, static_cast<unsigned>(ids.size())).first->second;
  }
  for (;;) {
    std::map<std::vector<unsigned>, unsigned> ids;
    std::vector<unsigned> refined(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<unsigned> sig{block[i]};
      for (unsigned t : m.next[order[i]]) sig.push_back(block[pos[t]]);
      refined[i] = ids.emplace(std::move(sig), static_cast<unsigned>(ids.size())).first->second;
    }
    const bool stable = ids.size() == std::set<unsigned>(block.begin(), block.end()).size();
    block = std::move(refined);
    if (stable) break;
  }
  // blocks numbered by first occurrence in BFS order
  std::vector<unsigned> renum(n, ~0U), rep;
  for (std::size_t i = 0; i < n; ++i)
    if (renum[block[i]] == ~0U) {
      renum[block[i]] = static_cast<unsigned>(rep.size());
      rep.push_back(order[i]);
    }
  MooreMachine r;
  r.inputs = m.inputs;
  r.outputs = m.outputs;
  r.initial = 0;
  for (unsigned q : rep) {
    r.names.push_back(m.names[q]);
    r.out.push_back(m.out[q]);
    std::vector<unsigned> row;
    for (unsigned t : m.next[q]) row.push_back(renum[block[pos[t]]]);
    r.next.push_back(std::move(row));
  }
  return r;
}

MooreMachine merge_states(const MooreMachine& m, unsigned keep, unsigned drop) {
  if (keep == drop) return m;
  MooreMachine r;
  r.inputs = m.inputs;
  r.outputs = m.outputs;
  auto map = [&](unsigned q) {
    if (q == drop) q = keep;
    return q > drop ? q - 1 : q;
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

bool bisimilar(const MooreMachine& a, const MooreMachine& b) {
  if (a.inputs != b.inputs || a.outputs != b.outputs) return false;
  // pair exploration: every reachable pair must agree on outputs
  std::set<std::pair<unsigned, unsigned>> seen{{a.initial, b.initial}};
  std::deque<std::pair<unsigned, unsigned>> queue{{a.initial, b.initial}};
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    if (a.out[p] != b.out[q]) return false;
    for (unsigned e = 0; e < a.input_count(); ++e) {
      std::pair<unsigned, unsigned> nx{a.next[p][e], b.next[q][e]};
      if (seen.insert(nx).second) queue.push_back(nx);
    }
  }
  return true;
}

void rename_states(MooreMachine& m, const std::string& prefix) {
  for (unsigned q = 0; q < m.size(); ++q) m.names[q] = prefix + std::to_string(q);
}

}  // namespace ctlstar2ltl
