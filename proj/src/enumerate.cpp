#include "ctlstar2ltl/enumerate.hpp"

#include <stdexcept>

namespace ctlstar2ltl {

namespace {

Alphabet io_basis(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
  std::vector<std::string> names = inputs;
  names.insert(names.end(), outputs.begin(), outputs.end());
  return Alphabet(names);
}

bool all_reachable(const MooreMachine& m) {
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (unsigned s = 0; s < m.size(); ++s)
      if ((frontier >> s) & 1U)
        for (unsigned t : m.next[s]) next |= std::uint64_t{1} << t;
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (m.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.size()) - 1);
}

}  // namespace

LtlFastChecker::LtlFastChecker(const Formula& phi, std::vector<std::string> inputs, std::vector<std::string> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  neg_ = nbw_of_path_formula(to_pnf(Formula::negation(phi)), io_basis(inputs_, outputs_));
  if (neg_.size() > 64) throw std::length_error("automaton too large for the bitmask checker");
  for (unsigned q = 0; q < neg_.size(); ++q)
    if (neg_.accepting[q]) accepting_ |= std::uint64_t{1} << q;
}

bool LtlFastChecker::holds(const MooreMachine& m) const {
  const std::size_t n = m.size(), ne = m.input_count(), nq = neg_.size();
  // succ[(s * ne + e) * nq + q]: automaton successors of q on the edge (s, e)
  std::vector<std::uint64_t> succ(n * ne * nq, 0);
  for (unsigned s = 0; s < n; ++s)
    for (unsigned e = 0; e < ne; ++e) {
      const Valuation letter = m.letter(s, e);
      for (unsigned q = 0; q < nq; ++q) {
        std::uint64_t mask = 0;
        for (const auto& edge : neg_.edges[q])
          if (edge.guard.matches(letter)) mask |= std::uint64_t{1} << edge.target;
        succ[(s * ne + e) * nq + q] = mask;
      }
    }
  auto image = [&](unsigned s, unsigned e, std::uint64_t from) {
    std::uint64_t out = 0;
    for (unsigned q = 0; from; ++q, from >>= 1)
      if (from & 1U) out |= succ[(s * ne + e) * nq + q];
    return out;
  };
  // nodes reachable from (initial, q0)
  std::vector<std::uint64_t> z(n, 0);
  z[m.initial] = std::uint64_t{1} << neg_.initial;
  for (bool grew = true; grew;) {
    grew = false;
    for (unsigned s = 0; s < n; ++s)
      for (unsigned e = 0; e < ne; ++e) {
        const unsigned t = m.next[s][e];
        const std::uint64_t add = image(s, e, z[s]) & ~z[t];
        if (add) {
          z[t] |= add;
          grew = true;
        }
      }
  }
  // pre(x) restricted to z
  auto pre = [&](const std::vector<std::uint64_t>& x) {
    std::vector<std::uint64_t> out(n, 0);
    for (unsigned s = 0; s < n; ++s)
      for (unsigned q = 0; q < nq; ++q) {
        if (!((z[s] >> q) & 1U)) continue;
        for (unsigned e = 0; e < ne; ++e)
          if (succ[(s * ne + e) * nq + q] & x[m.next[s][e]]) {
            out[s] |= std::uint64_t{1} << q;
            break;
          }
      }
    return out;
  };
  // greatest set of nodes that reach an accepting node of the set in one or more steps
  for (;;) {
    std::vector<std::uint64_t> target(n), y;
    for (unsigned s = 0; s < n; ++s) target[s] = z[s] & accepting_;
    y = pre(target);
    for (bool grew = true; grew;) {
      grew = false;
      const auto more = pre(y);
      for (unsigned s = 0; s < n; ++s)
        if (more[s] & ~y[s]) {
          y[s] |= more[s];
          grew = true;
        }
    }
    if (y == z) break;
    z = std::move(y);
  }
  for (auto mask : z)
    if (mask) return false;
  return true;
}

std::size_t for_each_machine(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                             unsigned n, const std::function<bool(const MooreMachine&)>& visit) {
  if (n == 0 || n > 8) throw std::invalid_argument("machine enumeration supports 1..8 states");
  MooreMachine m;
  m.inputs = inputs;
  m.outputs = outputs;
  for (unsigned s = 0; s < n; ++s) m.names.push_back("t" + std::to_string(s));
  const std::size_t ne = m.input_count();
  const std::uint64_t nout = std::uint64_t{1} << outputs.size();
  m.out.assign(n, Valuation{});
  m.next.assign(n, std::vector<unsigned>(ne, 0));
  std::size_t visited = 0;
  // odometers: outputs vary slowest, the last transition fastest
  for (;;) {
    for (;;) {
      if (all_reachable(m)) {
        ++visited;
        if (visit(m)) return visited;
      }
      std::size_t i = n * ne;
      while (i > 0) {
        --i;
        auto& slot = m.next[i / ne][i % ne];
        if (++slot < n) break;
        slot = 0;
        if (i == 0) goto next_outputs;
      }
    }
  next_outputs:
    std::size_t s = n;
    while (s > 0) {
      --s;
      if (++m.out[s].bits < nout) break;
      m.out[s].bits = 0;
      if (s == 0) return visited;
    }
  }
}

std::optional<MooreMachine> smallest_model(const std::vector<std::string>& inputs,
                                           const std::vector<std::string>& outputs, unsigned max_states,
                                           const std::function<bool(const MooreMachine&)>& pred) {
  std::optional<MooreMachine> found;
  for (unsigned n = 1; n <= max_states && !found; ++n)
    for_each_machine(inputs, outputs, n, [&](const MooreMachine& m) {
      if (!pred(m)) return false;
      found = m;
      return true;
    });
  return found;
}

}  // namespace ctlstar2ltl
