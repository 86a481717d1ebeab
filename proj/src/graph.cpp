#include "ctlstar2ltl/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace ctlstar2ltl {

namespace {
constexpr unsigned kUnset = std::numeric_limits<unsigned>::max();
}

std::vector<unsigned> scc_ids(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<unsigned> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<unsigned> stack;
  unsigned next_index = 0, next_comp = 0;

  struct Frame {
    unsigned node;
    std::size_t arc;
  };
  std::vector<Frame> call;

  for (unsigned root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& fr = call.back();
      const unsigned v = fr.node;
      if (fr.arc < g.arcs[v].size()) {
        const unsigned w = g.arcs[v][fr.arc++].target;
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        unsigned w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) {
        const unsigned parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return comp;
}

namespace {

// Accepting nodes that sit on some cycle.
std::vector<bool> cyclic_accepting(const Digraph& g, const std::vector<unsigned>& comp) {
  std::vector<unsigned> comp_size(g.size(), 0);
  for (unsigned c : comp) ++comp_size[c];
  std::vector<bool> out(g.size(), false);
  for (unsigned v = 0; v < g.size(); ++v) {
    if (!g.accepting[v]) continue;
    if (comp_size[comp[v]] > 1) {
      out[v] = true;
      continue;
    }
    for (const auto& a : g.arcs[v])
      if (a.target == v) out[v] = true;
  }
  return out;
}

}  // namespace

std::vector<bool> accepting_future(const Digraph& g) {
  const auto comp = scc_ids(g);
  auto good = cyclic_accepting(g, comp);
  std::vector<std::vector<unsigned>> preds(g.size());
  for (unsigned v = 0; v < g.size(); ++v)
    for (const auto& a : g.arcs[v]) preds[a.target].push_back(v);
  std::deque<unsigned> work;
  for (unsigned v = 0; v < g.size(); ++v)
    if (good[v]) work.push_back(v);
  while (!work.empty()) {
    const unsigned v = work.front();
    work.pop_front();
    for (unsigned p : preds[v])
      if (!good[p]) {
        good[p] = true;
        work.push_back(p);
      }
  }
  return good;
}

std::optional<NodeLasso> exists_accepting_path(const Digraph& g, unsigned from) {
  const auto comp = scc_ids(g);
  const auto cyc = cyclic_accepting(g, comp);

  std::vector<unsigned> parent(g.size(), kUnset), parent_label(g.size(), 0);
  std::vector<bool> seen(g.size(), false);
  std::deque<unsigned> queue{from};
  seen[from] = true;
  unsigned hit = kUnset;
  while (!queue.empty()) {
    const unsigned v = queue.front();
    queue.pop_front();
    if (cyc[v]) {
      hit = v;
      break;
    }
    for (const auto& a : g.arcs[v]) {
      if (seen[a.target]) continue;
      seen[a.target] = true;
      parent[a.target] = v;
      parent_label[a.target] = a.label;
      queue.push_back(a.target);
    }
  }
  if (hit == kUnset) return std::nullopt;

  NodeLasso lasso;
  for (unsigned v = hit; v != from;) {
    const unsigned p = parent[v];
    lasso.stem.push_back(p);
    lasso.stem_labels.push_back(parent_label[v]);
    v = p;
  }
  std::reverse(lasso.stem.begin(), lasso.stem.end());
  std::reverse(lasso.stem_labels.begin(), lasso.stem_labels.end());

  // shortest cycle through `hit`, staying inside its component
  std::vector<unsigned> lparent(g.size(), kUnset), llabel(g.size(), 0);
  std::vector<bool> lseen(g.size(), false);
  std::deque<unsigned> lq{hit};
  unsigned closing = kUnset, closing_label = 0;
  while (!lq.empty() && closing == kUnset) {
    const unsigned v = lq.front();
    lq.pop_front();
    for (const auto& a : g.arcs[v]) {
      if (a.target == hit) {
        closing = v;
        closing_label = a.label;
        break;
      }
      if (comp[a.target] != comp[hit] || lseen[a.target]) continue;
      lseen[a.target] = true;
      lparent[a.target] = v;
      llabel[a.target] = a.label;
      lq.push_back(a.target);
    }
  }
  std::vector<unsigned> nodes{closing}, labels{closing_label};
  for (unsigned v = closing; v != hit;) {
    labels.push_back(llabel[v]);
    v = lparent[v];
    nodes.push_back(v);
  }
  std::reverse(nodes.begin(), nodes.end());
  std::reverse(labels.begin(), labels.end());
  lasso.loop = std::move(nodes);
  lasso.loop_labels = std::move(labels);
  return lasso;
}

}  // namespace ctlstar2ltl
