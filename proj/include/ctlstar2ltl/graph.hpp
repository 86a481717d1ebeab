#pragma once

#include <optional>
#include <vector>

namespace ctlstar2ltl {

/// Explicit finite graph with Büchi-accepting nodes. Arc labels are opaque to
/// the search and handed back in lassos so callers can recover the move.
struct Digraph {
  struct Arc {
    unsigned target;
    unsigned label;
  };

  std::vector<std::vector<Arc>> arcs;
  std::vector<bool> accepting;

  unsigned add_node(bool acc) {
    arcs.emplace_back();
    accepting.push_back(acc);
    return static_cast<unsigned>(arcs.size() - 1);
  }
  std::size_t size() const { return arcs.size(); }
};

/// Lasso through the graph: `stem` then `loop` repeated. `loop.front()` is an
/// accepting node; `*_labels[i]` labels the arc leaving the i-th node, the
/// last loop arc returning to `loop.front()`.
struct NodeLasso {
  std::vector<unsigned> stem, stem_labels;
  std::vector<unsigned> loop, loop_labels;
};

/// Strongly connected component id per node (Tarjan, iterative).
std::vector<unsigned> scc_ids(const Digraph& g);

/// Nodes from which some accepting node on a cycle is reachable.
std::vector<bool> accepting_future(const Digraph& g);

/// Shortest stem to the first (BFS order) accepting node that lies on a
/// cycle, then a shortest loop back to it; nullopt when none exists.
std::optional<NodeLasso> exists_accepting_path(const Digraph& g, unsigned from);

}  // namespace ctlstar2ltl
