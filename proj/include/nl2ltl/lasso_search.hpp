#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace nl2ltl {

/* Explicit graph with generalized Büchi acceptance on nodes. Edge tags are
 * opaque to the search and are handed back in the lasso so callers can map
 * edges to letters (automaton labels, grid cells, ...).
 */
struct GeneralizedGraph {
  struct Edge {
    std::size_t to;
    std::size_t tag;
  };

  std::vector<std::vector<Edge>> successors;
  std::vector<std::size_t> initial;
  // One membership vector per acceptance set. No sets means every node accepts.
  std::vector<std::vector<bool>> acceptance;
};

// Edge tags of a run: `prefix` leads from an initial node to the cycle entry,
// `loop` returns to it. The loop is never empty.
struct TaggedLasso {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> loop;
};

/* Degeneralizes with the round-robin acceptance counter, decomposes the
 * reachable part into SCCs, and returns the lasso with the shortest prefix
 * (breadth-first over successors in their stored order) followed by the
 * shortest cycle through the accepting entry node. std::nullopt means the
 * language is empty.
 */
std::optional<TaggedLasso> find_accepting_lasso(const GeneralizedGraph &graph);

} // namespace nl2ltl
