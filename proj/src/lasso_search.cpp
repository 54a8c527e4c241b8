#include "nl2ltl/lasso_search.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace nl2ltl {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Degeneralized {
  std::vector<std::vector<GeneralizedGraph::Edge>> succ;
  std::vector<bool> accepting;
  // BFS tree from the initial nodes; discovery order is by distance.
  std::vector<std::size_t> parent;
  std::vector<std::size_t> parent_tag;
  std::vector<std::size_t> order;
};

Degeneralized degeneralize(const GeneralizedGraph &g) {
  const std::size_t sets = std::max<std::size_t>(1, g.acceptance.size());
  auto member = [&](std::size_t node, std::size_t set) {
    return g.acceptance.empty() || g.acceptance[set][node];
  };
  // Counter after `node` is seen: skips every consecutive set it belongs to.
  auto advance = [&](std::size_t node, std::size_t counter) {
    while (counter < sets && member(node, counter)) {
      ++counter;
    }
    return counter;
  };

  Degeneralized d;
  std::vector<std::size_t> index(g.successors.size() * sets, kNone);
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  std::deque<std::size_t> queue;

  auto visit = [&](std::size_t node, std::size_t counter, std::size_t from, std::size_t tag) {
    std::size_t &slot = index[node * sets + counter];
    if (slot == kNone) {
      slot = origin.size();
      origin.emplace_back(node, counter);
      d.succ.emplace_back();
      d.parent.push_back(from);
      d.parent_tag.push_back(tag);
      d.order.push_back(slot);
      queue.push_back(slot);
    }
    return slot;
  };

  for (std::size_t init : g.initial) {
    visit(init, 0, kNone, kNone);
  }
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    const auto [node, counter] = origin[cur];
    const std::size_t next_counter = advance(node, counter) % sets;
    for (const auto &e : g.successors[node]) {
      std::size_t to = visit(e.to, next_counter, cur, e.tag);
      d.succ[cur].push_back({to, e.tag});
    }
  }

  d.accepting.resize(origin.size());
  for (std::size_t i = 0; i < origin.size(); ++i) {
    d.accepting[i] = advance(origin[i].first, origin[i].second) == sets;
  }
  return d;
}

// Iterative Tarjan; returns the component id of every node.
std::vector<std::size_t> strongly_connected_components(const std::vector<std::vector<GeneralizedGraph::Edge>> &succ) {
  const std::size_t n = succ.size();
  std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call; // node, next edge
  std::size_t counter = 0, comps = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kNone) {
      continue;
    }
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto &[v, edge] = call.back();
      if (edge == 0 && index[v] == kNone) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (edge < succ[v].size()) {
        std::size_t w = succ[v][edge++].to;
        if (index[w] == kNone) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

} // namespace

std::optional<TaggedLasso> find_accepting_lasso(const GeneralizedGraph &graph) {
  Degeneralized d = degeneralize(graph);
  const auto comp = strongly_connected_components(d.succ);

  std::vector<std::size_t> comp_size(d.succ.size() + 1, 0);
  for (std::size_t c : comp) {
    ++comp_size[c];
  }
  auto on_cycle = [&](std::size_t v) {
    if (comp_size[comp[v]] > 1) {
      return true;
    }
    return std::any_of(d.succ[v].begin(), d.succ[v].end(), [v](const auto &e) { return e.to == v; });
  };

  std::size_t entry = kNone;
  for (std::size_t v : d.order) {
    if (d.accepting[v] && on_cycle(v)) {
      entry = v;
      break;
    }
  }
  if (entry == kNone) {
    return std::nullopt;
  }

  TaggedLasso lasso;
  for (std::size_t v = entry; d.parent[v] != kNone; v = d.parent[v]) {
    lasso.prefix.push_back(d.parent_tag[v]);
  }
  std::reverse(lasso.prefix.begin(), lasso.prefix.end());

  // Shortest cycle through `entry`, staying inside its component.
  std::vector<std::size_t> parent(d.succ.size(), kNone), parent_tag(d.succ.size(), kNone);
  std::deque<std::size_t> queue{entry};
  std::vector<bool> seen(d.succ.size(), false);
  seen[entry] = true;
  std::size_t closing_from = kNone, closing_tag = kNone;
  while (!queue.empty() && closing_from == kNone) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (const auto &e : d.succ[v]) {
      if (e.to == entry) {
        closing_from = v;
        closing_tag = e.tag;
        break;
      }
      if (!seen[e.to] && comp[e.to] == comp[entry]) {
        seen[e.to] = true;
        parent[e.to] = v;
        parent_tag[e.to] = e.tag;
        queue.push_back(e.to);
      }
    }
  }
  lasso.loop.push_back(closing_tag);
  for (std::size_t v = closing_from; v != entry; v = parent[v]) {
    lasso.loop.push_back(parent_tag[v]);
  }
  std::reverse(lasso.loop.begin(), lasso.loop.end());
  return lasso;
}

} // namespace nl2ltl
