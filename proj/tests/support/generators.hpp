#pragma once

#include <random>
#include <string>
#include <vector>

#include "nl2ltl/formula.hpp"
#include "nl2ltl/lasso.hpp"

namespace gen {

using nl2ltl::Formula;

// Surface formulas (no Release). With `strict`, negation only wraps atoms.
inline Formula formula(std::mt19937 &rng, int depth, const std::vector<std::string> &aps, bool strict = false) {
  std::uniform_int_distribution<std::size_t> pick_ap(0, aps.size() - 1);
  if (depth <= 1) {
    return Formula::atom(aps[pick_ap(rng)]);
  }
  std::uniform_int_distribution<int> pick_op(0, 7);
  const int op = pick_op(rng);
  auto sub = [&] { return formula(rng, depth - 1, aps, strict); };
  switch (op) {
  case 0:
    return Formula::atom(aps[pick_ap(rng)]);
  case 1:
    return strict ? Formula::negation(Formula::atom(aps[pick_ap(rng)])) : Formula::negation(sub());
  case 2:
    return Formula::conjunction(sub(), sub());
  case 3:
    return Formula::disjunction(sub(), sub());
  case 4:
    return Formula::finally(sub());
  case 5:
    return Formula::globally(sub());
  default:
    return Formula::until(sub(), sub());
  }
}

inline nl2ltl::LassoWord word(std::mt19937 &rng, const std::vector<std::string> &aps, int max_prefix, int max_loop) {
  std::uniform_int_distribution<int> prefix_len(0, max_prefix), loop_len(1, max_loop), coin(0, 1);
  auto letter = [&] {
    nl2ltl::Letter l;
    for (const auto &ap : aps) {
      if (coin(rng)) {
        l.insert(ap);
      }
    }
    return l;
  };
  nl2ltl::LassoWord w;
  for (int i = prefix_len(rng); i > 0; --i) {
    w.prefix.push_back(letter());
  }
  for (int i = loop_len(rng); i > 0; --i) {
    w.loop.push_back(letter());
  }
  return w;
}

} // namespace gen
