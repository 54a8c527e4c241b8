#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nl2ltl/formula.hpp"
#include "nl2ltl/lasso.hpp"

namespace nl2ltl {

using StateId = std::size_t;

// Conjunction of literals over the automaton alphabet (indices into it).
struct Label {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;

  bool admits(const std::vector<bool> &valuation) const;
  friend bool operator==(const Label &, const Label &) = default;
};

struct Transition {
  StateId from;
  Label label;
  StateId to;
};

/* Generalized Büchi automaton with state-based acceptance. A run is
 * accepting when it visits every acceptance set infinitely often; an empty
 * list of sets accepts every infinite run.
 */
struct BuchiAutomaton {
  std::vector<std::string> alphabet;
  std::size_t state_count = 0;
  std::vector<StateId> initial;
  std::vector<Transition> transitions;
  std::vector<std::vector<StateId>> acceptance_sets;
  // Closure size (subformulas and their negations) of the source formula.
  std::size_t closure_size = 0;

  // Transition indices leaving each state.
  std::vector<std::vector<std::size_t>> outgoing() const;
  std::size_t alphabet_index(const std::string &ap) const;
};

struct TableauOptions {
  std::size_t max_states = 100000;
};

class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

BuchiAutomaton build_automaton(const Formula &f, const TableauOptions &options = {});

struct EmptinessResult {
  bool empty = true;
  // Lasso over transition indices and the word obtained by setting the
  // required-true APs of each label and nothing else.
  std::vector<std::size_t> prefix_transitions;
  std::vector<std::size_t> loop_transitions;
  std::optional<LassoWord> word;
};

EmptinessResult is_empty(const BuchiAutomaton &automaton);

struct SatVerdict {
  bool satisfiable = false;
  std::optional<LassoWord> witness;
};

// Witnesses are checked with evaluate() before being returned.
SatVerdict is_satisfiable(const Formula &f, const TableauOptions &options = {});
bool equiv(const Formula &f, const Formula &g, const TableauOptions &options = {});

// Shortens a lasso by folding prefix letters that repeat the loop's last
// letter into a rotation of the loop. Keeps at least `min_prefix` letters.
template <typename T>
void fold_prefix_into_loop(std::vector<T> &prefix, std::vector<T> &loop, std::size_t min_prefix = 0) {
  while (prefix.size() > min_prefix && !loop.empty() && prefix.back() == loop.back()) {
    T last = loop.back();
    loop.pop_back();
    loop.insert(loop.begin(), std::move(last));
    prefix.pop_back();
  }
}

// Line-oriented text dump; see docs/automaton-format.md.
std::string dump(const BuchiAutomaton &automaton);

} // namespace nl2ltl
