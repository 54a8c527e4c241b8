#pragma once

#include <set>
#include <string>
#include <vector>

#include "nl2ltl/formula.hpp"

namespace nl2ltl {

using Letter = std::set<std::string>;

// The ultimately periodic word prefix . loop^omega.
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> loop;

  std::size_t size() const { return prefix.size() + loop.size(); }
  // Letter at an arbitrary position of the infinite word.
  const Letter &at(std::size_t position) const;

  friend bool operator==(const LassoWord &, const LassoWord &) = default;
};

// Truth of f at position 0 of the word. Atoms missing from a letter are false.
// Throws std::invalid_argument if the loop is empty.
bool evaluate(const Formula &f, const LassoWord &word);

// Truth of f at every distinct position (prefix positions, then loop positions).
std::vector<bool> evaluate_positions(const Formula &f, const LassoWord &word);

// "[{a},{}] ([{b}])^w"
std::string to_string(const LassoWord &word);

} // namespace nl2ltl
