#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nl2ltl/automaton.hpp"
#include "nl2ltl/formula.hpp"
#include "nl2ltl/lasso.hpp"

namespace nl2ltl {

struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Cell &, const Cell &) = default;
};

std::string to_string(const Cell &c);

// Four-connected grid; every cell also has a wait move to itself.
struct GridWorld {
  int width = 0;
  int height = 0;
  std::map<Cell, std::set<std::string>> labels;
  Cell start;
  std::set<Cell> blocked;

  bool in_bounds(Cell c) const;
  bool passable(Cell c) const;
  Letter letter(Cell c) const;
  // Passable successors: the wait move to c first, then neighbours in
  // lexicographic (x, y) order.
  std::vector<Cell> moves(Cell c) const;
  void validate() const;
};

class WorldError : public std::runtime_error {
public:
  WorldError(const std::string &message, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/* Text format:
 *   legend <char> <ap> [<ap> ...]
 *   grid
 *   <rows of the map, top row is y = 0>
 * '.' is a free cell, '#' a blocked one and 'S' the unlabeled start. A
 * "start <x> <y>" line places the start on a labeled cell instead.
 */
GridWorld parse_world(std::string_view text);
GridWorld load_world(const std::string &path);

struct Trajectory {
  std::vector<Cell> prefix_cells;
  std::vector<Cell> loop_cells;
  LassoWord trace;
};

class NoPlanError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnsatisfiableFormulaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

LassoWord trace_of(const GridWorld &world, const std::vector<Cell> &prefix, const std::vector<Cell> &loop);

/* Shortest-prefix lasso through the product of the world graph and the
 * formula's automaton. Throws UnsatisfiableFormulaError or NoPlanError.
 */
Trajectory plan(const GridWorld &world, const Formula &f, const TableauOptions &options = {});

bool check_trace(const Formula &f, const Trajectory &t);

// Start cell first, unblocked cells, adjacent-or-equal steps incl. loop closure.
bool is_well_formed(const GridWorld &world, const Trajectory &t);

std::string format_cells(const std::vector<Cell> &cells);

// Map with the visiting order of path cells marked 0-9 then a-z.
std::string render_path(const GridWorld &world, const Trajectory &t);

} // namespace nl2ltl
