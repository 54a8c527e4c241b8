#include "nl2ltl/planner.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nl2ltl/lasso_search.hpp"

namespace nl2ltl {

namespace {

std::vector<std::string> split_words(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string w; in >> w;) {
    out.push_back(w);
  }
  return out;
}

bool adjacent_or_equal(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y) <= 1; }

} // namespace

std::string to_string(const Cell &c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

bool GridWorld::in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }

bool GridWorld::passable(Cell c) const { return in_bounds(c) && !blocked.count(c); }

Letter GridWorld::letter(Cell c) const {
  auto it = labels.find(c);
  return it == labels.end() ? Letter{} : Letter(it->second.begin(), it->second.end());
}

std::vector<Cell> GridWorld::moves(Cell c) const {
  std::vector<Cell> out;
  for (Cell n : {c, Cell{c.x - 1, c.y}, Cell{c.x, c.y - 1}, Cell{c.x, c.y + 1}, Cell{c.x + 1, c.y}}) {
    if (passable(n)) {
      out.push_back(n);
    }
  }
  return out;
}

void GridWorld::validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("world must have a positive size");
  }
  if (!passable(start)) {
    throw std::invalid_argument("start cell " + to_string(start) + " is blocked or out of bounds");
  }
  for (const auto &[cell, aps] : labels) {
    if (!in_bounds(cell)) {
      throw std::invalid_argument("labeled cell " + to_string(cell) + " is out of bounds");
    }
  }
}

WorldError::WorldError(const std::string &message, std::size_t line)
    : std::runtime_error("world line " + std::to_string(line) + ": " + message), line_(line) {}

GridWorld parse_world(std::string_view text) {
  GridWorld world;
  std::map<char, std::set<std::string>> legend;
  std::vector<std::string> rows;
  std::optional<Cell> start_cell;
  std::optional<Cell> start_marker;
  std::optional<std::pair<Cell, std::size_t>> explicit_start;
  bool in_grid = false;
  std::size_t grid_line = 0;

  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (in_grid) {
      if (line.empty()) {
        in_grid = false;
        continue;
      }
      rows.push_back(line);
      continue;
    }
    const auto words = split_words(line);
    if (words.empty() || words[0][0] == '#') {
      continue;
    }
    if (words[0] == "legend") {
      if (words.size() < 3 || words[1].size() != 1) {
        throw WorldError("expected 'legend <char> <ap> [<ap> ...]'", line_no);
      }
      const char symbol = words[1][0];
      if (symbol == '.' || symbol == '#' || symbol == 'S') {
        throw WorldError(std::string("legend character '") + symbol + "' is reserved", line_no);
      }
      for (std::size_t i = 2; i < words.size(); ++i) {
        if (!is_identifier(words[i]) || is_reserved_word(words[i])) {
          throw WorldError("'" + words[i] + "' is not a valid atomic proposition", line_no);
        }
        legend[symbol].insert(words[i]);
      }
    } else if (words[0] == "start") {
      if (words.size() != 3) {
        throw WorldError("expected 'start <x> <y>'", line_no);
      }
      try {
        explicit_start = {{std::stoi(words[1]), std::stoi(words[2])}, line_no};
      } catch (const std::exception &) {
        throw WorldError("start coordinates must be integers", line_no);
      }
    } else if (words[0] == "grid" && words.size() == 1) {
      if (!rows.empty()) {
        throw WorldError("second grid section", line_no);
      }
      in_grid = true;
      grid_line = line_no;
    } else {
      throw WorldError("unknown directive '" + words[0] + "'", line_no);
    }
  }
  if (rows.empty()) {
    throw WorldError("no grid section", line_no);
  }
  world.height = static_cast<int>(rows.size());
  world.width = static_cast<int>(rows[0].size());
  for (int y = 0; y < world.height; ++y) {
    const std::string &row = rows[static_cast<std::size_t>(y)];
    const std::size_t row_line = grid_line + 1 + static_cast<std::size_t>(y);
    if (static_cast<int>(row.size()) != world.width) {
      throw WorldError("grid rows must all have the same width", row_line);
    }
    for (int x = 0; x < world.width; ++x) {
      const char c = row[static_cast<std::size_t>(x)];
      const Cell cell{x, y};
      if (c == '.') {
        continue;
      }
      if (c == '#') {
        world.blocked.insert(cell);
      } else if (c == 'S') {
        if (start_marker) {
          throw WorldError("more than one 'S' in the grid", row_line);
        }
        start_marker = cell;
      } else if (auto it = legend.find(c); it != legend.end()) {
        world.labels[cell] = it->second;
      } else {
        throw WorldError(std::string("character '") + c + "' has no legend entry", row_line);
      }
    }
  }
  if (explicit_start && start_marker) {
    throw WorldError("start given both as 'S' and by a start line", explicit_start->second);
  }
  if (explicit_start) {
    start_cell = explicit_start->first;
  } else {
    start_cell = start_marker;
  }
  if (!start_cell) {
    throw WorldError("world has no start cell", line_no);
  }
  world.start = *start_cell;
  try {
    world.validate();
  } catch (const std::invalid_argument &e) {
    throw WorldError(e.what(), explicit_start ? explicit_start->second : grid_line);
  }
  return world;
}

GridWorld load_world(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open world file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_world(buf.str());
}

LassoWord trace_of(const GridWorld &world, const std::vector<Cell> &prefix, const std::vector<Cell> &loop) {
  LassoWord w;
  for (Cell c : prefix) {
    w.prefix.push_back(world.letter(c));
  }
  for (Cell c : loop) {
    w.loop.push_back(world.letter(c));
  }
  return w;
}

Trajectory plan(const GridWorld &world, const Formula &f, const TableauOptions &options) {
  world.validate();
  if (!is_satisfiable(f, options).satisfiable) {
    throw UnsatisfiableFormulaError("formula " + print(f) + " is unsatisfiable");
  }
  const BuchiAutomaton automaton = build_automaton(f, options);
  const auto outgoing = automaton.outgoing();

  // Product node (cell, q): the run is at `cell` and the automaton has read
  // its label, landing in q. Node 0 is a virtual source before the start cell.
  const std::size_t cells = static_cast<std::size_t>(world.width * world.height);
  auto cell_index = [&](Cell c) { return static_cast<std::size_t>(c.y * world.width + c.x); };
  auto cell_at = [&](std::size_t i) {
    return Cell{static_cast<int>(i % static_cast<std::size_t>(world.width)),
                static_cast<int>(i / static_cast<std::size_t>(world.width))};
  };
  std::vector<std::vector<bool>> valuation(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const Letter l = world.letter(cell_at(i));
    for (const auto &ap : automaton.alphabet) {
      valuation[i].push_back(l.count(ap) > 0);
    }
  }

  std::map<std::pair<std::size_t, StateId>, std::size_t> ids;
  std::vector<std::pair<std::size_t, StateId>> nodes;
  GeneralizedGraph graph;
  graph.successors.emplace_back();
  graph.initial = {0};
  auto node_id = [&](std::size_t cell, StateId q) {
    auto [it, inserted] = ids.emplace(std::make_pair(cell, q), nodes.size() + 1);
    if (inserted) {
      nodes.emplace_back(cell, q);
      graph.successors.emplace_back();
    }
    return it->second;
  };
  auto connect = [&](std::size_t from, std::size_t cell, StateId q) {
    for (std::size_t t : outgoing[q]) {
      const Transition &tr = automaton.transitions[t];
      if (tr.label.admits(valuation[cell])) {
        const std::size_t to = node_id(cell, tr.to);
        graph.successors[from].push_back({to, cell});
      }
    }
  };
  for (StateId q0 : automaton.initial) {
    connect(0, cell_index(world.start), q0);
  }
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const auto [cell, q] = nodes[n];
    for (Cell next : world.moves(cell_at(cell))) {
      connect(n + 1, cell_index(next), q);
    }
  }
  for (const auto &set : automaton.acceptance_sets) {
    std::vector<bool> states(automaton.state_count, false);
    for (StateId s : set) {
      states[s] = true;
    }
    std::vector<bool> member(nodes.size() + 1, false);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      member[n + 1] = states[nodes[n].second];
    }
    graph.acceptance.push_back(std::move(member));
  }

  const auto lasso = find_accepting_lasso(graph);
  if (!lasso) {
    throw NoPlanError("no trajectory in this world satisfies " + print(f));
  }
  Trajectory t;
  for (std::size_t c : lasso->prefix) {
    t.prefix_cells.push_back(cell_at(c));
  }
  for (std::size_t c : lasso->loop) {
    t.loop_cells.push_back(cell_at(c));
  }
  fold_prefix_into_loop(t.prefix_cells, t.loop_cells, 1);
  t.trace = trace_of(world, t.prefix_cells, t.loop_cells);
  if (!is_well_formed(world, t) || !check_trace(f, t)) {
    throw std::logic_error("internal error: planned trajectory fails its own check");
  }
  return t;
}

bool check_trace(const Formula &f, const Trajectory &t) { return evaluate(f, t.trace); }

bool is_well_formed(const GridWorld &world, const Trajectory &t) {
  if (t.loop_cells.empty()) {
    return false;
  }
  std::vector<Cell> path = t.prefix_cells;
  path.insert(path.end(), t.loop_cells.begin(), t.loop_cells.end());
  if (path.front() != world.start) {
    return false;
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!world.passable(path[i])) {
      return false;
    }
    if (i > 0 && !adjacent_or_equal(path[i - 1], path[i])) {
      return false;
    }
  }
  return adjacent_or_equal(t.loop_cells.back(), t.loop_cells.front()) &&
         t.trace == trace_of(world, t.prefix_cells, t.loop_cells);
}

std::string format_cells(const std::vector<Cell> &cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out += (i ? " " : "") + to_string(cells[i]);
  }
  return out;
}

std::string render_path(const GridWorld &world, const Trajectory &t) {
  static const std::string marks = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::vector<std::string> grid(static_cast<std::size_t>(world.height),
                                std::string(static_cast<std::size_t>(world.width), '.'));
  auto at = [&](Cell c) -> char & { return grid[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)]; };
  for (Cell c : world.blocked) {
    at(c) = '#';
  }
  for (const auto &[c, aps] : world.labels) {
    at(c) = '+';
  }
  std::vector<Cell> path = t.prefix_cells;
  path.insert(path.end(), t.loop_cells.begin(), t.loop_cells.end());
  for (std::size_t i = 0; i < path.size(); ++i) {
    at(path[i]) = i < marks.size() ? marks[i] : '*';
  }
  std::string out;
  for (const auto &row : grid) {
    out += row + "\n";
  }
  out += "prefix: " + format_cells(t.prefix_cells) + "\n";
  out += "loop:   " + format_cells(t.loop_cells) + "\n";
  return out;
}

} // namespace nl2ltl
