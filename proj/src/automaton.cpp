#include "nl2ltl/automaton.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nl2ltl/lasso_search.hpp"

namespace nl2ltl {

bool Label::admits(const std::vector<bool> &valuation) const {
  return std::all_of(positive.begin(), positive.end(), [&](std::size_t i) { return valuation[i]; }) &&
         std::none_of(negative.begin(), negative.end(), [&](std::size_t i) { return valuation[i]; });
}

std::vector<std::vector<std::size_t>> BuchiAutomaton::outgoing() const {
  std::vector<std::vector<std::size_t>> out(state_count);
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    out[transitions[i].from].push_back(i);
  }
  return out;
}

std::size_t BuchiAutomaton::alphabet_index(const std::string &ap) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), ap);
  if (it == alphabet.end() || *it != ap) {
    return alphabet.size();
  }
  return static_cast<std::size_t>(it - alphabet.begin());
}

namespace {

using Bits = std::vector<bool>;

// NNF subformula with children referenced by closure index.
struct Sub {
  Op op;
  std::size_t ap = 0;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
};

constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

class Tableau {
public:
  Tableau(const Formula &f, const TableauOptions &options) : options_(options) {
    const Formula nnf = to_nnf(f);
    for (const auto &ap : nnf.atoms()) {
      alphabet_.push_back(ap);
    }
    positive_literal_.assign(alphabet_.size(), kAbsent);
    negative_literal_.assign(alphabet_.size(), kAbsent);
    root_ = intern(nnf);
  }

  BuchiAutomaton build() {
    BuchiAutomaton a;
    a.alphabet = alphabet_;
    a.closure_size = 2 * subs_.size();
    a.initial = {0};

    // State 0 is the pre-initial state; it carries no obligations.
    olds_.push_back(Bits(subs_.size(), false));
    nexts_.push_back(Bits(subs_.size(), false));

    std::vector<std::size_t> work;
    auto connect = [&](StateId from, const std::vector<std::size_t> &targets) {
      for (StateId to : targets) {
        a.transitions.push_back({from, label_of(olds_[to]), to});
      }
    };

    connect(0, successors({root_}, work));
    for (std::size_t i = 0; i < work.size(); ++i) {
      const StateId s = work[i];
      std::vector<std::size_t> todo;
      for (std::size_t k = 0; k < subs_.size(); ++k) {
        if (nexts_[s][k]) {
          todo.push_back(k);
        }
      }
      connect(s, successors(todo, work));
    }

    a.state_count = olds_.size();
    for (std::size_t k = 0; k < subs_.size(); ++k) {
      const Sub &sub = subs_[k];
      if (sub.op != Op::until && sub.op != Op::finally) {
        continue;
      }
      const std::size_t goal = sub.op == Op::until ? sub.rhs : sub.lhs;
      std::vector<StateId> set;
      for (StateId s = 0; s < a.state_count; ++s) {
        if (!olds_[s][k] || olds_[s][goal]) {
          set.push_back(s);
        }
      }
      a.acceptance_sets.push_back(std::move(set));
    }
    return a;
  }

private:
  std::size_t intern(const Formula &f) {
    if (auto it = index_.find(f); it != index_.end()) {
      return it->second;
    }
    Sub sub{f.op()};
    if (f.is_atom()) {
      sub.ap = ap_index(f.name());
    } else if (f.op() == Op::negation) {
      sub.ap = ap_index(f.operand().name());
    } else {
      sub.lhs = intern(f.lhs());
      if (f.is_binary()) {
        sub.rhs = intern(f.rhs());
      }
    }
    const std::size_t id = subs_.size();
    subs_.push_back(sub);
    index_.emplace(f, id);
    if (f.is_atom()) {
      positive_literal_[sub.ap] = id;
    } else if (f.op() == Op::negation) {
      negative_literal_[sub.ap] = id;
    }
    return id;
  }

  std::size_t ap_index(const std::string &name) const {
    return static_cast<std::size_t>(std::lower_bound(alphabet_.begin(), alphabet_.end(), name) - alphabet_.begin());
  }

  Label label_of(const Bits &old) const {
    Label l;
    for (std::size_t ap = 0; ap < alphabet_.size(); ++ap) {
      if (positive_literal_[ap] != kAbsent && old[positive_literal_[ap]]) {
        l.positive.push_back(ap);
      }
      if (negative_literal_[ap] != kAbsent && old[negative_literal_[ap]]) {
        l.negative.push_back(ap);
      }
    }
    return l;
  }

  // States for every consistent expansion of `todo`; new states are queued.
  std::vector<StateId> successors(const std::vector<std::size_t> &todo, std::vector<std::size_t> &work) {
    Bits key(subs_.size(), false);
    for (std::size_t k : todo) {
      key[k] = true;
    }
    if (auto it = expansions_.find(key); it != expansions_.end()) {
      return it->second;
    }
    std::vector<std::pair<Bits, Bits>> nodes;
    expand(todo, Bits(subs_.size(), false), Bits(subs_.size(), false), nodes);

    std::vector<StateId> out;
    for (auto &[old, next] : nodes) {
      auto [it, inserted] = states_.try_emplace({old, next}, olds_.size());
      if (inserted) {
        if (olds_.size() >= options_.max_states) {
          throw ResourceLimitError("automaton exceeds the state cap of " + std::to_string(options_.max_states) +
                                   " states");
        }
        olds_.push_back(old);
        nexts_.push_back(next);
        work.push_back(it->second);
      }
      if (std::find(out.begin(), out.end(), it->second) == out.end()) {
        out.push_back(it->second);
      }
    }
    expansions_.emplace(std::move(key), out);
    return out;
  }

  bool contradicts(std::size_t k, const Bits &old) const {
    const Sub &sub = subs_[k];
    const std::size_t other = sub.op == Op::atom ? negative_literal_[sub.ap] : positive_literal_[sub.ap];
    return other != kAbsent && old[other];
  }

  void expand(std::vector<std::size_t> todo, Bits old, Bits next, std::vector<std::pair<Bits, Bits>> &out) const {
    while (!todo.empty()) {
      const std::size_t k = todo.back();
      todo.pop_back();
      if (old[k]) {
        continue;
      }
      const Sub &sub = subs_[k];
      switch (sub.op) {
      case Op::atom:
      case Op::negation:
        if (contradicts(k, old)) {
          return;
        }
        old[k] = true;
        break;
      case Op::conjunction:
        old[k] = true;
        todo.push_back(sub.lhs);
        todo.push_back(sub.rhs);
        break;
      case Op::globally:
        old[k] = true;
        next[k] = true;
        todo.push_back(sub.lhs);
        break;
      case Op::disjunction: {
        old[k] = true;
        auto branch = todo;
        branch.push_back(sub.lhs);
        expand(std::move(branch), old, next, out);
        todo.push_back(sub.rhs);
        break;
      }
      case Op::finally: {
        old[k] = true;
        auto branch = todo;
        branch.push_back(sub.lhs);
        expand(std::move(branch), old, next, out);
        next[k] = true;
        break;
      }
      case Op::until: {
        old[k] = true;
        auto branch = todo;
        branch.push_back(sub.rhs);
        expand(std::move(branch), old, next, out);
        todo.push_back(sub.lhs);
        next[k] = true;
        break;
      }
      case Op::release: {
        old[k] = true;
        auto branch = todo;
        branch.push_back(sub.lhs);
        branch.push_back(sub.rhs);
        expand(std::move(branch), old, next, out);
        todo.push_back(sub.rhs);
        next[k] = true;
        break;
      }
      }
    }
    out.emplace_back(std::move(old), std::move(next));
  }

  TableauOptions options_;
  std::vector<std::string> alphabet_;
  std::vector<Sub> subs_;
  std::map<Formula, std::size_t> index_;
  std::vector<std::size_t> positive_literal_;
  std::vector<std::size_t> negative_literal_;
  std::size_t root_ = 0;

  std::vector<Bits> olds_;
  std::vector<Bits> nexts_;
  std::map<std::pair<Bits, Bits>, StateId> states_;
  std::map<Bits, std::vector<StateId>> expansions_;
};

Letter instantiate(const Label &label, const std::vector<std::string> &alphabet) {
  Letter letter;
  for (std::size_t ap : label.positive) {
    letter.insert(alphabet[ap]);
  }
  return letter;
}

} // namespace

BuchiAutomaton build_automaton(const Formula &f, const TableauOptions &options) {
  return Tableau(f, options).build();
}

EmptinessResult is_empty(const BuchiAutomaton &automaton) {
  GeneralizedGraph graph;
  graph.successors.resize(automaton.state_count);
  for (std::size_t i = 0; i < automaton.transitions.size(); ++i) {
    const Transition &t = automaton.transitions[i];
    graph.successors[t.from].push_back({t.to, i});
  }
  graph.initial = automaton.initial;
  for (const auto &set : automaton.acceptance_sets) {
    std::vector<bool> member(automaton.state_count, false);
    for (StateId s : set) {
      member[s] = true;
    }
    graph.acceptance.push_back(std::move(member));
  }

  EmptinessResult result;
  auto lasso = find_accepting_lasso(graph);
  if (!lasso) {
    return result;
  }
  result.empty = false;
  result.prefix_transitions = lasso->prefix;
  result.loop_transitions = lasso->loop;

  LassoWord word;
  for (std::size_t t : lasso->prefix) {
    word.prefix.push_back(instantiate(automaton.transitions[t].label, automaton.alphabet));
  }
  for (std::size_t t : lasso->loop) {
    word.loop.push_back(instantiate(automaton.transitions[t].label, automaton.alphabet));
  }
  fold_prefix_into_loop(word.prefix, word.loop);
  result.word = std::move(word);
  return result;
}

SatVerdict is_satisfiable(const Formula &f, const TableauOptions &options) {
  const EmptinessResult r = is_empty(build_automaton(f, options));
  SatVerdict verdict;
  if (r.empty) {
    return verdict;
  }
  if (!evaluate(f, *r.word)) {
    throw std::logic_error("internal error: tableau witness " + to_string(*r.word) +
                           " does not satisfy the formula");
  }
  verdict.satisfiable = true;
  verdict.witness = r.word;
  return verdict;
}

bool equiv(const Formula &f, const Formula &g, const TableauOptions &options) {
  using namespace ltl;
  if (f == g) {
    return true;
  }
  return !is_satisfiable(And(f, Not(g)), options).satisfiable && !is_satisfiable(And(Not(f), g), options).satisfiable;
}

std::string dump(const BuchiAutomaton &a) {
  std::ostringstream out;
  out << "automaton v1\n";
  out << "alphabet:";
  for (const auto &ap : a.alphabet) {
    out << ' ' << ap;
  }
  out << "\nstates: " << a.state_count << "\ninitial:";
  for (StateId s : a.initial) {
    out << ' ' << s;
  }
  out << '\n';
  for (std::size_t i = 0; i < a.acceptance_sets.size(); ++i) {
    out << "acceptance " << i << ':';
    for (StateId s : a.acceptance_sets[i]) {
      out << ' ' << s;
    }
    out << '\n';
  }
  for (const auto &t : a.transitions) {
    out << "transition " << t.from << " -> " << t.to << " :";
    if (t.label.positive.empty() && t.label.negative.empty()) {
      out << " true";
    }
    for (std::size_t ap : t.label.positive) {
      out << ' ' << a.alphabet[ap];
    }
    for (std::size_t ap : t.label.negative) {
      out << " !" << a.alphabet[ap];
    }
    out << '\n';
  }
  return out.str();
}

} // namespace nl2ltl
