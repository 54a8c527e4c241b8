#include "nl2ltl/lasso.hpp"

#include <stdexcept>

namespace nl2ltl {

const Letter &LassoWord::at(std::size_t position) const {
  if (loop.empty()) {
    throw std::invalid_argument("lasso word needs a non-empty loop");
  }
  if (position < prefix.size()) {
    return prefix[position];
  }
  return loop[(position - prefix.size()) % loop.size()];
}

namespace {

// Positions 0..n-1 cover the word; the successor of n-1 wraps to the loop start.
struct Positions {
  std::size_t n;
  std::size_t loop_start;
  std::size_t succ(std::size_t i) const { return i + 1 < n ? i + 1 : loop_start; }
};

// Until is the least fixpoint of  v = rhs | (lhs & X v), release the greatest
// fixpoint of  v = rhs & (lhs | X v). Iterating n times from the bottom/top
// element reaches the fixpoint since each pass settles at least one position.
std::vector<bool> fixpoint(const std::vector<bool> &lhs, const std::vector<bool> &rhs, const Positions &pos,
                           bool greatest) {
  std::vector<bool> v(pos.n, greatest);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = pos.n; k-- > 0;) {
      bool next = v[pos.succ(k)];
      bool value = greatest ? (rhs[k] && (lhs[k] || next)) : (rhs[k] || (lhs[k] && next));
      if (value != v[k]) {
        v[k] = value;
        changed = true;
      }
    }
  }
  return v;
}

std::vector<bool> eval(const Formula &f, const LassoWord &w, const Positions &pos) {
  std::vector<bool> out(pos.n);
  switch (f.op()) {
  case Op::atom:
    for (std::size_t i = 0; i < pos.n; ++i) {
      out[i] = w.at(i).count(f.name()) > 0;
    }
    return out;
  case Op::negation: {
    auto v = eval(f.operand(), w, pos);
    for (std::size_t i = 0; i < pos.n; ++i) {
      out[i] = !v[i];
    }
    return out;
  }
  case Op::conjunction:
  case Op::disjunction: {
    auto a = eval(f.lhs(), w, pos);
    auto b = eval(f.rhs(), w, pos);
    for (std::size_t i = 0; i < pos.n; ++i) {
      out[i] = f.op() == Op::conjunction ? (a[i] && b[i]) : (a[i] || b[i]);
    }
    return out;
  }
  case Op::finally:
    return fixpoint(std::vector<bool>(pos.n, true), eval(f.operand(), w, pos), pos, false);
  case Op::globally:
    return fixpoint(std::vector<bool>(pos.n, false), eval(f.operand(), w, pos), pos, true);
  case Op::until:
    return fixpoint(eval(f.lhs(), w, pos), eval(f.rhs(), w, pos), pos, false);
  case Op::release:
    return fixpoint(eval(f.lhs(), w, pos), eval(f.rhs(), w, pos), pos, true);
  }
  return out;
}

std::string letter_string(const Letter &l) {
  std::string out = "{";
  bool first = true;
  for (const auto &ap : l) {
    out += (first ? "" : ",") + ap;
    first = false;
  }
  return out + "}";
}

} // namespace

std::vector<bool> evaluate_positions(const Formula &f, const LassoWord &word) {
  if (word.loop.empty()) {
    throw std::invalid_argument("lasso word needs a non-empty loop");
  }
  return eval(f, word, Positions{word.size(), word.prefix.size()});
}

bool evaluate(const Formula &f, const LassoWord &word) { return evaluate_positions(f, word)[0]; }

std::string to_string(const LassoWord &word) {
  std::string out = "[";
  for (std::size_t i = 0; i < word.prefix.size(); ++i) {
    out += (i ? "," : "") + letter_string(word.prefix[i]);
  }
  out += "] ([";
  for (std::size_t i = 0; i < word.loop.size(); ++i) {
    out += (i ? "," : "") + letter_string(word.loop[i]);
  }
  return out + "])^w";
}

} // namespace nl2ltl
