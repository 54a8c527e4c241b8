#pragma once

// Brute-force semantics used only by tests. Shares nothing with the library's
// evaluator or tableau beyond the Formula type itself.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nl2ltl/formula.hpp"
#include "nl2ltl/lasso.hpp"

namespace oracle {

using nl2ltl::Formula;
using nl2ltl::Op;

// Postfix program over position bitmasks (bit i = truth at position i).
class Program {
public:
  explicit Program(const Formula &f) {
    for (const auto &ap : f.atoms()) {
      aps_.push_back(ap);
    }
    compile(f);
  }

  const std::vector<std::string> &aps() const { return aps_; }

  // ap_masks[k] holds the positions where aps()[k] is true.
  std::uint32_t run(const std::vector<std::uint32_t> &ap_masks, int n, int loop_start) const {
    const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);
    auto succ = [&](std::uint32_t v) { return (v >> 1) | (((v >> loop_start) & 1u) << (n - 1)); };
    std::vector<std::uint32_t> stack;
    stack.reserve(code_.size());
    for (const auto &ins : code_) {
      switch (ins.op) {
      case Op::atom:
        stack.push_back(ap_masks[ins.ap]);
        break;
      case Op::negation:
        stack.back() = ~stack.back() & all;
        break;
      case Op::conjunction:
      case Op::disjunction:
      case Op::until:
      case Op::release: {
        std::uint32_t rhs = stack.back();
        stack.pop_back();
        std::uint32_t lhs = stack.back();
        stack.back() = binary(ins.op, lhs, rhs, all, succ);
        break;
      }
      case Op::finally:
        stack.back() = binary(Op::until, all, stack.back(), all, succ);
        break;
      case Op::globally:
        stack.back() = binary(Op::release, 0u, stack.back(), all, succ);
        break;
      }
    }
    return stack.back();
  }

private:
  struct Ins {
    Op op;
    std::size_t ap = 0;
  };

  template <typename Succ>
  static std::uint32_t binary(Op op, std::uint32_t a, std::uint32_t b, std::uint32_t all, Succ succ) {
    switch (op) {
    case Op::conjunction:
      return a & b;
    case Op::disjunction:
      return a | b;
    case Op::until: {
      std::uint32_t v = 0;
      for (;;) {
        std::uint32_t nv = b | (a & succ(v));
        if (nv == v) {
          return v;
        }
        v = nv;
      }
    }
    case Op::release: {
      std::uint32_t v = all;
      for (;;) {
        std::uint32_t nv = b & (a | succ(v));
        if (nv == v) {
          return v;
        }
        v = nv;
      }
    }
    default:
      return 0;
    }
  }

  void compile(const Formula &f) {
    if (f.is_atom()) {
      std::size_t k = 0;
      while (aps_[k] != f.name()) {
        ++k;
      }
      code_.push_back({Op::atom, k});
      return;
    }
    compile(f.lhs());
    if (f.is_binary()) {
      compile(f.rhs());
    }
    code_.push_back({f.op()});
  }

  std::vector<std::string> aps_;
  std::vector<Ins> code_;
};

inline bool holds(const Formula &f, const nl2ltl::LassoWord &w) {
  Program p(f);
  const int n = static_cast<int>(w.size());
  std::vector<std::uint32_t> masks(p.aps().size(), 0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p.aps().size(); ++k) {
      if (w.at(static_cast<std::size_t>(i)).count(p.aps()[k])) {
        masks[k] |= 1u << i;
      }
    }
  }
  return p.run(masks, n, static_cast<int>(w.prefix.size())) & 1u;
}

/* Enumerates every lasso word over the formula's own atoms with
 * prefix + loop length <= max_length, shortest first. Returns the first model
 * found, or nullopt when none exists within the bound.
 */
inline std::optional<nl2ltl::LassoWord> bounded_model(const Formula &f, int max_length) {
  Program p(f);
  const std::size_t k = p.aps().size();
  for (int n = 1; n <= max_length; ++n) {
    const std::uint64_t combos = 1ull << (static_cast<std::uint64_t>(n) * k);
    std::vector<std::uint32_t> masks(k);
    for (std::uint64_t c = 0; c < combos; ++c) {
      for (std::size_t a = 0; a < k; ++a) {
        masks[a] = static_cast<std::uint32_t>((c >> (a * n)) & ((1ull << n) - 1));
      }
      for (int loop_start = 0; loop_start < n; ++loop_start) {
        if (!(p.run(masks, n, loop_start) & 1u)) {
          continue;
        }
        nl2ltl::LassoWord w;
        for (int i = 0; i < n; ++i) {
          nl2ltl::Letter letter;
          for (std::size_t a = 0; a < k; ++a) {
            if (masks[a] >> i & 1u) {
              letter.insert(p.aps()[a]);
            }
          }
          (i < loop_start ? w.prefix : w.loop).push_back(std::move(letter));
        }
        return w;
      }
    }
  }
  return std::nullopt;
}

} // namespace oracle
