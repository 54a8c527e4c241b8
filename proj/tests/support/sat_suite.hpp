#pragma once

#include <string>
#include <vector>

#include "nl2ltl/formula.hpp"

namespace suite {

struct SatCase {
  const char *text;
  nl2ltl::Syntax syntax;
  // Unsatisfiability established by hand, independently of both checkers.
  bool known_unsat;
};

// Formulas over at most three atoms with at most nine nodes. The first ten
// come from the datasets and worked examples the tool targets.
inline const std::vector<SatCase> &sat_cases() {
  using nl2ltl::Syntax;
  static const std::vector<SatCase> cases = {
      {"F(purple_room & F(red_room))", Syntax::infix, false},
      {"F(red_room & F(blue_room))", Syntax::infix, false},
      {"!(red_room) U (second_floor)", Syntax::infix, false},
      {"F & | B Y F C", Syntax::prefix, false},
      {"G & U S ! C F C", Syntax::prefix, false},
      {"F(C) & G(!Y)", Syntax::infix, false},
      {"F(C & G(!Y))", Syntax::infix, false},
      {"(G(! Angel_St) & F(bakery))", Syntax::infix, false},
      {"F(A & ! B)", Syntax::infix, false},
      {"!(A) U (B)", Syntax::infix, false},
      {"a", Syntax::infix, false},
      {"F(a)", Syntax::infix, false},
      {"G(a)", Syntax::infix, false},
      {"G(F(a))", Syntax::infix, false},
      {"F(a U b)", Syntax::infix, false},
      {"a U (b U c)", Syntax::infix, false},
      {"(a U b) U c", Syntax::infix, false},
      {"G(!a) & F(a U b)", Syntax::infix, false},
      {"G(F(a) & F(!a))", Syntax::infix, false},
      {"G(a U b)", Syntax::infix, false},
      {"G(!a | F(b))", Syntax::infix, false},
      {"F(a & b & c)", Syntax::infix, false},
      {"!a U (b & c)", Syntax::infix, false},
      {"F(G(a)) & F(!a)", Syntax::infix, false},
      {"a & !a", Syntax::infix, true},
      {"G(a) & F(!a)", Syntax::infix, true},
      {"F(G(a)) & G(F(!a))", Syntax::infix, true},
      {"(a U b) & G(!b)", Syntax::infix, true},
      {"!(a U b) & b", Syntax::infix, true},
      {"F(a & !a)", Syntax::infix, true},
      {"!G(F(a)) & G(F(a))", Syntax::infix, true},
      {"!(F(a) | F(!a))", Syntax::infix, true},
      {"a & G(!a)", Syntax::infix, true},
      {"G(a & !b) & F(b)", Syntax::infix, true},
      {"(a U b) & G(!b) & c", Syntax::infix, true},
  };
  return cases;
}

} // namespace suite
