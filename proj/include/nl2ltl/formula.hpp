#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nl2ltl {

enum class Op { atom, negation, conjunction, disjunction, finally, globally, until, release };

enum class Syntax { infix, prefix, automatic };

/* Immutable LTL formula tree. Copies share structure; equality and ordering
 * are structural.
 *
 * Release is an internal operator: it is produced by to_nnf() and consumed by
 * the tableau, but the surface parser and printer reject it.
 */
class Formula {
public:
  static Formula atom(std::string name);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula finally(Formula operand);
  static Formula globally(Formula operand);
  static Formula until(Formula lhs, Formula rhs);
  static Formula release(Formula lhs, Formula rhs);

  Op op() const;
  bool is_atom() const { return op() == Op::atom; }
  bool is_unary() const;
  bool is_binary() const;

  // Atom name; empty for non-atoms.
  const std::string &name() const;
  // Operand of a unary node / left operand of a binary node.
  const Formula &lhs() const;
  const Formula &rhs() const;
  const Formula &operand() const { return lhs(); }

  std::size_t depth() const;
  std::size_t node_count() const;
  bool contains(Op op) const;
  std::set<std::string> atoms() const;

  friend bool operator==(const Formula &a, const Formula &b);
  friend bool operator!=(const Formula &a, const Formula &b) { return !(a == b); }
  friend bool operator<(const Formula &a, const Formula &b);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Convenience constructors used heavily in tests and fixtures.
namespace ltl {
inline Formula ap(std::string name) { return Formula::atom(std::move(name)); }
inline Formula Not(Formula f) { return Formula::negation(std::move(f)); }
inline Formula And(Formula a, Formula b) { return Formula::conjunction(std::move(a), std::move(b)); }
inline Formula Or(Formula a, Formula b) { return Formula::disjunction(std::move(a), std::move(b)); }
inline Formula F(Formula f) { return Formula::finally(std::move(f)); }
inline Formula G(Formula f) { return Formula::globally(std::move(f)); }
inline Formula U(Formula a, Formula b) { return Formula::until(std::move(a), std::move(b)); }
inline Formula R(Formula a, Formula b) { return Formula::release(std::move(a), std::move(b)); }
} // namespace ltl

bool is_identifier(std::string_view text);
// Operator words that can never name an atomic proposition.
bool is_reserved_word(std::string_view text);

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &message, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string> &expected() const { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// A token that names a temporal/logical operator outside the supported
// grammar (X, R, W, M, ->, <->, ...).
class UnknownOperatorError : public ParseError {
public:
  UnknownOperatorError(const std::string &token, std::size_t offset);
  const std::string &token() const { return token_; }

private:
  std::string token_;
};

// Raised when printing a formula that contains an internal-only operator.
class InternalOperatorError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Raised by check_strict_grammar() for negation over a non-atomic operand.
class StrictGrammarError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/* Parses `text` in the requested surface syntax.
 *
 * Infix precedence, tightest first: unary (! F G), U (right-assoc), &, |.
 * Prefix is Polish notation over the same operator tokens. `automatic` tries
 * infix first and falls back to prefix.
 */
Formula parse(std::string_view text, Syntax syntax = Syntax::automatic);

// Canonical rendering; throws InternalOperatorError on Release nodes.
std::string print(const Formula &f, Syntax syntax = Syntax::infix);

// Rejects negation applied to anything but an atom (dataset grammar).
void check_strict_grammar(const Formula &f);
bool conforms_to_strict_grammar(const Formula &f);

Formula to_nnf(const Formula &f);

// Formula with every atom replaced by a placeholder; the "structure" of f.
std::string structure_of(const Formula &f);

Formula rename_atoms(const Formula &f, const std::function<std::string(const std::string &)> &rename);

// Distinct tokens (atoms plus operator tokens) used by voting.
std::set<std::string> token_set(const Formula &f);

std::string to_string(Syntax syntax);
Syntax syntax_from_string(std::string_view name);

} // namespace nl2ltl
