#include "nl2ltl/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace nl2ltl {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> children;
};

Formula Formula::atom(std::string name) {
  if (!is_identifier(name) || is_reserved_word(name)) {
    throw std::invalid_argument("invalid atomic proposition name '" + name + "'");
  }
  return Formula(std::make_shared<const Node>(Node{Op::atom, std::move(name), {}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Op::negation, {}, {std::move(operand)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::conjunction, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::disjunction, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::finally(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Op::finally, {}, {std::move(operand)}}));
}

Formula Formula::globally(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Op::globally, {}, {std::move(operand)}}));
}

Formula Formula::until(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::until, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::release(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::release, {}, {std::move(lhs), std::move(rhs)}}));
}

Op Formula::op() const { return node_->op; }

bool Formula::is_unary() const {
  return op() == Op::negation || op() == Op::finally || op() == Op::globally;
}

bool Formula::is_binary() const { return !is_atom() && !is_unary(); }

const std::string &Formula::name() const { return node_->name; }

const Formula &Formula::lhs() const {
  if (node_->children.empty()) {
    throw std::logic_error("atomic proposition has no operands");
  }
  return node_->children[0];
}

const Formula &Formula::rhs() const {
  if (node_->children.size() < 2) {
    throw std::logic_error("formula has no right operand");
  }
  return node_->children[1];
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto &c : node_->children) {
    d = std::max(d, c.depth());
  }
  return d + 1;
}

std::size_t Formula::node_count() const {
  std::size_t n = 1;
  for (const auto &c : node_->children) {
    n += c.node_count();
  }
  return n;
}

bool Formula::contains(Op o) const {
  if (op() == o) {
    return true;
  }
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [o](const Formula &c) { return c.contains(o); });
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  if (is_atom()) {
    out.insert(name());
  }
  for (const auto &c : node_->children) {
    auto sub = c.atoms();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

bool operator==(const Formula &a, const Formula &b) {
  if (a.node_ == b.node_) {
    return true;
  }
  return a.node_->op == b.node_->op && a.node_->name == b.node_->name &&
         a.node_->children == b.node_->children;
}

bool operator<(const Formula &a, const Formula &b) {
  if (a.node_ == b.node_) {
    return false;
  }
  if (a.node_->op != b.node_->op) {
    return a.node_->op < b.node_->op;
  }
  if (a.node_->name != b.node_->name) {
    return a.node_->name < b.node_->name;
  }
  return std::lexicographical_compare(a.node_->children.begin(), a.node_->children.end(),
                                      b.node_->children.begin(), b.node_->children.end());
}

bool is_reserved_word(std::string_view text) {
  static constexpr std::array<std::string_view, 7> reserved = {"F", "G", "U", "X", "R", "W", "M"};
  return std::find(reserved.begin(), reserved.end(), text) != reserved.end();
}

bool is_identifier(std::string_view text) {
  if (text.empty() || std::isdigit(static_cast<unsigned char>(text[0]))) {
    return false;
  }
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

std::string join_expected(const std::vector<std::string> &expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    out += (i ? ", " : "") + expected[i];
  }
  return out;
}

} // namespace

ParseError::ParseError(const std::string &message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error(message), offset_(offset), expected_(std::move(expected)) {}

UnknownOperatorError::UnknownOperatorError(const std::string &token, std::size_t offset)
    : ParseError("unknown operator '" + token + "' at offset " + std::to_string(offset) +
                     " (allowed: F, G, U, &, |, !)",
                 offset, {}),
      token_(token) {}

namespace {

// LTL operators found in other tools that this grammar does not support.
constexpr std::array<std::string_view, 4> kForeignWordOperators = {"X", "R", "W", "M"};
constexpr std::array<std::string_view, 6> kForeignSymbolOperators = {"<->", "<=>", "->", "=>", "^", "~"};

enum class Tok { ident, lparen, rparen, bang, amp, bar, foreign, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

[[noreturn]] void syntax_error(const std::string &what, std::size_t offset, std::vector<std::string> expected) {
  std::string msg = "syntax error at offset " + std::to_string(offset) + ": " + what;
  if (!expected.empty()) {
    msg += "; expected one of {" + join_expected(expected) + "}";
  }
  throw ParseError(msg, offset, std::move(expected));
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    bool foreign = false;
    for (auto sym : kForeignSymbolOperators) {
      if (text.substr(i, sym.size()) == sym) {
        out.push_back({Tok::foreign, std::string(sym), i});
        i += sym.size();
        foreign = true;
        break;
      }
    }
    if (foreign) {
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      bool is_foreign = std::find(kForeignWordOperators.begin(), kForeignWordOperators.end(), word) !=
                        kForeignWordOperators.end();
      out.push_back({is_foreign ? Tok::foreign : Tok::ident, std::move(word), i});
      i = j;
      continue;
    }
    switch (c) {
    case '(':
      out.push_back({Tok::lparen, "(", i});
      break;
    case ')':
      out.push_back({Tok::rparen, ")", i});
      break;
    case '!':
      out.push_back({Tok::bang, "!", i});
      break;
    case '&':
      out.push_back({Tok::amp, "&", i});
      break;
    case '|':
      out.push_back({Tok::bar, "|", i});
      break;
    default:
      syntax_error(std::string("unexpected character '") + c + "'", i, {});
    }
    ++i;
  }
  out.push_back({Tok::end, "", text.size()});
  return out;
}

bool is_keyword(const Token &t, std::string_view kw) { return t.kind == Tok::ident && t.text == kw; }

bool is_operator_word(std::string_view w) { return w == "F" || w == "G" || w == "U"; }

class InfixParser {
public:
  explicit InfixParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_or();
    if (peek().kind != Tok::end) {
      unexpected({"&", "|", "U", "end of input"});
    }
    return f;
  }

private:
  const Token &peek() const { return toks_[pos_]; }
  const Token &next() { return toks_[pos_++]; }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const Token &t = peek();
    if (t.kind == Tok::foreign) {
      throw UnknownOperatorError(t.text, t.offset);
    }
    std::string what = t.kind == Tok::end ? "unexpected end of input" : "unexpected token '" + t.text + "'";
    syntax_error(what, t.offset, std::move(expected));
  }

  std::vector<std::string> after_operand() const {
    return {"&", "|", "U", depth_ > 0 ? ")" : "end of input"};
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::bar) {
      next();
      lhs = Formula::disjunction(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_until();
    while (peek().kind == Tok::amp) {
      next();
      lhs = Formula::conjunction(lhs, parse_until());
    }
    return lhs;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (is_keyword(peek(), "U")) {
      next();
      return Formula::until(lhs, parse_until());
    }
    if (peek().kind == Tok::ident || peek().kind == Tok::lparen || peek().kind == Tok::foreign) {
      unexpected(after_operand());
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token &t = peek();
    if (t.kind == Tok::bang) {
      next();
      return Formula::negation(parse_unary());
    }
    if (is_keyword(t, "F")) {
      next();
      return Formula::finally(parse_unary());
    }
    if (is_keyword(t, "G")) {
      next();
      return Formula::globally(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token &t = peek();
    if (t.kind == Tok::ident && !is_operator_word(t.text)) {
      next();
      return Formula::atom(t.text);
    }
    if (t.kind == Tok::lparen) {
      next();
      ++depth_;
      Formula inner = parse_or();
      if (peek().kind != Tok::rparen) {
        unexpected({"&", "|", "U", ")"});
      }
      next();
      --depth_;
      return inner;
    }
    unexpected({"identifier", "(", "!", "F", "G"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

class PrefixParser {
public:
  explicit PrefixParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_node();
    const Token &t = toks_[pos_];
    if (t.kind != Tok::end) {
      if (t.kind == Tok::foreign) {
        throw UnknownOperatorError(t.text, t.offset);
      }
      syntax_error("trailing token '" + t.text + "'", t.offset, {"end of input"});
    }
    return f;
  }

private:
  Formula parse_node() {
    const Token &t = toks_[pos_];
    switch (t.kind) {
    case Tok::bang:
      ++pos_;
      return Formula::negation(parse_node());
    case Tok::amp: {
      ++pos_;
      Formula lhs = parse_node();
      return Formula::conjunction(lhs, parse_node());
    }
    case Tok::bar: {
      ++pos_;
      Formula lhs = parse_node();
      return Formula::disjunction(lhs, parse_node());
    }
    case Tok::ident: {
      ++pos_;
      if (t.text == "F") {
        return Formula::finally(parse_node());
      }
      if (t.text == "G") {
        return Formula::globally(parse_node());
      }
      if (t.text == "U") {
        Formula lhs = parse_node();
        return Formula::until(lhs, parse_node());
      }
      return Formula::atom(t.text);
    }
    case Tok::foreign:
      throw UnknownOperatorError(t.text, t.offset);
    case Tok::end:
      syntax_error("unexpected end of input", t.offset, {"identifier", "!", "&", "|", "F", "G", "U"});
    default:
      syntax_error("unexpected token '" + t.text + "' in prefix formula", t.offset,
                   {"identifier", "!", "&", "|", "F", "G", "U"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Formula parse_with(std::string_view text, Syntax syntax) {
  if (syntax == Syntax::infix) {
    return InfixParser(tokenize(text)).parse();
  }
  return PrefixParser(tokenize(text)).parse();
}

enum Precedence { kOr = 1, kAnd = 2, kUntil = 3, kUnary = 4, kAtom = 5 };

int precedence(const Formula &f) {
  switch (f.op()) {
  case Op::disjunction:
    return kOr;
  case Op::conjunction:
    return kAnd;
  case Op::until:
  case Op::release:
    return kUntil;
  case Op::negation:
  case Op::finally:
  case Op::globally:
    return kUnary;
  case Op::atom:
    return kAtom;
  }
  return kAtom;
}

void print_infix(const Formula &f, int min_prec, std::string &out) {
  const bool paren = precedence(f) < min_prec;
  if (paren) {
    out += '(';
  }
  switch (f.op()) {
  case Op::atom:
    out += f.name();
    break;
  case Op::negation:
    out += '!';
    print_infix(f.operand(), kUnary, out);
    break;
  case Op::finally:
  case Op::globally:
    out += f.op() == Op::finally ? "F(" : "G(";
    print_infix(f.operand(), 0, out);
    out += ')';
    break;
  case Op::disjunction:
    print_infix(f.lhs(), kOr, out);
    out += " | ";
    print_infix(f.rhs(), kAnd, out);
    break;
  case Op::conjunction:
    print_infix(f.lhs(), kAnd, out);
    out += " & ";
    print_infix(f.rhs(), kUntil, out);
    break;
  case Op::until:
    print_infix(f.lhs(), kUnary, out);
    out += " U ";
    print_infix(f.rhs(), kUntil, out);
    break;
  case Op::release:
    throw InternalOperatorError("Release is an internal operator and has no surface syntax");
  }
  if (paren) {
    out += ')';
  }
}

const char *op_token(Op op) {
  switch (op) {
  case Op::negation:
    return "!";
  case Op::conjunction:
    return "&";
  case Op::disjunction:
    return "|";
  case Op::finally:
    return "F";
  case Op::globally:
    return "G";
  case Op::until:
    return "U";
  case Op::release:
    return "R";
  case Op::atom:
    break;
  }
  return "";
}

void print_prefix(const Formula &f, std::string &out) {
  if (!out.empty()) {
    out += ' ';
  }
  if (f.is_atom()) {
    out += f.name();
    return;
  }
  if (f.op() == Op::release) {
    throw InternalOperatorError("Release is an internal operator and has no surface syntax");
  }
  out += op_token(f.op());
  print_prefix(f.lhs(), out);
  if (f.is_binary()) {
    print_prefix(f.rhs(), out);
  }
}

} // namespace

Formula parse(std::string_view text, Syntax syntax) {
  if (syntax != Syntax::automatic) {
    return parse_with(text, syntax);
  }
  try {
    return parse_with(text, Syntax::infix);
  } catch (const UnknownOperatorError &) {
    throw;
  } catch (const ParseError &infix_error) {
    try {
      return parse_with(text, Syntax::prefix);
    } catch (const UnknownOperatorError &) {
      throw;
    } catch (const ParseError &prefix_error) {
      if (prefix_error.offset() > infix_error.offset()) {
        throw;
      }
      throw infix_error;
    }
  }
}

std::string print(const Formula &f, Syntax syntax) {
  std::string out;
  switch (syntax) {
  case Syntax::infix:
    print_infix(f, 0, out);
    break;
  case Syntax::prefix:
    print_prefix(f, out);
    break;
  case Syntax::automatic:
    throw std::invalid_argument("print() needs a concrete syntax");
  }
  return out;
}

void check_strict_grammar(const Formula &f) {
  if (f.op() == Op::release) {
    throw StrictGrammarError("Release is not part of the surface grammar");
  }
  if (f.op() == Op::negation && !f.operand().is_atom()) {
    throw StrictGrammarError("negation is only allowed on atomic propositions, found !(" +
                             print(f.operand(), Syntax::infix) + ")");
  }
  if (!f.is_atom()) {
    check_strict_grammar(f.lhs());
    if (f.is_binary()) {
      check_strict_grammar(f.rhs());
    }
  }
}

bool conforms_to_strict_grammar(const Formula &f) {
  try {
    check_strict_grammar(f);
    return true;
  } catch (const StrictGrammarError &) {
    return false;
  }
}

Formula to_nnf(const Formula &f) {
  using namespace ltl;
  switch (f.op()) {
  case Op::atom:
    return f;
  case Op::conjunction:
    return And(to_nnf(f.lhs()), to_nnf(f.rhs()));
  case Op::disjunction:
    return Or(to_nnf(f.lhs()), to_nnf(f.rhs()));
  case Op::finally:
    return F(to_nnf(f.operand()));
  case Op::globally:
    return G(to_nnf(f.operand()));
  case Op::until:
    return U(to_nnf(f.lhs()), to_nnf(f.rhs()));
  case Op::release:
    return R(to_nnf(f.lhs()), to_nnf(f.rhs()));
  case Op::negation:
    break;
  }
  const Formula &g = f.operand();
  switch (g.op()) {
  case Op::atom:
    return f;
  case Op::negation:
    return to_nnf(g.operand());
  case Op::conjunction:
    return Or(to_nnf(Not(g.lhs())), to_nnf(Not(g.rhs())));
  case Op::disjunction:
    return And(to_nnf(Not(g.lhs())), to_nnf(Not(g.rhs())));
  case Op::finally:
    return G(to_nnf(Not(g.operand())));
  case Op::globally:
    return F(to_nnf(Not(g.operand())));
  case Op::until:
    return R(to_nnf(Not(g.lhs())), to_nnf(Not(g.rhs())));
  case Op::release:
    return U(to_nnf(Not(g.lhs())), to_nnf(Not(g.rhs())));
  }
  return f;
}

Formula rename_atoms(const Formula &f, const std::function<std::string(const std::string &)> &rename) {
  switch (f.op()) {
  case Op::atom:
    return Formula::atom(rename(f.name()));
  case Op::negation:
    return Formula::negation(rename_atoms(f.operand(), rename));
  case Op::finally:
    return Formula::finally(rename_atoms(f.operand(), rename));
  case Op::globally:
    return Formula::globally(rename_atoms(f.operand(), rename));
  case Op::conjunction:
    return Formula::conjunction(rename_atoms(f.lhs(), rename), rename_atoms(f.rhs(), rename));
  case Op::disjunction:
    return Formula::disjunction(rename_atoms(f.lhs(), rename), rename_atoms(f.rhs(), rename));
  case Op::until:
    return Formula::until(rename_atoms(f.lhs(), rename), rename_atoms(f.rhs(), rename));
  case Op::release:
    return Formula::release(rename_atoms(f.lhs(), rename), rename_atoms(f.rhs(), rename));
  }
  return f;
}

std::string structure_of(const Formula &f) {
  return print(rename_atoms(f, [](const std::string &) { return std::string("_"); }), Syntax::infix);
}

std::set<std::string> token_set(const Formula &f) {
  std::set<std::string> out;
  if (f.is_atom()) {
    out.insert(f.name());
    return out;
  }
  out.insert(op_token(f.op()));
  auto lhs = token_set(f.lhs());
  out.insert(lhs.begin(), lhs.end());
  if (f.is_binary()) {
    auto rhs = token_set(f.rhs());
    out.insert(rhs.begin(), rhs.end());
  }
  return out;
}

std::string to_string(Syntax syntax) {
  switch (syntax) {
  case Syntax::infix:
    return "infix";
  case Syntax::prefix:
    return "prefix";
  case Syntax::automatic:
    return "auto";
  }
  return "auto";
}

Syntax syntax_from_string(std::string_view name) {
  if (name == "infix") {
    return Syntax::infix;
  }
  if (name == "prefix") {
    return Syntax::prefix;
  }
  if (name == "auto" || name == "automatic") {
    return Syntax::automatic;
  }
  throw std::invalid_argument("unknown syntax '" + std::string(name) + "' (expected infix, prefix or auto)");
}

} // namespace nl2ltl
