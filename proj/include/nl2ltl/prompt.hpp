#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nl2ltl/formula.hpp"

namespace nl2ltl {

struct PromptHeader {
  std::string instruction_text;
  std::vector<std::string> allowed_aps;
  // Subset of F, G, U, &, |, ! in display order.
  std::vector<std::string> allowed_operators;
  Syntax output_syntax = Syntax::infix;
};

struct Subgoal {
  std::string statement;
  std::string answer;
};

struct CoTExample {
  std::string specification;
  std::string srl_annotation;
  std::vector<Subgoal> subgoals;
  Formula final_ltl;
};

struct PromptBundle {
  PromptHeader header;
  std::vector<CoTExample> examples;
  std::string test_specification;
  std::optional<std::string> test_srl;
  std::size_t shot_count = 6;
};

class PromptValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// No "LTL:" line in a completion.
class ExtractionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PromptSetError : public std::runtime_error {
public:
  PromptSetError(const std::string &message, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

inline constexpr std::string_view kFinishMarker = "FINISH";
inline constexpr std::string_view kLtlMarker = "LTL:";

void validate(const PromptBundle &bundle);

// Worked-example block, ending with the FINISH line.
std::string render_example(const PromptHeader &header, const CoTExample &example);

std::string render(const PromptBundle &bundle);

// render(bundle) followed by a correction block. An empty failed_output is
// left out of the block.
std::string render_reprompt(const PromptBundle &bundle, std::string_view failed_output,
                            std::string_view error_message);

/* Formula on the last "LTL:" line of a completion, ignoring anything after the
 * first FINISH. Throws ExtractionError when there is no such line and
 * ParseError (message naming the line) when it does not parse.
 */
Formula extract_formula(std::string_view completion, Syntax syntax = Syntax::automatic);

PromptBundle parse_prompt_set(std::string_view text);
PromptBundle load_prompt_set(const std::string &path);

} // namespace nl2ltl
