#include "nl2ltl/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nl2ltl {

namespace {

const std::vector<std::string> kOperators = {"F", "G", "U", "&", "|", "!"};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
    ++b;
  }
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

std::string normalize_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\r') {
      out += '\n';
      if (i + 1 < s.size() && s[i + 1] == '\n') {
        ++i;
      }
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string single_line(std::string_view s) {
  std::string out = normalize_newlines(s);
  std::replace(out.begin(), out.end(), '\n', ' ');
  return trim(out);
}

std::string join(const std::vector<std::string> &items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) {
      out += sep;
    }
    out += items[i];
  }
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) {
    return false;
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

void validate_header(const PromptHeader &h) {
  if (h.allowed_aps.empty()) {
    throw PromptValidationError("header lists no atomic propositions");
  }
  for (const auto &ap : h.allowed_aps) {
    if (!is_identifier(ap) || is_reserved_word(ap)) {
      throw PromptValidationError("'" + ap + "' is not a valid atomic proposition name");
    }
  }
  for (const auto &op : h.allowed_operators) {
    if (std::find(kOperators.begin(), kOperators.end(), op) == kOperators.end()) {
      throw PromptValidationError("operator '" + op + "' is not one of F, G, U, &, |, !");
    }
  }
  if (h.output_syntax == Syntax::automatic) {
    throw PromptValidationError("output syntax must be infix or prefix");
  }
}

void validate_example(const PromptHeader &h, const CoTExample &e, std::size_t index) {
  const std::string where = "example " + std::to_string(index + 1) + ": ";
  if (e.subgoals.empty()) {
    throw PromptValidationError(where + "no subgoals");
  }
  if (e.final_ltl.contains(Op::release)) {
    throw PromptValidationError(where + "formula uses an internal operator");
  }
  for (const auto &token : token_set(e.final_ltl)) {
    const bool is_op = std::find(kOperators.begin(), kOperators.end(), token) != kOperators.end();
    const auto &allowed = is_op ? h.allowed_operators : h.allowed_aps;
    if (std::find(allowed.begin(), allowed.end(), token) == allowed.end()) {
      throw PromptValidationError(where + (is_op ? "operator '" : "atomic proposition '") + token +
                                  "' is not allowed by the header");
    }
  }
}

} // namespace

PromptSetError::PromptSetError(const std::string &message, std::size_t line)
    : std::runtime_error("prompt set line " + std::to_string(line) + ": " + message), line_(line) {}

void validate(const PromptBundle &bundle) {
  validate_header(bundle.header);
  if (bundle.examples.size() != bundle.shot_count) {
    throw PromptValidationError("expected " + std::to_string(bundle.shot_count) + " examples, found " +
                                std::to_string(bundle.examples.size()));
  }
  for (std::size_t i = 0; i < bundle.examples.size(); ++i) {
    validate_example(bundle.header, bundle.examples[i], i);
  }
}

std::string render_example(const PromptHeader &header, const CoTExample &example) {
  std::string out;
  out += "Specification: " + single_line(example.specification) + "\n";
  out += "SRL: " + single_line(example.srl_annotation) + "\n";
  for (std::size_t i = 0; i < example.subgoals.size(); ++i) {
    const std::string n = std::to_string(i + 1);
    out += "Subgoal " + n + ": " + single_line(example.subgoals[i].statement) + "\n";
    out += "Answer " + n + ": " + single_line(example.subgoals[i].answer) + "\n";
  }
  out += std::string(kLtlMarker) + " " + print(example.final_ltl, header.output_syntax) + "\n";
  out += std::string(kFinishMarker) + "\n";
  return out;
}

std::string render(const PromptBundle &bundle) {
  validate(bundle);
  const PromptHeader &h = bundle.header;
  std::string out = trim(normalize_newlines(h.instruction_text)) + "\n";
  out += "Allowed atomic propositions: " + join(h.allowed_aps, ", ") + "\n";
  out += "Allowed operators: " + join(h.allowed_operators, ", ") + "\n";
  out += "Output syntax: " + to_string(h.output_syntax) + "\n";
  for (const auto &example : bundle.examples) {
    out += "\n" + render_example(h, example);
  }
  out += "\nSpecification: " + single_line(bundle.test_specification) + "\n";
  if (bundle.test_srl) {
    out += "SRL: " + single_line(*bundle.test_srl) + "\n";
  }
  return out;
}

std::string render_reprompt(const PromptBundle &bundle, std::string_view failed_output,
                            std::string_view error_message) {
  std::string out = render(bundle);
  out += "\nThe previous answer was rejected by the checker.\n";
  std::string failed = normalize_newlines(failed_output);
  while (!failed.empty() && failed.back() == '\n') {
    failed.pop_back();
  }
  if (!trim(failed).empty()) {
    out += "Previous output:\n" + failed + "\n";
  }
  out += "Error: " + single_line(error_message) + "\n";
  out += "Fix the error and answer the specification again, ending with an LTL line and FINISH.\n";
  return out;
}

Formula extract_formula(std::string_view completion, Syntax syntax) {
  std::string text = normalize_newlines(completion);
  if (auto cut = text.find(kFinishMarker); cut != std::string::npos) {
    text.erase(cut);
  }
  std::optional<std::string> last;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const std::string t = trim(line);
    if (starts_with_ci(t, kLtlMarker)) {
      last = t;
    }
  }
  if (!last) {
    throw ExtractionError("no line starting with 'LTL:' in the model output");
  }
  const std::string body = trim(std::string_view(*last).substr(kLtlMarker.size()));
  try {
    return parse(body, syntax);
  } catch (const ParseError &e) {
    throw ParseError(std::string(e.what()) + " in line \"" + *last + "\"", e.offset(), e.expected());
  }
}

/* Line-oriented format:
 *   [header] with keys syntax, aps, operators and one or more instruction lines
 *   [example] with keys spec, srl, then subgoal/answer pairs, then ltl
 * Blank lines and lines starting with '#' are ignored.
 */
PromptBundle parse_prompt_set(std::string_view text) {
  PromptBundle bundle;
  std::string section;
  std::vector<std::string> instruction;
  bool have_syntax = false;

  struct Draft {
    std::string spec, srl;
    std::vector<Subgoal> subgoals;
    std::optional<Formula> ltl;
    std::size_t line = 0;
  };
  std::optional<Draft> draft;
  auto finish_example = [&](std::size_t line_no) {
    if (!draft) {
      return;
    }
    if (draft->spec.empty() || !draft->ltl) {
      throw PromptSetError("example needs 'spec' and 'ltl'", draft->line);
    }
    if (!draft->subgoals.empty() && draft->subgoals.back().answer.empty()) {
      throw PromptSetError("subgoal without an answer", line_no);
    }
    bundle.examples.push_back({draft->spec, draft->srl, draft->subgoals, *draft->ltl});
    draft.reset();
  };

  std::istringstream in(normalize_newlines(text));
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (line == "[header]" || line == "[example]") {
      finish_example(line_no);
      section = line.substr(1, line.size() - 2);
      if (section == "example") {
        if (!have_syntax) {
          throw PromptSetError("[header] with 'syntax' must precede examples", line_no);
        }
        draft = Draft{};
        draft->line = line_no;
      }
      continue;
    }
    if (line.front() == '[') {
      throw PromptSetError("unknown section " + line, line_no);
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos || section.empty()) {
      throw PromptSetError("expected 'key: value' inside a section", line_no);
    }
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (section == "header") {
      if (key == "instruction") {
        instruction.push_back(value);
      } else if (key == "aps") {
        bundle.header.allowed_aps = split_list(value);
      } else if (key == "operators") {
        bundle.header.allowed_operators = split_list(value);
      } else if (key == "syntax") {
        try {
          bundle.header.output_syntax = syntax_from_string(value);
        } catch (const std::invalid_argument &) {
          throw PromptSetError("unknown syntax '" + value + "'", line_no);
        }
        have_syntax = true;
      } else if (key == "shots") {
        bundle.shot_count = std::stoul(value);
      } else {
        throw PromptSetError("unknown header key '" + key + "'", line_no);
      }
      continue;
    }
    if (key == "spec") {
      draft->spec = value;
    } else if (key == "srl") {
      draft->srl = value;
    } else if (key == "subgoal") {
      if (!draft->subgoals.empty() && draft->subgoals.back().answer.empty()) {
        throw PromptSetError("subgoal without an answer", line_no);
      }
      draft->subgoals.push_back({value, ""});
    } else if (key == "answer") {
      if (draft->subgoals.empty() || !draft->subgoals.back().answer.empty()) {
        throw PromptSetError("answer without a subgoal", line_no);
      }
      draft->subgoals.back().answer = value;
    } else if (key == "ltl") {
      try {
        draft->ltl = parse(value, bundle.header.output_syntax);
      } catch (const ParseError &e) {
        throw PromptSetError(e.what(), line_no);
      }
    } else {
      throw PromptSetError("unknown example key '" + key + "'", line_no);
    }
  }
  finish_example(line_no);
  bundle.header.instruction_text = join(instruction, "\n");
  try {
    validate(bundle);
  } catch (const PromptValidationError &e) {
    throw PromptSetError(e.what(), line_no);
  }
  return bundle;
}

PromptBundle load_prompt_set(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open prompt set '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_prompt_set(buf.str());
}

} // namespace nl2ltl
