#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nl2ltl {

enum class Role { agent, theme, destination, source, path, location, verb, temporal_marker, negation_marker };

std::string to_string(Role role);
Role role_from_string(std::string_view name);

struct RoleSpan {
  std::string text;
  Role role;
  std::size_t start;
  std::size_t end;
  // Index into RoleLexicon::verbs for verb spans.
  std::optional<std::size_t> lexicon_entry;
  // Verb spans whose trigger is also a negation marker ("avoid").
  bool negated = false;

  friend bool operator==(const RoleSpan &, const RoleSpan &) = default;
};

struct VerbFrame {
  std::string lemma;
  // Role of a direct object noun phrase; nullopt for verbs taking none.
  std::optional<Role> object_role;
};

/* Scoped stand-in for VerbNet frames: verb lemmas with the role of their
 * direct object, prepositions with the role of the phrase they head, and
 * marker word lists. All words are stored lowercase; lookups lowercase the
 * input first.
 */
struct RoleLexicon {
  std::vector<VerbFrame> verbs;
  std::map<std::string, Role> prepositions;
  std::vector<std::string> temporal_markers;
  std::vector<std::string> negation_markers;
  // Words skipped right after a verb ("pick up").
  std::vector<std::string> particles;
  // Words allowed between a clause subject and its verb ("should").
  std::vector<std::string> auxiliaries;

  std::optional<std::size_t> find_verb(std::string_view lemma) const;
};

class LexiconError : public std::runtime_error {
public:
  LexiconError(const std::string &message, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class OverlapError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

RoleLexicon parse_lexicon(std::string_view text);
RoleLexicon load_lexicon(const std::string &path);

// Candidate lemmas for a word by -ing / -ed / -s stripping, most literal first.
std::vector<std::string> lemma_candidates(std::string_view word);

// Deterministic lexicon-driven annotation; unmatched words get no span.
std::vector<RoleSpan> tag(std::string_view instruction, const RoleLexicon &lexicon);

// "Enter [verb] blue room [destination] via red room [path]"
std::string render_annotation(std::string_view instruction, const std::vector<RoleSpan> &spans);

} // namespace nl2ltl
