#include "nl2ltl/srl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nl2ltl {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 9> kRoleNames = {{
    {Role::agent, "agent"},
    {Role::theme, "theme"},
    {Role::destination, "destination"},
    {Role::source, "source"},
    {Role::path, "path"},
    {Role::location, "location"},
    {Role::verb, "verb"},
    {Role::temporal_marker, "temporal_marker"},
    {Role::negation_marker, "negation_marker"},
}};

// Coordinators that end a noun phrase and start a new clause.
constexpr std::array<std::string_view, 3> kClauseBreaks = {"and", "but", "so"};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

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

bool contains(const std::vector<std::string> &words, std::string_view w) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

struct Word {
  std::string lower;
  std::size_t start;
  std::size_t end;
  bool punct;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
}

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (word_char(text[i])) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) {
        ++j;
      }
      out.push_back({lowercase(text.substr(i, j - i)), i, j, false});
      i = j;
    } else {
      out.push_back({std::string(1, text[i]), i, i + 1, true});
      ++i;
    }
  }
  return out;
}

std::vector<std::string> split_phrase(const std::string &phrase) {
  std::vector<std::string> out;
  std::istringstream in(phrase);
  for (std::string w; in >> w;) {
    out.push_back(w);
  }
  return out;
}

class Tagger {
public:
  Tagger(std::string_view text, const RoleLexicon &lexicon)
      : text_(text), lex_(lexicon), words_(split_words(text)) {}

  std::vector<RoleSpan> run() {
    bool clause_start = true;
    std::size_t i = 0;
    while (i < words_.size()) {
      const Word &w = words_[i];
      if (w.punct || contains_break(w.lower)) {
        clause_start = true;
        ++i;
        continue;
      }
      if (std::size_t len = match_phrase(lex_.negation_markers, i)) {
        if (auto verb = verb_at(i); verb && len == 1) {
          i = tag_verb(i, *verb, true);
        } else {
          emit(i, i + len, Role::negation_marker);
          i += len;
          i = tag_phrase(i, i, Role::theme);
        }
        clause_start = false;
        continue;
      }
      if (std::size_t len = match_phrase(lex_.temporal_markers, i)) {
        emit(i, i + len, Role::temporal_marker);
        i += len;
        clause_start = true;
        continue;
      }
      if (auto prep = lex_.prepositions.find(w.lower); prep != lex_.prepositions.end()) {
        i = tag_phrase(i, i + 1, prep->second);
        clause_start = false;
        continue;
      }
      if (auto verb = verb_at(i)) {
        i = tag_verb(i, *verb, false);
        clause_start = false;
        continue;
      }
      if (clause_start) {
        i = tag_agent(i);
        clause_start = false;
        continue;
      }
      ++i;
    }
    return spans_;
  }

private:
  bool contains_break(std::string_view w) const {
    return std::find(kClauseBreaks.begin(), kClauseBreaks.end(), w) != kClauseBreaks.end();
  }

  std::optional<std::size_t> verb_at(std::size_t i) const {
    if (words_[i].punct) {
      return std::nullopt;
    }
    for (const auto &lemma : lemma_candidates(words_[i].lower)) {
      if (auto entry = lex_.find_verb(lemma)) {
        return entry;
      }
    }
    return std::nullopt;
  }

  // Number of words of the longest phrase in `phrases` starting at word i.
  std::size_t match_phrase(const std::vector<std::string> &phrases, std::size_t i) const {
    std::size_t best = 0;
    for (const auto &phrase : phrases) {
      const auto parts = split_phrase(phrase);
      if (parts.empty() || i + parts.size() > words_.size() || parts.size() <= best) {
        continue;
      }
      bool ok = true;
      for (std::size_t k = 0; k < parts.size() && ok; ++k) {
        ok = !words_[i + k].punct && words_[i + k].lower == parts[k];
      }
      if (ok) {
        best = parts.size();
      }
    }
    return best;
  }

  bool is_boundary(std::size_t i) const {
    const Word &w = words_[i];
    return w.punct || contains_break(w.lower) || lex_.prepositions.count(w.lower) ||
           match_phrase(lex_.temporal_markers, i) || match_phrase(lex_.negation_markers, i) ||
           contains(lex_.auxiliaries, w.lower) || verb_at(i).has_value();
  }

  std::size_t phrase_end(std::size_t from) const {
    std::size_t j = from;
    while (j < words_.size() && !is_boundary(j)) {
      ++j;
    }
    return j;
  }

  void emit(std::size_t first, std::size_t last, Role role, std::optional<std::size_t> entry = std::nullopt,
            bool negated = false) {
    const std::size_t start = words_[first].start;
    const std::size_t end = words_[last - 1].end;
    spans_.push_back({std::string(text_.substr(start, end - start)), role, start, end, entry, negated});
  }

  // Span over words [head, end of the noun phrase starting at `body`), if the
  // noun phrase is non-empty. Returns the index after the span.
  std::size_t tag_phrase(std::size_t head, std::size_t body, Role role) {
    const std::size_t end = phrase_end(body);
    if (end == body) {
      return body;
    }
    emit(head, end, role);
    return end;
  }

  std::size_t tag_verb(std::size_t i, std::size_t entry, bool negated) {
    emit(i, i + 1, Role::verb, entry, negated);
    std::size_t j = i + 1;
    while (j < words_.size() && contains(lex_.particles, words_[j].lower)) {
      ++j;
    }
    if (const auto &role = lex_.verbs[entry].object_role) {
      return tag_phrase(j, j, *role);
    }
    return j;
  }

  // A clause-initial noun phrase followed by a verb, possibly with auxiliaries
  // and temporal markers in between.
  std::size_t tag_agent(std::size_t i) {
    const std::size_t end = phrase_end(i);
    std::size_t j = end;
    while (j < words_.size()) {
      if (contains(lex_.auxiliaries, words_[j].lower)) {
        ++j;
      } else if (std::size_t len = match_phrase(lex_.temporal_markers, j)) {
        j += len;
      } else {
        break;
      }
    }
    if (end > i && j < words_.size() && verb_at(j)) {
      emit(i, end, Role::agent);
      return end;
    }
    return i + 1;
  }

  std::string_view text_;
  const RoleLexicon &lex_;
  std::vector<Word> words_;
  std::vector<RoleSpan> spans_;
};

} // namespace

std::string to_string(Role role) {
  for (const auto &[r, name] : kRoleNames) {
    if (r == role) {
      return std::string(name);
    }
  }
  return "unknown";
}

Role role_from_string(std::string_view name) {
  const std::string lower = lowercase(name);
  for (const auto &[r, n] : kRoleNames) {
    if (n == lower) {
      return r;
    }
  }
  throw std::invalid_argument("unknown role '" + std::string(name) + "'");
}

std::optional<std::size_t> RoleLexicon::find_verb(std::string_view lemma) const {
  for (std::size_t i = 0; i < verbs.size(); ++i) {
    if (verbs[i].lemma == lemma) {
      return i;
    }
  }
  return std::nullopt;
}

LexiconError::LexiconError(const std::string &message, std::size_t line)
    : std::runtime_error("lexicon line " + std::to_string(line) + ": " + message), line_(line) {}

RoleLexicon parse_lexicon(std::string_view text) {
  RoleLexicon lex;
  std::string section;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string line = lowercase(trim(raw));
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw LexiconError("malformed section header", line_no);
      }
      section = line.substr(1, line.size() - 2);
      static const std::vector<std::string> known = {"verbs",    "prepositions", "temporal",
                                                     "negation", "particles",    "auxiliaries"};
      if (!contains(known, section)) {
        throw LexiconError("unknown section [" + section + "]", line_no);
      }
      continue;
    }
    const auto fields = split_phrase(line);
    try {
      if (section.empty()) {
        throw LexiconError("entry outside of a section", line_no);
      } else if (section == "verbs") {
        if (fields.size() != 2) {
          throw LexiconError("expected '<lemma> <object-role|->'", line_no);
        }
        if (lex.find_verb(fields[0])) {
          throw LexiconError("duplicate verb '" + fields[0] + "'", line_no);
        }
        std::optional<Role> role;
        if (fields[1] != "-") {
          role = role_from_string(fields[1]);
        }
        lex.verbs.push_back({fields[0], role});
      } else if (section == "prepositions") {
        if (fields.size() != 2) {
          throw LexiconError("expected '<preposition> <role>'", line_no);
        }
        lex.prepositions[fields[0]] = role_from_string(fields[1]);
      } else if (section == "temporal") {
        lex.temporal_markers.push_back(line);
      } else if (section == "negation") {
        lex.negation_markers.push_back(line);
      } else if (section == "particles") {
        lex.particles.push_back(line);
      } else {
        lex.auxiliaries.push_back(line);
      }
    } catch (const std::invalid_argument &e) {
      throw LexiconError(e.what(), line_no);
    }
  }
  return lex;
}

RoleLexicon load_lexicon(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open lexicon file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str());
}

std::vector<std::string> lemma_candidates(std::string_view word) {
  const std::string w = lowercase(word);
  std::vector<std::string> out{w};
  auto add = [&](std::string s) {
    if (s.size() >= 2 && !contains(out, s)) {
      out.push_back(std::move(s));
    }
  };
  auto with_stem = [&](const std::string &stem) {
    add(stem);
    add(stem + "e");
    if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      add(stem.substr(0, stem.size() - 1));
    }
  };
  auto ends_with = [&](std::string_view suffix) {
    return w.size() > suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("ing")) {
    with_stem(w.substr(0, w.size() - 3));
  } else if (ends_with("ed")) {
    with_stem(w.substr(0, w.size() - 2));
  } else if (ends_with("es")) {
    add(w.substr(0, w.size() - 2));
    add(w.substr(0, w.size() - 1));
  } else if (ends_with("s") && !ends_with("ss")) {
    add(w.substr(0, w.size() - 1));
  }
  return out;
}

std::vector<RoleSpan> tag(std::string_view instruction, const RoleLexicon &lexicon) {
  return Tagger(instruction, lexicon).run();
}

std::string render_annotation(std::string_view instruction, const std::vector<RoleSpan> &spans) {
  std::vector<RoleSpan> sorted = spans;
  std::sort(sorted.begin(), sorted.end(), [](const RoleSpan &a, const RoleSpan &b) { return a.start < b.start; });
  std::string out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const RoleSpan &s = sorted[i];
    if (s.start >= s.end || s.end > instruction.size()) {
      throw std::invalid_argument("span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                                  ") is outside the instruction");
    }
    if (i > 0 && s.start < sorted[i - 1].end) {
      throw OverlapError("spans '" + sorted[i - 1].text + "' and '" + s.text + "' overlap");
    }
    out.append(instruction.substr(cursor, s.end - cursor));
    out += " [";
    out += s.negated ? "negation_marker+" + to_string(s.role) : to_string(s.role);
    out += ']';
    cursor = s.end;
  }
  out.append(instruction.substr(cursor));
  return out;
}

} // namespace nl2ltl
