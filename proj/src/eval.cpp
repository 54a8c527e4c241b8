#include "nl2ltl/eval.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "nl2ltl/automaton.hpp"

namespace nl2ltl {

using json = nlohmann::json;

namespace {

std::string phrase_key(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '-') {
      c = '_';
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

struct Outcome {
  bool semantic = false;
  bool exact = false;
  std::optional<EvalFailure> failure;
};

Outcome score(const Translator &translator, const DatasetRecord &rec, const PipelineConfig &cfg) {
  Outcome o;
  EvalFailure failure;
  failure.instruction = rec.instruction;
  failure.gold = print(rec.gold_formula);
  try {
    const TranslationResult result = translator.translate(rec.instruction, cfg);
    const Formula produced = apply_grounding(*result.final_formula, rec.grounding);
    failure.produced = print(produced);
    o.exact = *failure.produced == failure.gold;
    o.semantic = o.exact || equiv(produced, rec.gold_formula);
  } catch (const std::exception &e) {
    failure.error = e.what();
  }
  if (!o.semantic) {
    o.failure = std::move(failure);
  }
  return o;
}

} // namespace

DatasetError::DatasetError(const std::string &message, std::size_t line)
    : std::runtime_error("dataset line " + std::to_string(line) + ": " + message), line_(line) {}

std::vector<DatasetRecord> parse_dataset(std::string_view text) {
  std::vector<DatasetRecord> out;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      throw DatasetError(std::string("not a JSON object: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("instruction") || !j["instruction"].is_string() || !j.contains("gold") ||
        !j["gold"].is_string()) {
      throw DatasetError("record needs string fields 'instruction' and 'gold'", line_no);
    }
    try {
      const Syntax syntax = syntax_from_string(j.value("syntax", std::string("auto")));
      Formula gold = parse(j["gold"].get<std::string>(), syntax);
      std::map<std::string, std::string> grounding;
      std::set<std::string> universe;
      if (j.contains("grounding")) {
        grounding = j["grounding"].get<std::map<std::string, std::string>>();
        for (const auto &[phrase, ap] : grounding) {
          universe.insert(ap);
        }
      }
      if (j.contains("aps")) {
        for (const auto &ap : j["aps"].get<std::vector<std::string>>()) {
          universe.insert(ap);
        }
      }
      if (!universe.empty()) {
        for (const auto &atom : gold.atoms()) {
          if (!universe.count(atom)) {
            throw DatasetError("gold atom '" + atom + "' is neither grounded nor declared", line_no);
          }
        }
      }
      std::string structure = j.contains("structure") ? j["structure"].get<std::string>() : structure_of(gold);
      out.push_back({j["instruction"].get<std::string>(), std::move(gold), std::move(grounding), std::move(structure),
                     line_no});
    } catch (const ParseError &e) {
      throw DatasetError(std::string("gold formula: ") + e.what(), line_no);
    } catch (const json::exception &e) {
      throw DatasetError(e.what(), line_no);
    } catch (const std::invalid_argument &e) {
      throw DatasetError(e.what(), line_no);
    }
  }
  return out;
}

std::vector<DatasetRecord> load_dataset(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw DatasetError("cannot open dataset '" + path + "'", 0);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

DatasetStats dataset_stats(const std::vector<DatasetRecord> &records) {
  std::set<std::string> structures, formulas, aps;
  for (const auto &r : records) {
    structures.insert(r.structure_id);
    formulas.insert(print(r.gold_formula));
    for (const auto &a : r.gold_formula.atoms()) {
      aps.insert(a);
    }
  }
  return {records.size(), structures.size(), formulas.size(), aps.size()};
}

std::string format_stats(const DatasetStats &s) {
  std::ostringstream out;
  out << "records:             " << s.records << "\n"
      << "distinct structures: " << s.distinct_structures << "\n"
      << "distinct formulas:   " << s.distinct_formulas << "\n"
      << "atomic propositions: " << s.ap_count << "\n";
  return out.str();
}

Formula apply_grounding(const Formula &f, const std::map<std::string, std::string> &grounding) {
  if (grounding.empty()) {
    return f;
  }
  std::map<std::string, std::string> keyed;
  for (const auto &[phrase, ap] : grounding) {
    keyed[phrase_key(phrase)] = ap;
  }
  return rename_atoms(f, [&](const std::string &atom) {
    auto it = keyed.find(phrase_key(atom));
    return it == keyed.end() ? atom : it->second;
  });
}

EvalReport evaluate(const std::vector<DatasetRecord> &dataset, const PromptBundle &bundle, const PipelineConfig &cfg,
                    std::shared_ptr<Backend> backend, const EvalOptions &options) {
  if (options.repetitions < 1) {
    throw std::invalid_argument("repetitions must be at least 1");
  }
  cfg.validate();
  const Translator translator(std::move(backend), bundle, options.lexicon);
  const std::size_t n = dataset.size();
  const std::size_t workers = std::max<std::size_t>(1, options.workers);

  EvalReport report;
  report.n_records = n;
  report.repetitions = options.repetitions;
  std::map<std::string, std::size_t> structure_hits;
  std::size_t semantic_total = 0, exact_total = 0;

  for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
    std::vector<Outcome> outcomes(n);
    for (std::size_t begin = 0; begin < n; begin += workers) {
      std::vector<std::future<Outcome>> batch;
      for (std::size_t i = begin; i < std::min(n, begin + workers); ++i) {
        batch.push_back(std::async(std::launch::async, [&, i] { return score(translator, dataset[i], cfg); }));
      }
      for (std::size_t i = 0; i < batch.size(); ++i) {
        outcomes[begin + i] = batch[i].get();
      }
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Outcome &o = outcomes[i];
      correct += o.semantic;
      exact_total += o.exact;
      structure_hits[dataset[i].structure_id] += o.semantic;
      if (o.failure) {
        EvalFailure f = *o.failure;
        f.record = i;
        f.repetition = rep;
        report.failures.push_back(std::move(f));
      }
    }
    semantic_total += correct;
    report.per_repetition.push_back(n ? static_cast<double>(correct) / static_cast<double>(n) : 0.0);
  }

  const double trials = static_cast<double>(n * options.repetitions);
  if (n > 0) {
    report.accuracy_semantic = static_cast<double>(semantic_total) / trials;
    report.accuracy_exact = static_cast<double>(exact_total) / trials;
  }
  double var = 0;
  for (double a : report.per_repetition) {
    var += (a - report.accuracy_semantic) * (a - report.accuracy_semantic);
  }
  report.stddev = std::sqrt(var / static_cast<double>(report.per_repetition.size()));
  for (const auto &r : dataset) {
    ++report.structure_sizes[r.structure_id];
  }
  for (const auto &[structure, size] : report.structure_sizes) {
    report.per_structure[structure] =
        static_cast<double>(structure_hits[structure]) / static_cast<double>(size * options.repetitions);
  }
  return report;
}

std::string report_json(const EvalReport &r) {
  json failures = json::array();
  for (const auto &f : r.failures) {
    json j = {{"record", f.record}, {"repetition", f.repetition}, {"instruction", f.instruction}, {"gold", f.gold}};
    j["produced"] = f.produced ? json(*f.produced) : json(nullptr);
    j["error"] = f.error ? json(*f.error) : json(nullptr);
    failures.push_back(std::move(j));
  }
  const json out = {{"schema_version", kReportSchemaVersion},
                    {"type", "evaluation"},
                    {"n_records", r.n_records},
                    {"repetitions", r.repetitions},
                    {"accuracy_semantic", r.accuracy_semantic},
                    {"accuracy_exact", r.accuracy_exact},
                    {"stddev", r.stddev},
                    {"per_repetition", r.per_repetition},
                    {"per_structure", r.per_structure},
                    {"failures", failures}};
  return out.dump();
}

std::string report_table(const EvalReport &r) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "records %zu, repetitions %zu\n", r.n_records, r.repetitions);
  out += buf;
  std::snprintf(buf, sizeof buf, "semantic accuracy  %6.2f %% +- %.2f\n", 100 * r.accuracy_semantic, 100 * r.stddev);
  out += buf;
  std::snprintf(buf, sizeof buf, "exact accuracy     %6.2f %%\n\n", 100 * r.accuracy_exact);
  out += buf;
  std::size_t width = 9;
  for (const auto &[s, a] : r.per_structure) {
    width = std::max(width, s.size());
  }
  std::snprintf(buf, sizeof buf, "%-*s  %7s  %8s\n", static_cast<int>(width), "structure", "records", "accuracy");
  out += buf;
  for (const auto &[s, a] : r.per_structure) {
    std::snprintf(buf, sizeof buf, "%-*s  %7zu  %7.2f%%\n", static_cast<int>(width), s.c_str(),
                  r.structure_sizes.at(s), 100 * a);
    out += buf;
  }
  if (!r.failures.empty()) {
    out += "\nfailures:\n";
    for (const auto &f : r.failures) {
      out += "  [" + std::to_string(f.record) + "/" + std::to_string(f.repetition) + "] " + f.instruction +
             "\n    gold:     " + f.gold + "\n    produced: " + (f.produced ? *f.produced : "-") + "\n";
      if (f.error) {
        out += "    error:    " + *f.error + "\n";
      }
    }
  }
  return out;
}

} // namespace nl2ltl
