#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nl2ltl/formula.hpp"
#include "nl2ltl/pipeline.hpp"

namespace nl2ltl {

struct DatasetRecord {
  std::string instruction;
  Formula gold_formula;
  // Surface phrase -> canonical AP name.
  std::map<std::string, std::string> grounding;
  std::string structure_id;
  std::size_t line = 0;
};

class DatasetError : public std::runtime_error {
public:
  DatasetError(const std::string &message, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/* One JSON object per line:
 *   {"instruction": str, "gold": str, "syntax": "infix"|"prefix"|"auto",
 *    "grounding": {phrase: ap}, "aps": [ap...], "structure": str}
 * Only instruction and gold are required; structure defaults to the gold
 * formula's atom-free shape.
 */
std::vector<DatasetRecord> parse_dataset(std::string_view text);
std::vector<DatasetRecord> load_dataset(const std::string &path);

struct DatasetStats {
  std::size_t records = 0;
  std::size_t distinct_structures = 0;
  std::size_t distinct_formulas = 0;
  std::size_t ap_count = 0;
};

DatasetStats dataset_stats(const std::vector<DatasetRecord> &records);
std::string format_stats(const DatasetStats &stats);

// Renames atoms that name a grounding phrase (case-insensitive, spaces and
// hyphens read as underscores) to the phrase's AP.
Formula apply_grounding(const Formula &f, const std::map<std::string, std::string> &grounding);

struct EvalFailure {
  std::size_t record = 0;
  std::size_t repetition = 0;
  std::string instruction;
  std::string gold;
  std::optional<std::string> produced;
  std::optional<std::string> error;
};

struct EvalReport {
  std::size_t n_records = 0;
  std::size_t repetitions = 0;
  double accuracy_semantic = 0;
  double accuracy_exact = 0;
  // Population standard deviation of the per-repetition semantic accuracy.
  double stddev = 0;
  std::vector<double> per_repetition;
  std::map<std::string, double> per_structure;
  std::map<std::string, std::size_t> structure_sizes;
  std::vector<EvalFailure> failures;
};

struct EvalOptions {
  std::size_t repetitions = 3;
  // Records translated concurrently.
  std::size_t workers = 2;
  std::shared_ptr<const RoleLexicon> lexicon;
};

EvalReport evaluate(const std::vector<DatasetRecord> &dataset, const PromptBundle &bundle, const PipelineConfig &cfg,
                    std::shared_ptr<Backend> backend, const EvalOptions &options = {});

std::string report_json(const EvalReport &report);
std::string report_table(const EvalReport &report);

} // namespace nl2ltl
