#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nl2ltl/formula.hpp"
#include "nl2ltl/gateway.hpp"
#include "nl2ltl/prompt.hpp"
#include "nl2ltl/srl.hpp"

namespace nl2ltl {

enum class NoMajorityPolicy { confidence_fallback, error };
enum class Decision { majority, confidence_fallback, error };

std::string to_string(Decision decision);

struct PipelineConfig {
  std::size_t k = 3;
  // Model calls allowed per run, the first one included.
  std::size_t max_retries_per_run = 5;
  bool inject_test_srl = false;
  NoMajorityPolicy on_no_majority = NoMajorityPolicy::confidence_fallback;
  GenerationConfig generation;

  void validate() const;
};

struct Attempt {
  std::string prompt;
  std::string completion;
  // "ok" or the checker / gateway error fed back to the model.
  std::string checker_outcome;
};

struct TranslationRun {
  std::vector<Attempt> attempts;
  std::optional<Formula> final_formula;
  std::size_t retries_used = 0;
  bool failed = true;
  // Set when the run stopped on a gateway error.
  std::optional<std::string> gateway_error;
};

struct TranslationResult {
  std::optional<Formula> final_formula;
  std::vector<TranslationRun> runs;
  Decision decision = Decision::error;
  // Keyed by infix rendering.
  std::map<std::string, double> confidence_scores;
  std::vector<std::string> reasoning_chains;
};

class TranslationError : public std::runtime_error {
public:
  TranslationError(const std::string &message, TranslationResult result)
      : std::runtime_error(message), result_(std::move(result)) {}
  const TranslationResult &result() const { return result_; }

private:
  TranslationResult result_;
};

class AllRunsFailedError : public TranslationError {
public:
  using TranslationError::TranslationError;
  // True when every run ended on a gateway error rather than the checker.
  bool gateway_only() const;
};

class NoMajorityError : public TranslationError {
public:
  using TranslationError::TranslationError;
};

struct VoteOutcome {
  Formula formula;
  Decision decision;
  std::map<std::string, double> scores;
};

/* Strict majority over equivalence classes; the majority threshold counts the
 * configured k even when fewer runs succeeded. Without a majority the formula
 * with the highest mean token frequency wins, ties going to the smallest infix
 * rendering.
 */
VoteOutcome vote(const std::vector<Formula> &formulas, const PipelineConfig &cfg);

std::map<std::string, double> confidence_scores(const std::vector<Formula> &formulas);

// Gate applied to every model answer: parse (done by the caller) plus
// satisfiability. Returns the error message to feed back, if any.
std::optional<std::string> check_formula(const Formula &f);

class Translator {
public:
  Translator(std::shared_ptr<Backend> backend, PromptBundle bundle_template,
             std::shared_ptr<const RoleLexicon> lexicon = nullptr);

  TranslationResult translate(const std::string &specification, const PipelineConfig &cfg) const;
  // Prompt of the first attempt of every run.
  std::string initial_prompt(const std::string &specification, const PipelineConfig &cfg) const;

private:
  TranslationRun run_once(const std::string &specification, const PipelineConfig &cfg, std::size_t run) const;
  PromptBundle bundle_for(const std::string &specification, const PipelineConfig &cfg) const;

  std::shared_ptr<Backend> backend_;
  PromptBundle template_;
  std::shared_ptr<const RoleLexicon> lexicon_;
};

TranslationResult translate(const std::string &specification, const PromptBundle &bundle_template,
                            const PipelineConfig &cfg, std::shared_ptr<Backend> backend,
                            std::shared_ptr<const RoleLexicon> lexicon = nullptr);

inline constexpr int kReportSchemaVersion = 1;

// JSON lines: one "result" record followed by one "attempt" record per attempt.
void write_report(std::ostream &out, const std::string &specification, const TranslationResult &result,
                  const std::optional<std::string> &error = std::nullopt);

} // namespace nl2ltl
