#include "nl2ltl/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <future>

#include "nl2ltl/automaton.hpp"

namespace nl2ltl {

using json = nlohmann::json;

std::string to_string(Decision decision) {
  switch (decision) {
  case Decision::majority:
    return "majority";
  case Decision::confidence_fallback:
    return "confidence_fallback";
  case Decision::error:
    return "error";
  }
  return "error";
}

void PipelineConfig::validate() const {
  if (k == 0 || k % 2 == 0) {
    throw std::invalid_argument("k must be a positive odd number");
  }
  if (max_retries_per_run < 1) {
    throw std::invalid_argument("max_retries_per_run must be at least 1");
  }
  generation.validate();
}

bool AllRunsFailedError::gateway_only() const {
  const auto &runs = result().runs;
  return !runs.empty() &&
         std::all_of(runs.begin(), runs.end(), [](const TranslationRun &r) { return r.gateway_error.has_value(); });
}

std::map<std::string, double> confidence_scores(const std::vector<Formula> &formulas) {
  std::vector<std::set<std::string>> tokens;
  tokens.reserve(formulas.size());
  for (const auto &f : formulas) {
    tokens.push_back(token_set(f));
  }
  std::map<std::string, double> scores;
  const double n = static_cast<double>(formulas.size());
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    double sum = 0;
    for (const auto &t : tokens[i]) {
      const auto holders = std::count_if(tokens.begin(), tokens.end(), [&](const auto &ts) { return ts.count(t) > 0; });
      sum += static_cast<double>(holders) / n;
    }
    scores[print(formulas[i])] = tokens[i].empty() ? 0.0 : sum / static_cast<double>(tokens[i].size());
  }
  return scores;
}

VoteOutcome vote(const std::vector<Formula> &formulas, const PipelineConfig &cfg) {
  if (formulas.empty()) {
    throw std::invalid_argument("vote needs at least one formula");
  }
  // Equivalence classes as indices of members, in order of first appearance.
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto &c) { return equiv(formulas[c.front()], formulas[i]); });
    if (it == classes.end()) {
      classes.push_back({i});
    } else {
      it->push_back(i);
    }
  }
  auto scores = confidence_scores(formulas);
  const std::size_t electorate = std::max(cfg.k, formulas.size());
  for (const auto &c : classes) {
    if (2 * c.size() > electorate) {
      return {formulas[c.front()], Decision::majority, std::move(scores)};
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < formulas.size(); ++i) {
    const std::string a = print(formulas[i]);
    const std::string b = print(formulas[best]);
    if (scores[a] > scores[b] || (scores[a] == scores[b] && a < b)) {
      best = i;
    }
  }
  return {formulas[best], Decision::confidence_fallback, std::move(scores)};
}

std::optional<std::string> check_formula(const Formula &f) {
  try {
    if (!is_satisfiable(f).satisfiable) {
      return "automaton check failed: the formula " + print(f) + " is unsatisfiable (no accepting run)";
    }
  } catch (const ResourceLimitError &e) {
    return std::string("automaton check failed: ") + e.what();
  }
  return std::nullopt;
}

Translator::Translator(std::shared_ptr<Backend> backend, PromptBundle bundle_template,
                       std::shared_ptr<const RoleLexicon> lexicon)
    : backend_(std::move(backend)), template_(std::move(bundle_template)), lexicon_(std::move(lexicon)) {
  if (!backend_) {
    throw std::invalid_argument("translator needs a backend");
  }
  if (!template_.test_specification.empty()) {
    throw std::invalid_argument("prompt template already carries a test specification");
  }
  validate(template_);
}

PromptBundle Translator::bundle_for(const std::string &specification, const PipelineConfig &cfg) const {
  PromptBundle bundle = template_;
  bundle.test_specification = specification;
  if (cfg.inject_test_srl) {
    if (!lexicon_) {
      throw std::invalid_argument("inject_test_srl needs a role lexicon");
    }
    bundle.test_srl = render_annotation(specification, tag(specification, *lexicon_));
  }
  return bundle;
}

std::string Translator::initial_prompt(const std::string &specification, const PipelineConfig &cfg) const {
  return render(bundle_for(specification, cfg));
}

TranslationRun Translator::run_once(const std::string &specification, const PipelineConfig &cfg,
                                    std::size_t run) const {
  const PromptBundle bundle = bundle_for(specification, cfg);
  const Syntax syntax = bundle.header.output_syntax;
  TranslationRun out;
  std::string prompt = render(bundle);
  for (std::size_t attempt = 0; attempt < cfg.max_retries_per_run; ++attempt) {
    Completion completion;
    try {
      completion = backend_->complete(prompt, cfg.generation, {run, attempt});
    } catch (const GatewayError &e) {
      out.attempts.push_back({prompt, "", std::string("gateway error: ") + e.what()});
      out.gateway_error = e.what();
      break;
    }
    std::optional<std::string> error;
    std::optional<Formula> formula;
    try {
      formula = extract_formula(completion.text, syntax);
      error = check_formula(*formula);
    } catch (const ExtractionError &e) {
      error = e.what();
    } catch (const ParseError &e) {
      error = e.what();
    }
    out.attempts.push_back({prompt, completion.text, error.value_or("ok")});
    if (!error) {
      out.final_formula = formula;
      out.failed = false;
      break;
    }
    prompt = render_reprompt(bundle, completion.text, *error);
  }
  out.retries_used = out.attempts.empty() ? 0 : out.attempts.size() - 1;
  return out;
}

TranslationResult Translator::translate(const std::string &specification, const PipelineConfig &cfg) const {
  cfg.validate();
  if (specification.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw std::invalid_argument("specification must not be empty");
  }
  std::vector<std::future<TranslationRun>> pending;
  for (std::size_t run = 0; run < cfg.k; ++run) {
    pending.push_back(std::async(std::launch::async, [this, &specification, &cfg, run] {
      return run_once(specification, cfg, run);
    }));
  }
  TranslationResult result;
  std::vector<Formula> formulas;
  for (auto &f : pending) {
    result.runs.push_back(f.get());
    const TranslationRun &run = result.runs.back();
    for (const auto &a : run.attempts) {
      if (a.checker_outcome.rfind("gateway error: ", 0) != 0) {
        result.reasoning_chains.push_back(a.completion);
      }
    }
    if (run.final_formula) {
      formulas.push_back(*run.final_formula);
    }
  }
  if (formulas.empty()) {
    result.decision = Decision::error;
    throw AllRunsFailedError("all " + std::to_string(cfg.k) + " runs failed to produce a valid formula",
                             std::move(result));
  }
  VoteOutcome outcome = vote(formulas, cfg);
  result.confidence_scores = std::move(outcome.scores);
  if (outcome.decision != Decision::majority && cfg.on_no_majority == NoMajorityPolicy::error) {
    result.decision = Decision::error;
    throw NoMajorityError("no equivalence class holds a majority of the " + std::to_string(cfg.k) + " runs",
                          std::move(result));
  }
  if (auto error = check_formula(outcome.formula)) {
    throw std::logic_error("internal error: selected formula fails the gate: " + *error);
  }
  result.final_formula = outcome.formula;
  result.decision = outcome.decision;
  return result;
}

TranslationResult translate(const std::string &specification, const PromptBundle &bundle_template,
                            const PipelineConfig &cfg, std::shared_ptr<Backend> backend,
                            std::shared_ptr<const RoleLexicon> lexicon) {
  return Translator(std::move(backend), bundle_template, std::move(lexicon)).translate(specification, cfg);
}

void write_report(std::ostream &out, const std::string &specification, const TranslationResult &result,
                  const std::optional<std::string> &error) {
  json head = {{"schema_version", kReportSchemaVersion},
               {"type", "result"},
               {"specification", specification},
               {"decision", to_string(result.decision)},
               {"confidence_scores", result.confidence_scores},
               {"runs", result.runs.size()}};
  if (result.final_formula) {
    head["final_infix"] = print(*result.final_formula, Syntax::infix);
    head["final_prefix"] = print(*result.final_formula, Syntax::prefix);
  } else {
    head["final_infix"] = nullptr;
    head["final_prefix"] = nullptr;
  }
  if (error) {
    head["error"] = *error;
  }
  out << head.dump() << '\n';
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const TranslationRun &run = result.runs[r];
    for (std::size_t a = 0; a < run.attempts.size(); ++a) {
      const Attempt &at = run.attempts[a];
      json line = {{"schema_version", kReportSchemaVersion},
                   {"type", "attempt"},
                   {"run", r},
                   {"attempt", a},
                   {"prompt_sha256", sha256_hex(at.prompt)},
                   {"completion", at.completion},
                   {"checker_outcome", at.checker_outcome}};
      out << line.dump() << '\n';
    }
  }
}

} // namespace nl2ltl
