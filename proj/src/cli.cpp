#include "nl2ltl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nl2ltl/automaton.hpp"
#include "nl2ltl/eval.hpp"
#include "nl2ltl/pipeline.hpp"
#include "nl2ltl/planner.hpp"

namespace nl2ltl::cli {

using json = nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Answers attempt i with reply i of the run's script, or of the shared script
// when the run has none; the last reply repeats.
class MockBackend : public Backend {
public:
  using Script = std::vector<std::string>;
  MockBackend(Script shared, std::map<std::size_t, Script> per_run = {})
      : shared_(std::move(shared)), per_run_(std::move(per_run)) {}
  Completion complete(const std::string &, const GenerationConfig &, const CallContext &context) override {
    auto it = per_run_.find(context.run);
    const Script &script = it == per_run_.end() ? shared_ : it->second;
    if (script.empty()) {
      throw ProviderError("mock backend has no reply for run " + std::to_string(context.run + 1), 0);
    }
    Completion c;
    c.text = script[std::min(context.attempt, script.size() - 1)];
    return c;
  }

private:
  Script shared_;
  std::map<std::size_t, Script> per_run_;
};

struct Options {
  std::string format = "text";
  bool quiet = false;
  std::string syntax = "auto";

  std::string backend = "replay";
  std::string endpoint;
  std::string replay_store;
  std::string record_store;
  std::vector<std::string> mock_replies;
  std::string mock_file;

  std::string model = GenerationConfig{}.model_name;
  double temperature = GenerationConfig{}.temperature;
  int max_tokens = GenerationConfig{}.max_new_tokens;
  int timeout_ms = static_cast<int>(GenerationConfig{}.request_timeout.count());
  std::size_t k = PipelineConfig{}.k;
  std::size_t retries = PipelineConfig{}.max_retries_per_run;
  std::string on_no_majority = "fallback";
  bool inject_srl = false;

  std::string prompt_set = "drone";
  std::string lexicon = "default";
  std::string dataset;
  std::string world;
  std::size_t repetitions = 3;
  std::size_t workers = 2;
  bool stats_only = false;
  bool dump_automaton = false;
  bool print_prompt = false;

  std::vector<std::string> positional;
  std::string completion;
  std::string from_tsv;
};

std::string data_dir() {
  if (const char *env = std::getenv("NL2LTL_DATA_DIR")) {
    return env;
  }
  return NL2LTL_DATA_DIR;
}

// Bare names resolve inside the data directory: "drone" -> prompts/drone.prompt.
std::string resolve(const std::string &value, const std::string &subdir, const std::string &extension) {
  std::string path = value;
  if (value.find('/') == std::string::npos && !std::filesystem::exists(value)) {
    path = data_dir() + "/" + subdir + "/" + value + extension;
  }
  if (!std::filesystem::is_regular_file(path)) {
    throw UsageError("cannot find '" + value + "'");
  }
  return path;
}

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/* Mock file: replies separated by "---" lines. A "=== run <n>" line starts
 * the script of run n (1-based); replies before any such line are shared.
 */
std::shared_ptr<MockBackend> parse_mock_file(const std::string &text, MockBackend::Script shared) {
  std::map<std::size_t, MockBackend::Script> per_run;
  MockBackend::Script *current = &shared;
  bool open = false;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("=== run ", 0) == 0) {
      std::size_t run = 0;
      try {
        run = std::stoul(line.substr(8));
      } catch (const std::exception &) {
      }
      if (run == 0) {
        throw UsageError("mock file: bad run header '" + line + "'");
      }
      current = &per_run[run - 1];
      open = false;
    } else if (line == "---") {
      open = false;
    } else {
      if (!open) {
        current->emplace_back();
        open = true;
      } else {
        current->back() += "\n";
      }
      current->back() += line;
    }
  }
  const bool any = std::any_of(per_run.begin(), per_run.end(), [](const auto &kv) { return !kv.second.empty(); });
  if (shared.empty() && !any) {
    throw UsageError("mock file has no replies");
  }
  return std::make_shared<MockBackend>(std::move(shared), std::move(per_run));
}

std::string unescape_newlines(const std::string &raw) {
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 1 < raw.size() && raw[i + 1] == 'n') {
      out += '\n';
      ++i;
    } else {
      out += raw[i];
    }
  }
  return out;
}

GenerationConfig generation_config(const Options &o) {
  GenerationConfig g;
  g.model_name = o.model;
  g.temperature = o.temperature;
  g.max_new_tokens = o.max_tokens;
  g.request_timeout = std::chrono::milliseconds(o.timeout_ms);
  g.validate();
  return g;
}

PipelineConfig pipeline_config(const Options &o) {
  PipelineConfig p;
  p.k = o.k;
  p.max_retries_per_run = o.retries;
  p.inject_test_srl = o.inject_srl;
  p.on_no_majority = o.on_no_majority == "error" ? NoMajorityPolicy::error : NoMajorityPolicy::confidence_fallback;
  p.generation = generation_config(o);
  p.validate();
  return p;
}

std::shared_ptr<Backend> make_backend(const Options &o) {
  std::shared_ptr<Backend> backend;
  if (o.backend == "mock") {
    if (!o.mock_file.empty()) {
      backend = parse_mock_file(read_text(o.mock_file), o.mock_replies);
    } else if (!o.mock_replies.empty()) {
      backend = std::make_shared<MockBackend>(o.mock_replies);
    } else {
      throw UsageError("the mock backend needs --mock-reply or --mock-file");
    }
  } else if (o.backend == "replay") {
    if (o.replay_store.empty()) {
      throw UsageError("the replay backend needs --replay-store");
    }
    if (!std::filesystem::exists(o.replay_store)) {
      throw UsageError("replay store '" + o.replay_store + "' does not exist");
    }
    backend = std::make_shared<ReplayBackend>(std::make_shared<ReplayStore>(o.replay_store));
  } else {
    LiveOptions live =
        live_options_from_env(o.endpoint.empty() ? std::nullopt : std::optional<std::string>(o.endpoint));
    if (live.endpoint.empty()) {
      throw UsageError(std::string("the live backend needs --endpoint or ") + kEndpointEnv);
    }
    if (live.api_key.empty()) {
      throw UsageError(std::string("the live backend needs the ") + kApiKeyEnv + " environment variable");
    }
    backend = std::make_shared<LiveBackend>(std::move(live));
  }
  if (!o.record_store.empty()) {
    backend = std::make_shared<RecordingBackend>(backend, std::make_shared<ReplayStore>(o.record_store));
  }
  return backend;
}

PromptBundle prompt_set(const Options &o) { return load_prompt_set(resolve(o.prompt_set, "prompts", ".prompt")); }

std::shared_ptr<const RoleLexicon> lexicon(const Options &o) {
  return std::make_shared<const RoleLexicon>(load_lexicon(resolve(o.lexicon, "lexicon", ".lex")));
}

Syntax input_syntax(const Options &o) { return syntax_from_string(o.syntax); }

json letters_json(const std::vector<Letter> &letters) {
  json out = json::array();
  for (const auto &l : letters) {
    out.push_back(l);
  }
  return out;
}

json word_json(const LassoWord &w) { return {{"prefix", letters_json(w.prefix)}, {"loop", letters_json(w.loop)}}; }

json cells_json(const std::vector<Cell> &cells) {
  json out = json::array();
  for (const auto &c : cells) {
    out.push_back({c.x, c.y});
  }
  return out;
}

json envelope(const std::string &type) { return {{"schema_version", kSchemaVersion}, {"type", type}}; }

bool structured(const Options &o) { return o.format == "structured"; }

int cmd_sat(const Options &o, std::ostream &out) {
  const Formula f = parse(o.positional.at(0), input_syntax(o));
  const SatVerdict v = is_satisfiable(f);
  if (structured(o)) {
    json j = envelope("sat");
    j["formula"] = print(f);
    j["satisfiable"] = v.satisfiable;
    j["witness"] = v.witness ? word_json(*v.witness) : json(nullptr);
    if (o.dump_automaton) {
      j["automaton"] = dump(build_automaton(f));
    }
    out << j.dump() << "\n";
  } else {
    out << (v.satisfiable ? "SAT" : "UNSAT") << "\n";
    if (v.witness) {
      out << "witness: " << to_string(*v.witness) << "\n";
    }
    if (o.dump_automaton) {
      out << dump(build_automaton(f));
    }
  }
  return v.satisfiable ? kOk : kNegative;
}

int cmd_equiv(const Options &o, std::ostream &out) {
  using namespace ltl;
  const Formula f = parse(o.positional.at(0), input_syntax(o));
  const Formula g = parse(o.positional.at(1), input_syntax(o));
  std::optional<LassoWord> witness;
  std::string holds;
  if (auto v = is_satisfiable(And(f, Not(g))); v.satisfiable) {
    witness = v.witness;
    holds = "first";
  } else if (auto w = is_satisfiable(And(g, Not(f))); w.satisfiable) {
    witness = w.witness;
    holds = "second";
  }
  if (structured(o)) {
    json j = envelope("equiv");
    j["formulas"] = {print(f), print(g)};
    j["equivalent"] = !witness;
    j["witness"] = witness ? word_json(*witness) : json(nullptr);
    j["witness_satisfies"] = witness ? json(holds) : json(nullptr);
    out << j.dump() << "\n";
  } else if (!witness) {
    out << "EQUIVALENT\n";
  } else {
    out << "NOT EQUIVALENT\n"
        << "witness: " << to_string(*witness) << " satisfies only the " << holds << " formula\n";
  }
  return witness ? kNegative : kOk;
}

int cmd_check(const Options &o, std::ostream &out) {
  const Formula f = parse(o.positional.at(0), input_syntax(o));
  const auto problem = check_formula(f);
  if (structured(o)) {
    json j = envelope("check");
    j["infix"] = print(f);
    j["prefix"] = print(f, Syntax::prefix);
    j["structure"] = structure_of(f);
    j["accepted"] = !problem;
    j["error"] = problem ? json(*problem) : json(nullptr);
    out << j.dump() << "\n";
  } else if (problem) {
    out << "REJECTED: " << *problem << "\n";
  } else {
    out << "OK\n"
        << "infix:     " << print(f) << "\n"
        << "prefix:    " << print(f, Syntax::prefix) << "\n"
        << "structure: " << structure_of(f) << "\n";
  }
  return problem ? kNegative : kOk;
}

int cmd_srl(const Options &o, std::ostream &out) {
  const std::string &text = o.positional.at(0);
  const auto spans = tag(text, *lexicon(o));
  if (structured(o)) {
    json j = envelope("srl");
    j["instruction"] = text;
    j["annotation"] = render_annotation(text, spans);
    j["spans"] = json::array();
    for (const auto &s : spans) {
      j["spans"].push_back({{"text", s.text},
                            {"role", to_string(s.role)},
                            {"start", s.start},
                            {"end", s.end},
                            {"negated", s.negated}});
    }
    out << j.dump() << "\n";
  } else {
    out << render_annotation(text, spans) << "\n";
  }
  return kOk;
}

int cmd_prompt_render(const Options &o, std::ostream &out) {
  PromptBundle bundle = prompt_set(o);
  bundle.test_specification = o.positional.at(0);
  if (o.inject_srl) {
    const auto lex = lexicon(o);
    bundle.test_srl = render_annotation(bundle.test_specification, tag(bundle.test_specification, *lex));
  }
  const std::string prompt = render(bundle);
  if (structured(o)) {
    json j = envelope("prompt");
    j["prompt"] = prompt;
    out << j.dump() << "\n";
  } else {
    out << prompt;
  }
  return kOk;
}

void print_translation(const Options &o, const TranslationResult &r, std::ostream &out) {
  if (!o.quiet) {
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
      const TranslationRun &run = r.runs[i];
      for (std::size_t a = 0; a < run.attempts.size(); ++a) {
        out << "=== run " << i + 1 << ", attempt " << a + 1 << " ===\n";
        if (!run.attempts[a].completion.empty()) {
          out << run.attempts[a].completion << "\n";
        }
        out << "checker: " << run.attempts[a].checker_outcome << "\n";
      }
    }
    if (!r.confidence_scores.empty()) {
      out << "confidence:\n";
      for (const auto &[formula, score] : r.confidence_scores) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", score);
        out << "  " << buf << "  " << formula << "\n";
      }
    }
    out << "decision: " << to_string(r.decision) << "\n";
  }
  if (r.final_formula) {
    out << (o.quiet ? "" : "formula: ") << print(*r.final_formula) << "\n";
  }
}

int cmd_translate(const Options &o, std::ostream &out) {
  const std::string &spec = o.positional.at(0);
  const PipelineConfig cfg = pipeline_config(o);
  const Translator translator(make_backend(o), prompt_set(o), lexicon(o));
  if (o.print_prompt && !structured(o)) {
    out << translator.initial_prompt(spec, cfg) << "\n";
  }
  try {
    const TranslationResult r = translator.translate(spec, cfg);
    if (structured(o)) {
      write_report(out, spec, r);
    } else {
      print_translation(o, r, out);
    }
  } catch (const TranslationError &e) {
    if (structured(o)) {
      write_report(out, spec, e.result(), std::string(e.what()));
    } else if (!o.quiet) {
      print_translation(o, e.result(), out);
    }
    throw;
  }
  return kOk;
}

int cmd_eval(const Options &o, std::ostream &out) {
  if (o.dataset.empty()) {
    throw UsageError("eval needs --dataset");
  }
  const auto records = load_dataset(o.dataset);
  if (o.stats_only) {
    const DatasetStats stats = dataset_stats(records);
    if (structured(o)) {
      json j = envelope("dataset_stats");
      j["records"] = stats.records;
      j["distinct_structures"] = stats.distinct_structures;
      j["distinct_formulas"] = stats.distinct_formulas;
      j["ap_count"] = stats.ap_count;
      out << j.dump() << "\n";
    } else {
      out << format_stats(stats);
    }
    return kOk;
  }
  EvalOptions options;
  options.repetitions = o.repetitions;
  options.workers = o.workers;
  options.lexicon = lexicon(o);
  const EvalReport report = evaluate(records, prompt_set(o), pipeline_config(o), make_backend(o), options);
  out << (structured(o) ? report_json(report) + "\n" : report_table(report));
  return kOk;
}

int cmd_plan(const Options &o, std::ostream &out) {
  if (o.world.empty()) {
    throw UsageError("plan needs --world");
  }
  const GridWorld world = load_world(resolve(o.world, "worlds", ".world"));
  const Formula f = parse(o.positional.at(0), input_syntax(o));
  const Trajectory t = plan(world, f);
  if (structured(o)) {
    json j = envelope("plan");
    j["formula"] = print(f);
    j["prefix"] = cells_json(t.prefix_cells);
    j["loop"] = cells_json(t.loop_cells);
    j["trace"] = word_json(t.trace);
    j["check"] = check_trace(f, t);
    out << j.dump() << "\n";
  } else {
    out << render_path(world, t);
    if (!o.quiet) {
      out << "trace:  " << to_string(t.trace) << "\n";
    }
  }
  return kOk;
}

int cmd_record(const Options &o, std::ostream &out) {
  if (o.record_store.empty()) {
    throw UsageError("record needs --record <store>");
  }
  if (!o.from_tsv.empty() && (!o.positional.empty() || !o.completion.empty())) {
    throw UsageError("--from-tsv replaces the specification and --completion");
  }
  const PipelineConfig cfg = pipeline_config(o);
  PromptBundle bundle = prompt_set(o);
  auto lex = lexicon(o);
  // Only used to build prompts; its backend is never called.
  const Translator translator(std::make_shared<MockBackend>(std::vector<std::string>{""}), bundle, lex);
  ReplayStore store(o.record_store);
  std::size_t written = 0;
  auto store_one = [&](const std::string &spec, const std::string &text) {
    store.append(translator.initial_prompt(spec, cfg), cfg.generation, text);
    ++written;
  };
  if (!o.from_tsv.empty()) {
    std::istringstream in(read_text(o.from_tsv));
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
      ++line_no;
      if (line.empty() || line[0] == '#') {
        continue;
      }
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw UsageError(o.from_tsv + " line " + std::to_string(line_no) + ": expected <specification>\\t<completion>");
      }
      store_one(line.substr(0, tab), unescape_newlines(line.substr(tab + 1)));
    }
  } else if (o.positional.empty()) {
    throw UsageError("record needs a specification or --from-tsv");
  } else if (!o.completion.empty()) {
    store_one(o.positional[0], unescape_newlines(o.completion));
  } else {
    Options source = o;
    source.record_store.clear();
    const auto backend = make_backend(source);
    const Completion c = record(*backend, translator.initial_prompt(o.positional[0], cfg), cfg.generation,
                                o.record_store);
    if (!o.quiet && !structured(o)) {
      out << c.text << "\n";
    }
    ++written;
  }
  if (structured(o)) {
    json j = envelope("record");
    j["store"] = o.record_store;
    j["written"] = written;
    out << j.dump() << "\n";
  } else {
    out << "recorded " << written << " completion" << (written == 1 ? "" : "s") << " in " << o.record_store << "\n";
  }
  return kOk;
}

int error_exit(std::ostream &err, int code, const std::string &what) {
  err << "error: " << what << "\n";
  return code;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Natural-language to LTL translation, checking and planning", "nl2ltl"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with option defaults; flags override it");
  app.footer("Environment:\n"
             "  NL2LTL_ENDPOINT   chat-completions URL for --backend live\n"
             "  NL2LTL_API_KEY    bearer token for --backend live\n"
             "  NL2LTL_DATA_DIR   directory holding prompts/, lexicon/ and worlds/\n"
             "Exit status: 0 ok, 1 internal error, 2 usage, 3 UNSAT / NOT EQUIVALENT / rejected,\n"
             "  4 formula parse error, 5 no majority, 6 all runs failed, 7 gateway error,\n"
             "  8 no plan, 9 dataset error, 10 bad input file, 11 resource limit");

  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("-q,--quiet", o.quiet, "Print results only");
  app.add_option("--syntax", o.syntax, "Syntax of formula arguments")
      ->check(CLI::IsMember({"auto", "infix", "prefix"}));
  app.add_option("--backend", o.backend, "Model backend")->check(CLI::IsMember({"live", "mock", "replay"}));
  app.add_option("--endpoint", o.endpoint, "Chat-completions URL for the live backend");
  app.add_option("--replay-store", o.replay_store, "Replay store read by the replay backend");
  app.add_option("--record", o.record_store, "Append every completion to this replay store");
  app.add_option("--mock-reply", o.mock_replies, "Mock completion; the n-th reply answers attempt n");
  app.add_option("--mock-file", o.mock_file, "Mock completions separated by '---' lines; '=== run <n>' starts a per-run script");
  app.add_option("--model", o.model, "Model name");
  app.add_option("--temperature", o.temperature, "Sampling temperature");
  app.add_option("--max-tokens", o.max_tokens, "Completion token limit");
  app.add_option("--timeout-ms", o.timeout_ms, "Per-request timeout");
  app.add_option("-k,--runs", o.k, "Independent runs voted on")->check(CLI::PositiveNumber);
  app.add_option("--retries", o.retries, "Model calls allowed per run")->check(CLI::PositiveNumber);
  app.add_option("--on-no-majority", o.on_no_majority, "Policy without a majority")
      ->check(CLI::IsMember({"fallback", "error"}));
  app.add_flag("--inject-srl", o.inject_srl, "Add the tagger's annotation of the specification to the prompt");
  app.add_option("--prompt-set", o.prompt_set, "Prompt set file or shipped name (drone, cleanup, pickplace)");
  app.add_option("--lexicon", o.lexicon, "Role lexicon file or shipped name");

  auto *translate = app.add_subcommand("translate", "Translate an instruction into LTL");
  translate->add_option("specification", o.positional, "Instruction text")->required()->expected(1);
  translate->add_flag("--print-prompt", o.print_prompt, "Print the first prompt sent to the model");

  auto *check = app.add_subcommand("check", "Parse a formula and apply the translation checker");
  check->add_option("formula", o.positional)->required()->expected(1);

  auto *sat = app.add_subcommand("sat", "Decide satisfiability and print a witness");
  sat->add_option("formula", o.positional)->required()->expected(1);
  sat->add_flag("--dump-automaton", o.dump_automaton, "Also print the Buchi automaton");

  auto *equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of two formulas");
  equiv_cmd->add_option("formulas", o.positional)->required()->expected(2);

  auto *srl = app.add_subcommand("srl", "Tag the semantic roles of an instruction");
  srl->add_option("instruction", o.positional)->required()->expected(1);

  auto *prompt_render = app.add_subcommand("prompt-render", "Render the few-shot prompt for an instruction");
  prompt_render->add_option("specification", o.positional)->required()->expected(1);

  auto *eval = app.add_subcommand("eval", "Score the pipeline on a dataset");
  eval->add_option("--dataset", o.dataset, "Dataset file (JSON lines)");
  eval->add_option("--repetitions", o.repetitions, "Passes over the dataset")->check(CLI::PositiveNumber);
  eval->add_option("--workers", o.workers, "Records translated concurrently")->check(CLI::PositiveNumber);
  eval->add_flag("--stats", o.stats_only, "Print dataset statistics only");

  auto *plan_cmd = app.add_subcommand("plan", "Plan a grid-world trajectory satisfying a formula");
  plan_cmd->add_option("formula", o.positional)->required()->expected(1);
  plan_cmd->add_option("--world", o.world, "World file or shipped name");

  auto *record_cmd = app.add_subcommand("record", "Append completions for instructions to a replay store");
  record_cmd->add_option("specification", o.positional)->expected(0, 1);
  record_cmd->add_option("--completion", o.completion, "Completion text to store; \\n starts a new line");
  record_cmd->add_option("--from-tsv", o.from_tsv, "Lines of <specification>\\t<completion>");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*translate) {
      return cmd_translate(o, out);
    }
    if (*check) {
      return cmd_check(o, out);
    }
    if (*sat) {
      return cmd_sat(o, out);
    }
    if (*equiv_cmd) {
      return cmd_equiv(o, out);
    }
    if (*srl) {
      return cmd_srl(o, out);
    }
    if (*prompt_render) {
      return cmd_prompt_render(o, out);
    }
    if (*eval) {
      return cmd_eval(o, out);
    }
    if (*plan_cmd) {
      return cmd_plan(o, out);
    }
    if (*record_cmd) {
      return cmd_record(o, out);
    }
    return kUsageError;
  } catch (const UsageError &e) {
    return error_exit(err, kUsageError, e.what());
  } catch (const ParseError &e) {
    return error_exit(err, kParseError, std::string("parse error: ") + e.what());
  } catch (const NoMajorityError &e) {
    return error_exit(err, kNoMajority, e.what());
  } catch (const AllRunsFailedError &e) {
    if (!e.gateway_only()) {
      return error_exit(err, kAllRunsFailed, e.what());
    }
    const auto &runs = e.result().runs;
    const std::string cause = runs.empty() || !runs[0].gateway_error ? "" : ": " + *runs[0].gateway_error;
    return error_exit(err, kGatewayError, e.what() + cause);
  } catch (const GatewayError &e) {
    return error_exit(err, kGatewayError, e.what());
  } catch (const UnsatisfiableFormulaError &e) {
    return error_exit(err, kNegative, e.what());
  } catch (const NoPlanError &e) {
    return error_exit(err, kNoPlan, e.what());
  } catch (const DatasetError &e) {
    return error_exit(err, kDatasetError, e.what());
  } catch (const PromptSetError &e) {
    return error_exit(err, kInputError, e.what());
  } catch (const PromptValidationError &e) {
    return error_exit(err, kInputError, e.what());
  } catch (const LexiconError &e) {
    return error_exit(err, kInputError, e.what());
  } catch (const WorldError &e) {
    return error_exit(err, kInputError, e.what());
  } catch (const ResourceLimitError &e) {
    return error_exit(err, kResourceLimit, e.what());
  } catch (const std::invalid_argument &e) {
    return error_exit(err, kUsageError, e.what());
  } catch (const std::exception &e) {
    return error_exit(err, kInternalError, e.what());
  }
}

} // namespace nl2ltl::cli
