// Acceptance suite: one PASS / FAIL / SKIP line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nl2ltl/automaton.hpp"
#include "nl2ltl/eval.hpp"
#include "nl2ltl/pipeline.hpp"
#include "nl2ltl/planner.hpp"
#include "support/generators.hpp"
#include "support/golden.hpp"
#include "support/oracle.hpp"
#include "support/pipeline_fixtures.hpp"
#include "support/sat_suite.hpp"

using namespace nl2ltl;
using namespace nl2ltl::ltl;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
};

// Collects failed expectations; the first few end up in the report line.
class Checks {
public:
  void expect(bool ok, const std::string &what) {
    ++total_;
    if (!ok) {
      failures_.push_back(what);
    }
  }
  Outcome outcome(const std::string &summary) const {
    if (failures_.empty()) {
      return {Status::pass, summary};
    }
    std::string detail = std::to_string(failures_.size()) + "/" + std::to_string(total_) + " checks failed: ";
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) {
      detail += (i ? "; " : "") + failures_[i];
    }
    return {Status::fail, detail};
  }
  std::size_t total() const { return total_; }

private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

const std::vector<std::pair<const char *, Syntax>> kQuotedFormulas = {
    {"F(purple_room & F(red_room))", Syntax::infix},
    {"F(red_room & F(blue_room))", Syntax::infix},
    {"!(red_room) U (second_floor)", Syntax::infix},
    {"F & | B Y F C", Syntax::prefix},
    {"F((B | Y) & F(C))", Syntax::infix},
    {"G & U S ! C F C", Syntax::prefix},
    {"G((S U !C) & F(C))", Syntax::infix},
    {"F(A & ! B)", Syntax::infix},
    {"!(A) U (B)", Syntax::infix},
    {"F(C) & G(!Y)", Syntax::infix},
    {"F(C & G(!Y))", Syntax::infix},
    {"(G(! Angel_St) & F(bakery))", Syntax::infix},
};

bool round_trips(const Formula &f) {
  return parse(print(f, Syntax::infix), Syntax::infix) == f && parse(print(f, Syntax::prefix), Syntax::prefix) == f;
}

Outcome parser_round_trip() {
  Checks c;
  std::mt19937 rng(20240501);
  const std::vector<std::string> aps = {"a", "b", "red_room", "C"};
  std::size_t random_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen::formula(rng, 5, aps);
    const bool ok = f.depth() <= 5 && round_trips(f);
    random_ok += ok;
    c.expect(ok, print(f));
  }
  std::size_t quoted_ok = 0;
  for (const auto &[text, syntax] : kQuotedFormulas) {
    bool ok = false;
    try {
      ok = round_trips(parse(text, syntax));
    } catch (const std::exception &) {
    }
    quoted_ok += ok;
    c.expect(ok, text);
  }
  return c.outcome(std::to_string(random_ok) + "/500 random, " + std::to_string(quoted_ok) + "/" +
                   std::to_string(kQuotedFormulas.size()) + " quoted formulas");
}

Outcome oracle_agreement() {
  Checks c;
  std::size_t agree = 0, escalated = 0;
  const auto &cases = suite::sat_cases();
  for (const auto &sc : cases) {
    const Formula f = parse(sc.text, sc.syntax);
    c.expect(f.atoms().size() <= 3, std::string(sc.text) + ": more than 3 atoms");
    const bool tableau = is_satisfiable(f).satisfiable;
    const bool bounded = oracle::bounded_model(f, 8).has_value();
    if (tableau == bounded) {
      ++agree;
    } else if (tableau && !sc.known_unsat) {
      // The oracle merely found no model within the bound.
      ++escalated;
    } else {
      c.expect(false, std::string(sc.text) + ": tableau " + (tableau ? "SAT" : "UNSAT") + ", oracle " +
                          (bounded ? "SAT" : "no model"));
    }
  }
  c.expect(cases.size() >= 30, "suite has fewer than 30 formulas");
  for (const auto &[text, syntax] : kQuotedFormulas) {
    const Formula f = parse(text, syntax);
    bool listed = false;
    for (const auto &sc : cases) {
      listed = listed || parse(sc.text, sc.syntax) == f;
    }
    c.expect(listed || f.atoms().size() > 3, std::string(text) + " missing from the suite");
  }
  c.expect(escalated == 0, std::to_string(escalated) + " cases escalated for manual review");
  return c.outcome(std::to_string(agree) + "/" + std::to_string(cases.size()) + " agree with the bound-8 oracle, " +
                   std::to_string(escalated) + " escalated");
}

Outcome witness_soundness() {
  Checks c;
  std::size_t witnesses = 0;
  auto check_witness = [&](const Formula &f) {
    const SatVerdict v = is_satisfiable(f);
    if (v.satisfiable) {
      ++witnesses;
      c.expect(v.witness && evaluate(f, *v.witness) && oracle::holds(f, *v.witness), "witness for " + print(f));
    }
  };
  for (const auto &sc : suite::sat_cases()) {
    check_witness(parse(sc.text, sc.syntax));
  }
  std::mt19937 rng(7);
  const std::vector<std::string> aps = {"a", "b", "c"};
  for (int i = 0; i < 300; ++i) {
    check_witness(gen::formula(rng, 5, aps));
  }

  std::size_t identities = 0;
  // NNF sides contain Release, which has no surface syntax.
  auto show = [](const Formula &f) { return f.contains(Op::release) ? std::string("<NNF formula>") : print(f); };
  auto identity = [&](const Formula &lhs, const Formula &rhs) {
    ++identities;
    const bool ok = equiv(lhs, rhs);
    c.expect(ok, ok ? "" : show(lhs) + " == " + show(rhs));
  };
  std::vector<Formula> phis = {ap("a"), Not(ap("a")), U(ap("a"), ap("b")), G(F(ap("a"))), And(ap("a"), F(ap("b")))};
  for (int i = 0; i < 20; ++i) {
    phis.push_back(gen::formula(rng, 4, aps));
  }
  const Formula psi = Or(ap("b"), G(ap("c")));
  for (const auto &phi : phis) {
    identity(Not(F(phi)), G(Not(phi)));
    identity(Not(G(phi)), F(Not(phi)));
    identity(F(F(phi)), F(phi));
    identity(G(G(phi)), G(phi));
    identity(Not(And(phi, psi)), Or(Not(phi), Not(psi)));
    identity(Not(Or(phi, psi)), And(Not(phi), Not(psi)));
    // Negated Until becomes Release in NNF.
    identity(Not(U(phi, psi)), to_nnf(Not(U(phi, psi))));
    identity(Not(to_nnf(Not(U(phi, psi)))), U(phi, psi));
    identity(phi, to_nnf(phi));
  }
  return c.outcome(std::to_string(witnesses) + " witnesses evaluated, " + std::to_string(identities) +
                   " identities EQUIVALENT");
}

PipelineConfig scripted_config(std::size_t k) {
  PipelineConfig cfg;
  cfg.k = k;
  return cfg;
}

Outcome algorithm_conformance() {
  using fixtures::answer;
  Checks c;
  const PromptBundle bundle = fixtures::tiny_bundle();

  {  // (a) invalid then valid
    auto backend = fixtures::per_run({{answer("F(a &"), answer("F(a)")}});
    const auto r = translate("reach a", bundle, scripted_config(1), backend);
    c.expect(r.runs.size() == 1 && r.runs[0].retries_used == 1, "(a) retries_used == 1");
    c.expect(r.final_formula && *r.final_formula == F(ap("a")), "(a) final formula F(a)");
  }
  {  // (b) five invalid answers
    auto backend = fixtures::per_run({std::vector<std::string>(5, answer("F(a & !a"))});
    bool failed = false;
    try {
      translate("reach a", bundle, scripted_config(1), backend);
    } catch (const AllRunsFailedError &e) {
      failed = e.result().runs.size() == 1 && e.result().runs[0].failed && e.result().runs[0].attempts.size() == 5;
    }
    c.expect(failed, "(b) five invalid completions fail the run");
    c.expect(backend->call_count() == 5, "(b) exactly five calls");
  }
  {  // (c) two of three equivalent
    auto backend = fixtures::per_run({{answer("F(a) & F(b)")}, {answer("G(a)")}, {answer("F(b) & F(a)")}});
    const auto r = translate("reach a and b", bundle, scripted_config(3), backend);
    c.expect(r.decision == Decision::majority, "(c) decision majority");
    c.expect(r.final_formula && equiv(*r.final_formula, And(F(ap("a")), F(ap("b")))), "(c) majority formula");
  }
  {  // (d) three inequivalent outputs
    auto backend = fixtures::per_run({{answer("F(a)")}, {answer("G(a)")}, {answer("F(b)")}});
    const auto r = translate("reach a", bundle, scripted_config(3), backend);
    c.expect(r.decision == Decision::confidence_fallback, "(d) decision confidence_fallback");
    c.expect(r.final_formula && *r.final_formula == F(ap("a")), "(d) final F(a)");
    // Mean token frequency: F(a) = (2/3 + 2/3) / 2, G(a) = (1/3 + 2/3) / 2, F(b) = (2/3 + 1/3) / 2.
    const std::map<std::string, double> expected = {{"F(a)", 2.0 / 3.0}, {"G(a)", 0.5}, {"F(b)", 0.5}};
    bool scores_ok = r.confidence_scores.size() == expected.size();
    for (const auto &[f, s] : expected) {
      scores_ok = scores_ok && r.confidence_scores.count(f) && std::abs(r.confidence_scores.at(f) - s) < 1e-12;
    }
    c.expect(scores_ok, "(d) scores {2/3, 1/2, 1/2}");
  }
  {  // (e) whatever translate returns passes the gate
    std::mt19937 rng(3);
    const std::vector<std::string> pool = {"F(a)", "G(a) & F(!a)", "F(a &", "a & !a", "F(b) & G(a)", "a -> b",
                                           "G(F(a))", "F(c & G(!a))", "no formula here", "G(a U b)"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::size_t returned = 0;
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<std::vector<std::string>> scripts(3);
      for (auto &s : scripts) {
        for (int i = 0; i < 5; ++i) {
          s.push_back("LTL: " + pool[pick(rng)]);
        }
      }
      try {
        const auto r = translate("reach a", bundle, scripted_config(3), fixtures::per_run(scripts));
        ++returned;
        const Formula again = parse(print(*r.final_formula));
        c.expect(again == *r.final_formula && is_satisfiable(again).satisfiable, "(e) gate on " + print(again));
      } catch (const TranslationError &) {
      }
    }
    c.expect(returned > 0, "(e) no trial produced a formula");
  }
  return c.outcome("scenarios (a)-(e) exact");
}

Outcome evaluation_fixture() {
  Checks c;
  const auto records = load_dataset(golden::data_path("fixtures/eval/dataset.jsonl"));
  const auto bundle = load_prompt_set(golden::data_path("prompts/drone.prompt"));
  auto store = std::make_shared<ReplayStore>(golden::data_path("fixtures/eval/replay.jsonl"));
  EvalOptions options;
  options.repetitions = 1;
  const EvalReport r = evaluate(records, bundle, {}, std::make_shared<ReplayBackend>(store), options);
  c.expect(records.size() == 4, "4 records");
  c.expect(r.accuracy_semantic == 0.75, "accuracy_semantic == 0.75");
  c.expect(r.accuracy_exact == 0.5, "accuracy_exact == 0.5");
  c.expect(r.stddev == 0.0, "stddev == 0");
  // Records 1-3 are equivalent to gold, record 4 nests G inside F.
  const std::map<std::string, double> expected = {
      {"F(_ & F(_))", 1.0}, {"!_ U _", 1.0}, {"F(_) & F(_)", 1.0}, {"F(_) & G(!_)", 0.0}};
  c.expect(r.per_structure == expected, "per-structure breakdown");
  char buf[96];
  std::snprintf(buf, sizeof buf, "semantic %.2f, exact %.2f, stddev %.2f", r.accuracy_semantic, r.accuracy_exact,
                r.stddev);
  return c.outcome(buf);
}

Outcome prompt_goldens() {
  Checks c;
  for (const auto &pc : golden::kPromptCases) {
    const std::string rendered = golden::render_case(pc);
    c.expect(rendered == golden::read_file(golden::golden_path(pc)), std::string(pc.name) + " differs from golden");
    std::size_t finish = 0;
    std::istringstream in(rendered);
    for (std::string line; std::getline(in, line);) {
      finish += line == "FINISH";
    }
    c.expect(finish == 6, std::string(pc.name) + " has " + std::to_string(finish) + " FINISH lines");
  }
  return c.outcome(std::to_string(golden::kPromptCases.size()) + " prompt sets byte-identical, 6 FINISH lines each");
}

Outcome planner() {
  Checks c;
  const GridWorld world = load_world(golden::data_path("worlds/two_rooms.world"));
  c.expect(world.width == 6 && world.height == 6, "two_rooms is 6x6");
  const Formula f = F(And(ap("purple_room"), F(ap("red_room"))));
  const Trajectory t = plan(world, f);
  c.expect(check_trace(f, t), "check_trace");
  c.expect(is_well_formed(world, t), "well-formed trajectory");
  std::optional<std::size_t> purple, red;
  for (std::size_t i = 0; i < t.trace.size(); ++i) {
    const Letter &l = t.trace.at(i);
    if (!purple && l.count("purple_room")) {
      purple = i;
    }
    if (purple && !red && l.count("red_room")) {
      red = i;
    }
  }
  c.expect(purple && red && *purple < *red, "purple visited before red");
  bool no_plan = false;
  try {
    plan(load_world(golden::data_path("worlds/walled.world")), F(ap("blue_room")));
  } catch (const NoPlanError &) {
    no_plan = true;
  }
  c.expect(no_plan, "no-plan error for the unreachable label");
  return c.outcome("prefix " + std::to_string(t.prefix_cells.size()) + " cells, loop " + format_cells(t.loop_cells) +
                   ", unreachable label rejected");
}

Outcome live_smoke() {
  const char *gate = std::getenv("NL2LTL_LIVE_SMOKE");
  if (!gate || std::string(gate) != "1") {
    return {Status::skip, "set NL2LTL_LIVE_SMOKE=1 with NL2LTL_ENDPOINT and NL2LTL_API_KEY to run"};
  }
  const LiveOptions live = live_options_from_env();
  if (live.endpoint.empty() || live.api_key.empty()) {
    return {Status::fail, "NL2LTL_ENDPOINT and NL2LTL_API_KEY must be set"};
  }
  const auto bundle = load_prompt_set(golden::data_path("prompts/drone.prompt"));
  try {
    const auto r = translate("Enter blue room via red room", bundle, {}, std::make_shared<LiveBackend>(live));
    const bool valid = r.final_formula && !check_formula(*r.final_formula);
    const bool match = r.final_formula && equiv(*r.final_formula, F(And(ap("red_room"), F(ap("blue_room")))));
    return {valid ? Status::pass : Status::fail, (r.final_formula ? print(*r.final_formula) : std::string("none")) +
                                                     ", semantic match " + (match ? "yes" : "no") + " (not asserted)"};
  } catch (const std::exception &e) {
    return {Status::fail, e.what()};
  }
}

struct Criterion {
  int id;
  const char *name;
  double limit_seconds;
  std::function<Outcome()> body;
};

const char *label(Status s) { return s == Status::pass ? "PASS" : s == Status::fail ? "FAIL" : "SKIP"; }

} // namespace

int main() {
  using clock = std::chrono::steady_clock;
  // Keep the offline criteria away from any configured endpoint.
  std::optional<std::string> endpoint, key;
  if (const char *e = std::getenv(kEndpointEnv)) {
    endpoint = e;
  }
  if (const char *k = std::getenv(kApiKeyEnv)) {
    key = k;
  }
  ::unsetenv(kEndpointEnv);
  ::unsetenv(kApiKeyEnv);

  const std::vector<Criterion> offline = {
      {1, "parser round-trip", 5, parser_round_trip},
      {2, "satisfiability oracle agreement", 30, oracle_agreement},
      {3, "witness soundness and identities", 10, witness_soundness},
      {4, "translation loop conformance", 5, algorithm_conformance},
      {5, "evaluation fixture", 5, evaluation_fixture},
      {6, "prompt golden files", 1, prompt_goldens},
      {7, "planner", 1, planner},
  };

  bool all_ok = true;
  bool offline_ok = true;
  double offline_seconds = 0;
  auto report = [&](int id, const char *name, Status s, double seconds, double limit, const std::string &detail) {
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    std::cout << "[" << label(s) << "] " << id << " " << name << ": " << detail << " (" << timing;
    if (limit > 0) {
      std::cout << ", limit " << limit << " s";
    }
    std::cout << ")" << std::endl;
  };

  for (const auto &c : offline) {
    const auto start = clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception &e) {
      o = {Status::fail, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(clock::now() - start).count();
    offline_seconds += seconds;
    if (o.status == Status::pass && seconds >= c.limit_seconds) {
      o = {Status::fail, o.detail + "; over the time limit"};
    }
    offline_ok = offline_ok && o.status == Status::pass;
    report(c.id, c.name, o.status, seconds, c.limit_seconds, o.detail);
  }

  Status s8 = offline_ok && offline_seconds < 90 ? Status::pass : Status::fail;
  report(8, "offline completeness", s8, offline_seconds, 90,
         offline_ok ? "criteria 1-7 passed with scripted and replay backends only, no endpoint configured"
                    : "criteria 1-7 did not all pass");
  all_ok = offline_ok && s8 == Status::pass;

  if (endpoint) {
    ::setenv(kEndpointEnv, endpoint->c_str(), 1);
  }
  if (key) {
    ::setenv(kApiKeyEnv, key->c_str(), 1);
  }
  const auto start = clock::now();
  const Outcome live = live_smoke();
  report(9, "live smoke test", live.status, std::chrono::duration<double>(clock::now() - start).count(), 0,
         live.detail);
  all_ok = all_ok && live.status != Status::fail;
  return all_ok ? 0 : 1;
}
