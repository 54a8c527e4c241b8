#include <doctest.h>

#include <json.hpp>

#include <random>
#include <sstream>

#include "nl2ltl/automaton.hpp"
#include "nl2ltl/pipeline.hpp"
#include "support/generators.hpp"
#include "support/pipeline_fixtures.hpp"

using namespace nl2ltl;
using namespace nl2ltl::ltl;
using fixtures::answer;

namespace {

TranslationResult run(const std::vector<std::vector<std::string>> &scripts, PipelineConfig cfg = {}) {
  return translate("reach a and later b", fixtures::tiny_bundle(), cfg, fixtures::per_run(scripts));
}

void check_gate(const TranslationResult &r) {
  REQUIRE(r.final_formula.has_value());
  CHECK(parse(print(*r.final_formula)) == *r.final_formula);
  CHECK(is_satisfiable(*r.final_formula).satisfiable);
}

// Equivalent surface variant without Release nodes.
Formula variant(const Formula &f) {
  switch (f.op()) {
  case Op::atom:
    return Not(Not(f));
  case Op::negation:
    return Not(variant(f.operand()));
  case Op::conjunction:
    return And(variant(f.rhs()), variant(f.lhs()));
  case Op::disjunction:
    return Or(variant(f.rhs()), variant(f.lhs()));
  case Op::finally:
    return F(F(variant(f.operand())));
  case Op::globally:
    return Not(F(Not(variant(f.operand()))));
  case Op::until:
    return U(variant(f.lhs()), variant(f.rhs()));
  case Op::release:
    break;
  }
  return f;
}

} // namespace

TEST_CASE("invalid then valid completion") {
  auto backend = fixtures::per_run({{"LTL: F(a & ", answer("F(a & F(b))")}, {answer("F(a & F(b))")},
                                    {answer("F(a & F(b))")}});
  const auto r = translate("reach a and later b", fixtures::tiny_bundle(), {}, backend);
  CHECK(r.decision == Decision::majority);
  CHECK(*r.final_formula == F(And(ap("a"), F(ap("b")))));
  CHECK(r.runs[0].retries_used == 1);
  CHECK(r.runs[1].retries_used == 0);
  CHECK(r.runs[0].attempts[0].checker_outcome.find("syntax error") != std::string::npos);
  CHECK(r.runs[0].attempts[1].checker_outcome == "ok");
  // The retry prompt is the original prompt plus the correction block.
  const std::string &first = r.runs[0].attempts[0].prompt;
  const std::string &second = r.runs[0].attempts[1].prompt;
  CHECK(second.rfind(first, 0) == 0);
  CHECK(second.find("LTL: F(a & ") != std::string::npos);
  CHECK(second.find(r.runs[0].attempts[0].checker_outcome) != std::string::npos);
  CHECK(r.reasoning_chains.size() == 4);
  check_gate(r);
}

TEST_CASE("five invalid completions fail the run") {
  const std::vector<std::string> bad(5, "LTL: X(a)");
  auto backend = fixtures::per_run({bad, bad, bad});
  try {
    translate("reach a", fixtures::tiny_bundle(), {}, backend);
    FAIL("expected failure");
  } catch (const AllRunsFailedError &e) {
    CHECK_FALSE(e.gateway_only());
    for (const auto &run : e.result().runs) {
      CHECK(run.failed);
      CHECK_FALSE(run.final_formula.has_value());
      CHECK(run.attempts.size() == 5);
      CHECK(run.retries_used == 4);
      CHECK(run.attempts.back().checker_outcome.find("unknown operator 'X'") != std::string::npos);
    }
  }
  CHECK(backend->call_count() == 15);

  // One failed run does not prevent a majority of the others.
  const auto r = run({bad, {answer("F(a)")}, {answer("F(a)")}});
  CHECK(r.runs[0].failed);
  CHECK(r.decision == Decision::majority);
  CHECK(*r.final_formula == F(ap("a")));
}

TEST_CASE("unsatisfiable answers are re-prompted") {
  const auto r = run({{answer("a & !a"), answer("F(a)")}, {answer("G(b) & F(!b)"), answer("F(a)")}, {answer("F(a)")}});
  CHECK(r.runs[0].retries_used == 1);
  CHECK(r.runs[0].attempts[0].checker_outcome.find("unsatisfiable") != std::string::npos);
  CHECK(r.runs[1].retries_used == 1);
  check_gate(r);
}

TEST_CASE("missing LTL line is re-prompted") {
  const auto r = run({{"I am not sure.", answer("F(a)")}, {answer("F(a)")}, {answer("F(a)")}});
  CHECK(r.runs[0].attempts[0].checker_outcome.find("no line starting with 'LTL:'") != std::string::npos);
  CHECK(r.runs[0].attempts[1].prompt.find("Previous output:\nI am not sure.") != std::string::npos);
}

TEST_CASE("majority over equivalence classes") {
  const auto r = run({{answer("F(a) & F(b)")}, {answer("G(c)")}, {answer("F(b) & F(a)")}});
  CHECK(r.decision == Decision::majority);
  CHECK(*r.final_formula == And(F(ap("a")), F(ap("b"))));

  const auto u = run({{answer("!F(a)")}, {answer("G(!a)")}, {answer("G(!a)")}});
  CHECK(u.decision == Decision::majority);
  CHECK(*u.final_formula == Not(F(ap("a"))));
}

TEST_CASE("confidence fallback") {
  const auto r = run({{answer("F(a)")}, {answer("G(a)")}, {answer("F(b)")}});
  CHECK(r.decision == Decision::confidence_fallback);
  CHECK(*r.final_formula == F(ap("a")));
  CHECK(r.confidence_scores.size() == 3);
  CHECK(r.confidence_scores.at("F(a)") == doctest::Approx(2.0 / 3.0));
  CHECK(r.confidence_scores.at("G(a)") == doctest::Approx(0.5));
  CHECK(r.confidence_scores.at("F(b)") == doctest::Approx(0.5));

  PipelineConfig strict;
  strict.on_no_majority = NoMajorityPolicy::error;
  try {
    run({{answer("F(a)")}, {answer("G(a)")}, {answer("F(b)")}}, strict);
    FAIL("expected no-majority");
  } catch (const NoMajorityError &e) {
    CHECK(e.result().decision == Decision::error);
    CHECK_FALSE(e.result().final_formula.has_value());
  }
}

TEST_CASE("vote") {
  PipelineConfig cfg;
  const Formula phi = F(And(ap("a"), F(ap("b"))));
  const Formula phi2 = F(And(F(ap("b")), ap("a")));
  auto v = vote({phi, phi2, G(ap("c"))}, cfg);
  CHECK(v.decision == Decision::majority);
  CHECK(v.formula == phi);
  CHECK(vote({phi, phi, phi}, cfg).decision == Decision::majority);

  v = vote({F(ap("a")), G(ap("a")), F(ap("b"))}, cfg);
  CHECK(v.formula == F(ap("a")));
  CHECK(v.decision == Decision::confidence_fallback);

  // Ties go to the smallest infix rendering.
  CHECK(vote({G(ap("b")), F(ap("c")), G(ap("a"))}, cfg).formula == G(ap("a")));
  // Majority counts the configured k: one surviving run is not a majority of 3.
  CHECK(vote({F(ap("a"))}, cfg).decision == Decision::confidence_fallback);
  PipelineConfig one;
  one.k = 1;
  CHECK(vote({F(ap("a"))}, one).decision == Decision::majority);
  CHECK_THROWS_AS(vote({}, cfg), std::invalid_argument);
}

TEST_CASE("vote invariance under equivalent variants") {
  std::mt19937 rng(11);
  const std::vector<std::string> aps = {"a", "b"};
  PipelineConfig cfg;
  int majorities = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const Formula f = gen::formula(rng, 3, aps);
    const Formula g = gen::formula(rng, 3, aps);
    const std::vector<Formula> base = {f, g, f};
    const auto before = vote(base, cfg);
    REQUIRE(before.decision == Decision::majority);
    ++majorities;
    for (std::size_t i = 0; i < base.size(); ++i) {
      auto changed = base;
      changed[i] = variant(base[i]);
      CHECK(equiv(changed[i], base[i]));
      const auto after = vote(changed, cfg);
      CHECK(after.decision == Decision::majority);
      CHECK(equiv(after.formula, before.formula));
    }
  }
  CHECK(majorities == 60);
}

TEST_CASE("gateway errors stay within their run") {
  auto backend = std::make_shared<ScriptedBackend>();
  backend->set_run_script(0, {ScriptedReply::failure("rate limited")});
  backend->set_run_script(1, {answer("F(a)")});
  backend->set_run_script(2, {answer("F(a)")});
  const auto r = translate("reach a", fixtures::tiny_bundle(), {}, backend);
  CHECK(r.runs[0].gateway_error == std::optional<std::string>("rate limited"));
  CHECK(r.runs[0].failed);
  CHECK(r.decision == Decision::majority);
  CHECK(r.reasoning_chains.size() == 2);

  auto dead = std::make_shared<ScriptedBackend>();
  try {
    translate("reach a", fixtures::tiny_bundle(), {}, dead);
    FAIL("expected failure");
  } catch (const AllRunsFailedError &e) {
    CHECK(e.gateway_only());
  }
}

TEST_CASE("bounded work and determinism") {
  std::mt19937 rng(5);
  const std::vector<std::string> pool = {answer("F(a)"), answer("G(b)"), "LTL: F(a &", answer("a & !a"), "nothing",
                                         answer("F(a) | G(c)")};
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<std::vector<std::string>> scripts(3);
    for (auto &s : scripts) {
      for (int i = 0; i < 5; ++i) {
        s.push_back(pool[rng() % pool.size()]);
      }
    }
    PipelineConfig cfg;
    auto b1 = fixtures::per_run(scripts);
    auto b2 = fixtures::per_run(scripts);
    std::optional<TranslationResult> r1, r2;
    try {
      r1 = translate("reach a", fixtures::tiny_bundle(), cfg, b1);
    } catch (const AllRunsFailedError &) {
    }
    try {
      r2 = translate("reach a", fixtures::tiny_bundle(), cfg, b2);
    } catch (const AllRunsFailedError &) {
    }
    CHECK(b1->call_count() <= cfg.k * (1 + cfg.max_retries_per_run));
    CHECK(b1->prompts().size() == b2->prompts().size());
    REQUIRE(r1.has_value() == r2.has_value());
    if (r1) {
      check_gate(*r1);
      CHECK(*r1->final_formula == *r2->final_formula);
      CHECK(r1->decision == r2->decision);
      CHECK(r1->confidence_scores == r2->confidence_scores);
      CHECK(r1->reasoning_chains == r2->reasoning_chains);
    }
  }
}

TEST_CASE("test-time SRL injection") {
  auto lexicon = std::make_shared<RoleLexicon>(parse_lexicon("[verbs]\nreach destination\n"));
  PipelineConfig cfg;
  cfg.inject_test_srl = true;
  Translator translator(fixtures::per_run({}), fixtures::tiny_bundle(), lexicon);
  const std::string prompt = translator.initial_prompt("reach a", cfg);
  const std::string tail = "\nSpecification: reach a\nSRL: reach [verb] a [destination]\n";
  CHECK(prompt.substr(prompt.size() - tail.size()) == tail);
  const std::string plain = Translator(fixtures::per_run({}), fixtures::tiny_bundle()).initial_prompt("reach a", {});
  CHECK(plain.substr(plain.size() - 24) == "\nSpecification: reach a\n");
  CHECK_THROWS_AS(Translator(fixtures::per_run({}), fixtures::tiny_bundle()).initial_prompt("reach a", cfg),
                  std::invalid_argument);
}

TEST_CASE("configuration checks") {
  PipelineConfig even;
  even.k = 2;
  CHECK_THROWS_AS(run({}, even), std::invalid_argument);
  PipelineConfig zero;
  zero.max_retries_per_run = 0;
  CHECK_THROWS_AS(run({}, zero), std::invalid_argument);
  PromptBundle filled = fixtures::tiny_bundle();
  filled.test_specification = "already there";
  CHECK_THROWS_AS(Translator(fixtures::per_run({}), filled), std::invalid_argument);
}

TEST_CASE("structured report") {
  const auto r = run({{"LTL: F(a & ", answer("F(a & F(b))")}, {answer("F(a & F(b))")}, {answer("F(a & F(b))")}});
  std::ostringstream out;
  write_report(out, "reach a and later b", r);
  std::istringstream in(out.str());
  std::vector<nlohmann::json> lines;
  for (std::string line; std::getline(in, line);) {
    lines.push_back(nlohmann::json::parse(line));
  }
  REQUIRE(lines.size() == 5);
  CHECK(lines[0]["schema_version"] == kReportSchemaVersion);
  CHECK(lines[0]["type"] == "result");
  CHECK(lines[0]["decision"] == "majority");
  CHECK(lines[0]["final_infix"] == "F(a & F(b))");
  CHECK(lines[0]["final_prefix"] == "F & a F b");
  CHECK(lines[1]["type"] == "attempt");
  CHECK(lines[1]["run"] == 0);
  CHECK(lines[2]["checker_outcome"] == "ok");
}
