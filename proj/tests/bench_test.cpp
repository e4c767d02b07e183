#include <gtest/gtest.h>

#include <sstream>

#include "gge/errors.hpp"
#include "gge/qa_bench.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace gge;

namespace {

std::shared_ptr<ScriptedProvider> fixture_transcript() {
  return ScriptedProvider::from_file(fx::path("transcript.json"));
}

QAExample q1() { return {"q1", fx::q1_text(), {"Inception"}}; }
QAExample f1() { return {"f1", "Who is the father of Banana Man?", {"Nobody Known"}}; }

}  // namespace

TEST(Score, Examples) {
  EXPECT_EQ(score({"Inception"}, {"Inception", "Dunkirk"}), (MatchScore{1, 0}));
  EXPECT_EQ(score({"2010"}, {"2010"}), (MatchScore{1, 1}));
  EXPECT_EQ(score({}, {"London"}), (MatchScore{0, 0}));
  EXPECT_EQ(score({"christopher_nolan "}, {"Christopher Nolan"}), (MatchScore{1, 1}));
}

TEST(Score, ExhaustiveSweepOverThreeAnswers) {
  const std::vector<std::string> universe{"Inception", "Interstellar", "Dunkirk"};
  const std::vector<std::string> spelled{"inception", "INTERSTELLAR ", "dunkirk"};
  int pairs = 0;
  // predicted draws from both spellings (6 bits), gold from the canonical ones (3 bits)
  for (int p = 0; p < 64; ++p) {
    for (int g = 1; g < 8; ++g) {
      std::vector<std::string> pred, gold;
      for (int i = 0; i < 3; ++i) {
        if (p & (1 << i)) pred.push_back(universe[i]);
        if (p & (1 << (i + 3))) pred.push_back(spelled[i]);
        if (g & (1 << i)) gold.push_back(universe[i]);
      }
      auto s = score(pred, gold);
      auto [partial, complete] = oracle::score(pred, gold);
      ASSERT_EQ(s.partial, partial);
      ASSERT_EQ(s.complete, complete);
      ASSERT_TRUE(!s.complete || s.partial);
      if (gold.size() == 1) {
        ASSERT_EQ(s.partial, s.complete);
      }
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 64 * 7);
}

TEST(Dataset, ParseAndErrors) {
  std::istringstream good(R"({"id": "a", "question": "q?", "answers": ["x", "y"]}
# comment lines are not JSON, so they are errors

)");
  EXPECT_THROW(parse_dataset(good, "d"), FormatError);

  std::istringstream ok("{\"id\": \"a\", \"question\": \"q?\", \"answers\": [\"x\"]}\n\n"
                        "{\"id\": \"b\", \"question\": \"r?\", \"answers\": [\"y\", \"z\"]}\n");
  auto d = parse_dataset(ok, "d");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[1].answers, (std::vector<std::string>{"y", "z"}));

  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_dataset(in, "d");
    } catch (const FormatError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("{\"id\":\"a\",\"question\":\"q\",\"answers\":[\"x\"]}\n{\"id\":\"a\",\"question\":\"q\",\"answers\":[\"x\"]}\n"), 2u);
  EXPECT_EQ(line_of("{\"id\":\"a\",\"question\":\"q\",\"answers\":[]}\n"), 1u);
  EXPECT_EQ(line_of("{\"id\":\"a\",\"question\":\"q\"}\n"), 1u);
  EXPECT_EQ(line_of("\n\n{oops\n"), 3u);
  EXPECT_THROW(load_dataset("/nonexistent/d.jsonl"), IoError);
  EXPECT_EQ(load_dataset(fx::path("questions.jsonl")).size(), 5u);
}

TEST(AnswerQuestion, Q1HappyPath) {
  LlmGateway gw(fixture_transcript());
  auto rec = answer_question(q1(), fx::movies(), gw, {});
  EXPECT_EQ(rec.predicted, std::vector<std::string>{"Inception"});
  EXPECT_TRUE(rec.grounded);
  EXPECT_EQ(rec.match, (MatchScore{1, 1}));
  // Rewrite, ExtractKeywords, MineRelations, SelectRelation, FinalAnswer
  EXPECT_EQ(rec.cost, (CostLedger{5, 85 + 160 + 190 + 120 + 140, 14 + 52 + 40 + 3 + 9, 695 + 118}));
  EXPECT_EQ(rec.knowledge, (std::vector<std::string>{"Inception | directed_by | Christopher_Nolan",
                                                     "Inception | starring | Leonardo_DiCaprio"}));
  EXPECT_FALSE(rec.error.has_value());
}

TEST(AnswerQuestion, FallbackDirectAnswer) {
  LlmGateway gw(fixture_transcript());
  auto rec = answer_question(f1(), fx::movies(), gw, {});
  EXPECT_FALSE(rec.grounded);
  EXPECT_EQ(rec.fallback_reason, FallbackReason::NoStartingPoint);
  EXPECT_EQ(rec.predicted, std::vector<std::string>{"guess"});
  EXPECT_EQ(rec.match, (MatchScore{0, 0}));
  EXPECT_EQ(rec.cost.llm_calls, 4u);
}

TEST(AnswerQuestion, FallbackDisabled) {
  LlmGateway gw(fixture_transcript());
  PipelineConfig cfg;
  cfg.fallback = false;
  auto rec = answer_question(f1(), fx::movies(), gw, cfg);
  EXPECT_TRUE(rec.predicted.empty());
  EXPECT_EQ(rec.fallback_reason, FallbackReason::NoStartingPoint);
  EXPECT_EQ(rec.cost.llm_calls, 3u);
}

TEST(AnswerQuestion, ProviderErrorRecorded) {
  fx::Script s;
  s.add("q1", "Rewrite", R"({"statement": "s"})");
  LlmGateway gw(s.provider());
  auto rec = answer_question(q1(), fx::movies(), gw, {});
  EXPECT_TRUE(rec.provider_failure);
  ASSERT_TRUE(rec.error.has_value());
  EXPECT_NE(rec.error->find("transcript exhausted: q1/ExtractKeywords"), std::string::npos);
  EXPECT_TRUE(rec.predicted.empty());
  EXPECT_EQ(rec.cost.llm_calls, 1u);
}

TEST(AnswerQuestion, ConstructionFailureFallsBack) {
  fx::Script s;
  s.add("q", "Rewrite", R"({"statement": "s"})")
      .add("q", "ExtractKeywords", R"({"keywords": []})")
      .add("q", "DirectAnswer", R"({"answers": ["London"]})");
  LlmGateway gw(s.provider());
  auto rec = answer_question({"q", "Where?", {"London"}}, fx::movies(), gw, {});
  EXPECT_EQ(rec.fallback_reason, FallbackReason::ConstructionFailed);
  EXPECT_EQ(rec.match, (MatchScore{1, 1}));
  EXPECT_EQ(rec.cost.llm_calls, 3u);
}

TEST(Aggregate, RatesAndMeans) {
  std::vector<PredictionRecord> recs(5);
  for (int i = 0; i < 5; ++i) {
    recs[i].match = i < 3 ? MatchScore{1, i == 0} : MatchScore{0, 0};
    recs[i].cost = CostLedger{static_cast<std::uint64_t>(i), 10u * i, 1, 10u * i + 1};
  }
  auto a = aggregate(recs);
  EXPECT_EQ(a.partial_rate, 60.0);
  EXPECT_EQ(a.complete_rate, 20.0);
  EXPECT_DOUBLE_EQ(a.mean_llm_calls, 2.0);
  EXPECT_DOUBLE_EQ(a.mean_input_tokens, 20.0);
  EXPECT_DOUBLE_EQ(a.mean_output_tokens, 1.0);
  EXPECT_DOUBLE_EQ(a.mean_total_tokens, 21.0);

  std::vector<PredictionRecord> thirds(3);
  thirds[0].match = {1, 1};
  EXPECT_EQ(aggregate(thirds).partial_rate, 33.3);
  thirds[1].match = {1, 1};
  EXPECT_EQ(aggregate(thirds).partial_rate, 66.7);
}

TEST(RunBenchmark, FixtureAllCorrectAndJobsInvariant) {
  auto dataset = load_dataset(fx::path("questions.jsonl"));
  LlmGateway gw1(fixture_transcript());
  auto r1 = run_benchmark(dataset, fx::movies(), gw1, {}, 1);
  EXPECT_EQ(r1.aggregates.partial_rate, 100.0);
  EXPECT_EQ(r1.aggregates.complete_rate, 100.0);
  EXPECT_EQ(r1.aggregates, aggregate(r1.records));
  for (std::size_t i = 0; i < dataset.size(); ++i) EXPECT_EQ(r1.records[i].id, dataset[i].id);

  LlmGateway gw4(fixture_transcript());
  auto r4 = run_benchmark(dataset, fx::movies(), gw4, {}, 4);
  EXPECT_EQ(to_json(r1).dump(), to_json(r4).dump());
}

TEST(RunBenchmark, PerQuestionErrorsDoNotAbort) {
  std::vector<QAExample> dataset{q1(), {"zz", "Unknown?", {"x"}}};
  LlmGateway gw(fixture_transcript());
  auto r = run_benchmark(dataset, fx::movies(), gw, {}, 2);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].match, (MatchScore{1, 1}));
  EXPECT_TRUE(r.records[1].error.has_value());
  EXPECT_EQ(r.aggregates.partial_rate, 50.0);
}

TEST(Report, JsonShape) {
  LlmGateway gw(fixture_transcript());
  auto rec = answer_question(f1(), fx::movies(), gw, {});
  auto j = to_json(rec);
  EXPECT_EQ(j["outcome"], nlohmann::json({{"kind", "fallback"}, {"reason", "NoStartingPoint"}}));
  EXPECT_EQ(j["partial"], 0);
  EXPECT_EQ(j["cost"]["llm_calls"], 4);
  EXPECT_EQ(j["cost"]["total_tokens"], j["cost"]["input_tokens"].get<int>() + j["cost"]["output_tokens"].get<int>());
}
