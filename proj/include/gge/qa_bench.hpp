#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gge/explorer.hpp"
#include "gge/llm_gateway.hpp"
#include "json.hpp"

namespace gge {

struct QAExample {
  std::string id;
  std::string question;
  std::vector<std::string> answers;
};

// JSON Lines: {"id": ..., "question": ..., "answers": [...]} per line.
// Throws IoError, or FormatError on bad lines, duplicate ids or empty answers.
std::vector<QAExample> load_dataset(const std::filesystem::path& path);
std::vector<QAExample> parse_dataset(std::istream& in, const std::string& source);

struct MatchScore {
  int partial = 0;
  int complete = 0;
  friend bool operator==(const MatchScore&, const MatchScore&) = default;
};

// Normalized exact match: partial when any gold answer was predicted,
// complete when all were.
MatchScore score(const std::vector<std::string>& predicted, const std::vector<std::string>& gold);

struct PipelineConfig {
  ExploreConfig explore;
  bool fallback = true;
  bool keep_trace = false;
};

struct PredictionRecord {
  std::string id;
  std::vector<std::string> predicted;
  bool grounded = false;
  std::optional<FallbackReason> fallback_reason;
  MatchScore match;
  CostLedger cost;
  std::vector<std::string> knowledge;  // subgraph lines fed to FinalAnswer
  std::optional<std::string> error;
  bool provider_failure = false;
  ExplorationTrace trace;  // empty unless PipelineConfig::keep_trace
};

// `subject | relation | object`
std::string knowledge_line(const KnowledgeGraph& kg, const Triple& t);

PredictionRecord answer_question(const QAExample& ex, const KnowledgeGraph& kg, LlmGateway& gateway,
                                 const PipelineConfig& config);

struct BenchAggregates {
  double partial_rate = 0;
  double complete_rate = 0;
  double mean_llm_calls = 0;
  double mean_input_tokens = 0;
  double mean_output_tokens = 0;
  double mean_total_tokens = 0;
  friend bool operator==(const BenchAggregates&, const BenchAggregates&) = default;
};

struct BenchReport {
  std::vector<PredictionRecord> records;  // dataset order
  BenchAggregates aggregates;
};

// Percentages rounded to one decimal; means are exact.
BenchAggregates aggregate(const std::vector<PredictionRecord>& records);

// Questions run on up to `jobs` OpenMP threads; records keep dataset order.
BenchReport run_benchmark(const std::vector<QAExample>& dataset, const KnowledgeGraph& kg, LlmGateway& gateway,
                          const PipelineConfig& config, int jobs = 1);

nlohmann::json to_json(const PredictionRecord& r);
nlohmann::json to_json(const BenchAggregates& a);
nlohmann::json to_json(const BenchReport& r);

}  // namespace gge
