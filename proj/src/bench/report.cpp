#include "gge/qa_bench.hpp"

namespace gge {

nlohmann::json to_json(const PredictionRecord& r) {
  nlohmann::json outcome{{"kind", r.grounded ? "grounded" : "fallback"}};
  if (r.fallback_reason) outcome["reason"] = to_string(*r.fallback_reason);
  nlohmann::json j{{"id", r.id},
                   {"predicted", r.predicted},
                   {"outcome", std::move(outcome)},
                   {"partial", r.match.partial},
                   {"complete", r.match.complete},
                   {"cost", r.cost},
                   {"knowledge", r.knowledge}};
  if (r.error) j["error"] = *r.error;
  return j;
}

nlohmann::json to_json(const BenchAggregates& a) {
  return {{"partial_rate", a.partial_rate},
          {"complete_rate", a.complete_rate},
          {"mean_llm_calls", a.mean_llm_calls},
          {"mean_input_tokens", a.mean_input_tokens},
          {"mean_output_tokens", a.mean_output_tokens},
          {"mean_total_tokens", a.mean_total_tokens}};
}

nlohmann::json to_json(const BenchReport& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return {{"records", std::move(records)}, {"aggregates", to_json(r.aggregates)}};
}

}  // namespace gge
