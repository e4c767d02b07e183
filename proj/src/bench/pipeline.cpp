#include <omp.h>

#include <algorithm>
#include <cmath>

#include "gge/errors.hpp"
#include "gge/qa_bench.hpp"
#include "gge/tasks.hpp"

namespace gge {

std::string knowledge_line(const KnowledgeGraph& kg, const Triple& t) {
  return kg.entity_name(t.subject) + " | " + kg.relation_name(t.relation) + " | " + kg.entity_name(t.object);
}

PredictionRecord answer_question(const QAExample& ex, const KnowledgeGraph& kg, LlmGateway& gateway,
                                 const PipelineConfig& config) {
  PredictionRecord rec;
  rec.id = ex.id;
  std::vector<std::string> predicted;
  try {
    FallbackReason reason = FallbackReason::ConstructionFailed;
    std::optional<GuidanceGraph> gg;
    try {
      gg = construct(ex.question, ex.id, gateway);
      if (has_errors(validate(*gg))) gg.reset();
    } catch (const TaskError& e) {
      rec.error = std::string("construction: ") + e.what();
    } catch (const RuleError& e) {
      rec.error = std::string("construction: ") + e.what();
    }

    if (gg) {
      ExplorationResult result = explore(*gg, kg, gateway, ex.id, config.explore);
      if (config.keep_trace) rec.trace = result.trace;
      if (auto* grounded = std::get_if<Grounded>(&result.outcome)) {
        rec.grounded = true;
        for (const Triple& t : grounded->subgraph) rec.knowledge.push_back(knowledge_line(kg, t));
        predicted = tasks::final_answer(gateway, ex.id, ex.question, rec.knowledge);
      } else {
        reason = std::get<Fallback>(result.outcome).reason;
      }
    }

    if (!rec.grounded) {
      rec.fallback_reason = reason;
      if (config.fallback) predicted = tasks::direct_answer(gateway, ex.id, ex.question);
    }
  } catch (const ProviderError& e) {
    rec.error = e.what();
    rec.provider_failure = true;
    predicted.clear();
  } catch (const TaskError& e) {
    rec.error = e.what();
    predicted.clear();
  }

  for (auto& p : predicted) {
    if (std::find(rec.predicted.begin(), rec.predicted.end(), p) == rec.predicted.end()) {
      rec.predicted.push_back(std::move(p));
    }
  }
  rec.match = score(rec.predicted, ex.answers);
  rec.cost = gateway.ledger_snapshot(ex.id);
  return rec;
}

BenchAggregates aggregate(const std::vector<PredictionRecord>& records) {
  BenchAggregates a;
  if (records.empty()) return a;
  const auto n = static_cast<double>(records.size());
  double partial = 0, complete = 0, calls = 0, in = 0, out = 0, total = 0;
  for (const auto& r : records) {
    partial += r.match.partial;
    complete += r.match.complete;
    calls += static_cast<double>(r.cost.llm_calls);
    in += static_cast<double>(r.cost.input_tokens);
    out += static_cast<double>(r.cost.output_tokens);
    total += static_cast<double>(r.cost.total_tokens);
  }
  auto one_decimal = [](double x) { return std::round(x * 10.0) / 10.0; };
  a.partial_rate = one_decimal(100.0 * partial / n);
  a.complete_rate = one_decimal(100.0 * complete / n);
  a.mean_llm_calls = calls / n;
  a.mean_input_tokens = in / n;
  a.mean_output_tokens = out / n;
  a.mean_total_tokens = total / n;
  return a;
}

BenchReport run_benchmark(const std::vector<QAExample>& dataset, const KnowledgeGraph& kg, LlmGateway& gateway,
                          const PipelineConfig& config, int jobs) {
  BenchReport report;
  report.records.resize(dataset.size());
  const auto n = static_cast<std::int64_t>(dataset.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      report.records[idx] = answer_question(dataset[idx], kg, gateway, config);
    } catch (const std::exception& e) {
      PredictionRecord rec;
      rec.id = dataset[idx].id;
      rec.error = e.what();
      rec.match = score({}, dataset[idx].answers);
      rec.cost = gateway.ledger_snapshot(rec.id);
      report.records[idx] = std::move(rec);
    }
  }

  report.aggregates = aggregate(report.records);
  return report;
}

}  // namespace gge
