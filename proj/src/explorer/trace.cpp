#include <algorithm>
#include <array>

#include "gge/trace.hpp"

namespace gge {

std::string_view to_string(TraceKind kind) {
  static constexpr std::array<std::string_view, 15> kNames{
      "starting_point", "component_skipped", "target_selected", "structural_filter",
      "relation_offered", "relation_selected", "relation_rejected", "pruning_failed",
      "entities_mapped", "edge_grounded", "holistic_removal", "clue_emptied",
      "branch_decision", "edge_ungrounded", "fallback",
  };
  return kNames.at(static_cast<std::size_t>(kind));
}

std::size_t ExplorationTrace::count(TraceKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events_.begin(), events_.end(), [&](const TraceEvent& e) { return e.kind == kind; }));
}

std::vector<const TraceEvent*> ExplorationTrace::of(TraceKind kind) const {
  std::vector<const TraceEvent*> out;
  for (const auto& e : events_) {
    if (e.kind == kind) out.push_back(&e);
  }
  return out;
}

nlohmann::json to_json(const TraceEvent& e) {
  nlohmann::json j{{"round", e.round}, {"event", to_string(e.kind)}};
  if (!e.clue.empty()) j["clue"] = e.clue;
  if (e.edge) j["edge"] = *e.edge;
  if (e.before) j["before"] = *e.before;
  if (e.after) j["after"] = *e.after;
  if (e.candidates) j["candidates"] = *e.candidates;
  if (!e.items.empty()) j["items"] = e.items;
  if (!e.detail.empty()) j["detail"] = e.detail;
  return j;
}

std::string to_jsonl(const ExplorationTrace& trace, const std::string& question_id) {
  std::string out;
  for (const auto& e : trace.events()) {
    nlohmann::json j = to_json(e);
    j["question_id"] = question_id;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace gge
