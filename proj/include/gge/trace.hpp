#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gge {

enum class TraceKind {
  StartingPoint,
  ComponentSkipped,
  TargetSelected,
  StructuralFilter,
  RelationOffered,
  RelationSelected,
  RelationRejected,
  PruningFailed,
  EntitiesMapped,
  EdgeGrounded,
  HolisticRemoval,
  ClueEmptied,
  BranchDecision,
  EdgeUngrounded,
  Fallback,
};

std::string_view to_string(TraceKind kind);

struct TraceEvent {
  TraceKind kind;
  std::size_t round = 0;
  std::string clue;
  std::optional<std::size_t> edge;
  std::optional<std::size_t> before;
  std::optional<std::size_t> after;
  std::optional<std::size_t> candidates;  // entities behind an offered relation list
  std::vector<std::string> items;  // entity or relation names, or phrases
  std::string detail;
};

class ExplorationTrace {
 public:
  void add(TraceEvent e) { events_.push_back(std::move(e)); }
  [[nodiscard]] const std::vector<TraceEvent>& events() const noexcept { return events_; }
  [[nodiscard]] std::size_t count(TraceKind kind) const;
  [[nodiscard]] std::vector<const TraceEvent*> of(TraceKind kind) const;

 private:
  std::vector<TraceEvent> events_;
};

nlohmann::json to_json(const TraceEvent& e);
// One JSON object per line, each tagged with `question_id`.
std::string to_jsonl(const ExplorationTrace& trace, const std::string& question_id);

}  // namespace gge
