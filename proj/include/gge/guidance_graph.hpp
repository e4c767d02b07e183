#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gge {

class LlmGateway;

enum class ClueKind { Specific, Generic };

std::string_view to_string(ClueKind kind);

// Co-reference group label. Keywords sharing a group name one entity; the
// group label doubles as the id of the clue node built from it.
struct ClueId {
  std::string value;
  friend auto operator<=>(const ClueId&, const ClueId&) = default;
};

struct Keyword {
  std::string label;
  ClueKind kind = ClueKind::Generic;
  ClueId group;
};

struct Association {
  ClueId head_group;
  std::string label;  // may be empty
  ClueId tail_group;
};

struct ClueNode {
  ClueId id;
  std::string label;
  ClueKind kind = ClueKind::Generic;
};

struct ClueEdge {
  ClueId head;
  std::string label;
  ClueId tail;
};

inline constexpr std::string_view kDefaultEdgeLabel = "related to";

struct GuidanceGraph {
  std::vector<ClueNode> nodes;  // one per group, in first-appearance order
  std::vector<ClueEdge> edges;  // one per association, in input order
  std::string statement;
  // Leftover generic keywords that found no unlabeled incident edge.
  std::vector<std::string> dropped_generics;

  [[nodiscard]] const ClueNode* find(const ClueId& id) const;
  // Edge phrase in edge order: "<head label> <edge label> <tail label>".
  [[nodiscard]] std::string phrase(std::size_t edge_index) const;
};

// Deterministic rule engine turning extracted keywords and associations
// into a Guidance Graph:
//  - one node per co-reference group, labeled by its specific keyword when
//    present, else by its first generic keyword;
//  - one edge per association, labeled by the association itself, else by
//    a leftover generic of either endpoint group (head first), else by
//    kDefaultEdgeLabel;
//  - no edge label may equal a specific node label.
// Throws RuleError for groups holding conflicting specific keywords,
// associations naming unknown groups, or self-associations.
GuidanceGraph apply_rules(const std::vector<Keyword>& keywords,
                          const std::vector<Association>& associations);

// Rewrite -> ExtractKeywords -> MineRelations -> apply_rules. Throws
// TaskError (including "no keywords"), RuleError or ProviderError.
GuidanceGraph construct(const std::string& question, const std::string& question_id,
                        LlmGateway& gateway);

struct Finding {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string code;
  std::string message;
};

std::vector<Finding> validate(const GuidanceGraph& gg);
bool has_errors(const std::vector<Finding>& findings);

// Connected components over node indices, each sorted; ordered by first node.
std::vector<std::vector<std::size_t>> connected_components(const GuidanceGraph& gg);

nlohmann::json to_json(const GuidanceGraph& gg);
nlohmann::json to_json(const std::vector<Finding>& findings);

}  // namespace gge
