#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gge/alignment.hpp"
#include "gge/guidance_graph.hpp"
#include "gge/knowledge_graph.hpp"
#include "gge/llm_gateway.hpp"
#include "gge/trace.hpp"

namespace gge {

// Relation lists offered to SelectRelation are capped at this size, keeping
// the relations with the most connecting triples.
inline constexpr std::size_t kMaxRelationCandidates = 30;

struct ClueMapping {
  std::map<ClueId, EntitySet> node_map;
  // Grounded KG relation per Guidance-Graph edge index.
  std::map<std::size_t, RelationId> edge_ground;
  // Branch starts removed by branch selection; never mapped again.
  std::set<ClueId> pruned_clues;
  // Edges whose relation could not be grounded; they yield no triples and
  // impose no support constraint.
  std::set<std::size_t> ungrounded_edges;

  [[nodiscard]] bool is_mapped(const ClueId& id) const { return node_map.contains(id); }
  [[nodiscard]] const EntitySet& at(const ClueId& id) const { return node_map.at(id); }

  // Removes the clue's entity set and every grounding of an incident edge.
  void unmap(const ClueId& id, const GuidanceGraph& gg);
  void prune(const ClueId& id, const GuidanceGraph& gg);
};

enum class Orientation { TargetIsHead, TargetIsTail };

// One Guidance-Graph edge joining the target to an already mapped clue.
struct EdgeContext {
  std::size_t edge = 0;
  Orientation orientation = Orientation::TargetIsHead;
  ClueId mapped;
};

struct TargetContext {
  ClueId next;
  std::vector<EdgeContext> contexts;
};

struct ExploreConfig {
  bool structural_alignment = true;
  bool branch_selection = true;
  bool context_phrases = true;
  std::optional<std::uint64_t> seed;     // random target tie-break when set
  std::optional<std::size_t> max_rounds;  // default 2 x clue count
};

enum class FallbackReason { NoStartingPoint, ConstructionFailed, PruningExhausted, RoundLimit };

std::string_view to_string(FallbackReason reason);

struct Grounded {
  std::vector<Triple> subgraph;
  ClueMapping mapping;
};

struct Fallback {
  FallbackReason reason;
};

using ExplorationOutcome = std::variant<Grounded, Fallback>;

// Shared state of one question's exploration.
struct ExplorationEnv {
  const GuidanceGraph& gg;
  const KnowledgeGraph& kg;
  LlmGateway& gateway;
  std::string question_id;
  ExploreConfig config;
  ExplorationTrace* trace = nullptr;
  std::size_t round = 0;

  void record(TraceEvent event) const;
};

// Specific clues whose label resolves by name. Generic clues never seed.
ClueMapping find_starting_points(const GuidanceGraph& gg, const KnowledgeGraph& kg);

// Unmapped, unpruned clue adjacent to a mapped clue, with all such contexts.
// Lowest clue id wins unless `rng` is given. Clues in `excluded` are skipped.
std::optional<TargetContext> select_target(const GuidanceGraph& gg, const ClueMapping& m,
                                           const std::set<ClueId>& excluded = {},
                                           std::mt19937_64* rng = nullptr);

// Index into `target.contexts` with the smallest mapped set (ties: clue id).
std::size_t primary_context(const TargetContext& target, const ClueMapping& m);

// Candidates connected to every constraint's anchor set. No LLM involved.
EntitySet structural_alignment_filter(const KnowledgeGraph& kg, const EntitySet& candidates,
                                      std::span<const ConnectivityConstraint> constraints);

struct AlignmentLog {
  std::vector<std::pair<ClueId, EntitySet>> removed;  // per clue, entities dropped
  std::vector<ClueId> emptied;                       // clues whose set became empty
};

// Greatest fixpoint of pairwise support over all Guidance-Graph edges with
// both ends mapped. Grounded edges require their relation. Emptied sets are
// removed from the result. No LLM involved.
ClueMapping holistic_alignment(const GuidanceGraph& gg, const KnowledgeGraph& kg, const ClueMapping& m,
                               AlignmentLog* log = nullptr);

struct PruningSuccess {
  RelationId relation;
  EntitySet mapped;
};

enum class PruningFailure { EmptyRelationSet, ConstraintViolation, Unparseable, EmptyMapping };

std::string_view to_string(PruningFailure failure);

struct PruningFailed {
  PruningFailure reason;
  std::string detail;
};

using PruningResult = std::variant<PruningSuccess, PruningFailed>;

// Relation selection for `target` through its context `primary`. Propagates
// ProviderError.
PruningResult context_pruning(ExplorationEnv& env, const TargetContext& target, std::size_t primary,
                              const ClueMapping& m);

struct BranchDecision {
  enum class Choice { Current, Related };
  Choice choice;
  ClueId pruned;
};

// Asks the LLM which of two contexts of `target` matches the query better
// and prunes the loser's clue in `m`.
BranchDecision dynamic_branch_select(ExplorationEnv& env, const TargetContext& target, std::size_t failed,
                                     std::size_t alternative, ClueMapping& m);

// Grounds every edge whose endpoints are both mapped but that no round
// grounded, then re-runs holistic alignment (when enabled).
ClueMapping ground_residual_edges(ExplorationEnv& env, ClueMapping m);

// All KG triples realising grounded edges between mapped sets, stored
// direction preserved, sorted and deduplicated.
std::vector<Triple> assemble_subgraph(const GuidanceGraph& gg, const KnowledgeGraph& kg, const ClueMapping& m);

struct ExplorationResult {
  ExplorationOutcome outcome;
  ExplorationTrace trace;
};

ExplorationResult explore(const GuidanceGraph& gg, const KnowledgeGraph& kg, LlmGateway& gateway,
                          const std::string& question_id, const ExploreConfig& config = {});

}  // namespace gge
