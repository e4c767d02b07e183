#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gge/knowledge_graph.hpp"

namespace gge {

// A candidate passes when it has an edge (of `required_relation`, if set)
// to at least one member of `anchors`.
struct ConnectivityConstraint {
  EntitySet anchors;
  std::optional<RelationId> required_relation;
};

// Undirected support requirement between two domains of a support problem.
struct SupportEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::optional<RelationId> relation;
};

// True when `e` has an edge (optionally restricted to `relation`) to some
// member of `targets`. Direction-agnostic.
bool has_support(const KnowledgeGraph& kg, EntityId e, const EntitySet& targets,
                 std::optional<RelationId> relation);

// Candidates satisfying every constraint. No constraints keeps everything.
// OpenMP-parallel over candidates.
EntitySet filter_candidates(const KnowledgeGraph& kg, const EntitySet& candidates,
                            std::span<const ConnectivityConstraint> constraints);

// Greatest arc-consistent sub-domains: every surviving entity of domain a
// has support in domain b for every edge (a, b), and vice versa. Computed
// with synchronous parallel rounds. Emptied domains stay in the result.
std::vector<EntitySet> propagate_support(const KnowledgeGraph& kg, std::vector<EntitySet> domains,
                                         std::span<const SupportEdge> edges);

// Serial reference versions. Same contracts; kept for differential tests
// and the benchmark baseline.
namespace serial {

EntitySet filter_candidates(const KnowledgeGraph& kg, const EntitySet& candidates,
                            std::span<const ConnectivityConstraint> constraints);

// AC-3 style worklist.
std::vector<EntitySet> propagate_support(const KnowledgeGraph& kg, std::vector<EntitySet> domains,
                                         std::span<const SupportEdge> edges);

}  // namespace serial
}  // namespace gge
