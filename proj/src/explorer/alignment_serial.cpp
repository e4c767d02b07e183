#include <deque>

#include "gge/alignment.hpp"

namespace gge {

bool has_support(const KnowledgeGraph& kg, EntityId e, const EntitySet& targets,
                 std::optional<RelationId> relation) {
  if (targets.empty()) return false;
  auto row = kg.incident(e);
  // Scan whichever side is shorter; both probes are logarithmic.
  if (row.size() <= targets.size()) {
    for (const Neighbor& n : row) {
      if (relation && n.relation != *relation) continue;
      if (targets.contains(n.entity)) return true;
    }
    return false;
  }
  for (EntityId t : targets) {
    if (kg.has_edge(e, t, relation)) return true;
  }
  return false;
}

namespace serial {

EntitySet filter_candidates(const KnowledgeGraph& kg, const EntitySet& candidates,
                            std::span<const ConnectivityConstraint> constraints) {
  std::vector<EntityId> keep;
  for (EntityId c : candidates) {
    bool ok = true;
    for (const auto& con : constraints) {
      if (!has_support(kg, c, con.anchors, con.required_relation)) {
        ok = false;
        break;
      }
    }
    if (ok) keep.push_back(c);
  }
  return EntitySet::from_sorted(std::move(keep));
}

std::vector<EntitySet> propagate_support(const KnowledgeGraph& kg, std::vector<EntitySet> domains,
                                         std::span<const SupportEdge> edges) {
  struct Arc {
    std::size_t from;
    std::size_t to;
    std::optional<RelationId> relation;
  };
  std::vector<Arc> arcs;
  for (const auto& e : edges) {
    arcs.push_back({e.a, e.b, e.relation});
    arcs.push_back({e.b, e.a, e.relation});
  }

  std::deque<std::size_t> work;
  std::vector<char> queued(arcs.size(), 1);
  for (std::size_t i = 0; i < arcs.size(); ++i) work.push_back(i);

  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    queued[i] = 0;
    const Arc& arc = arcs[i];
    const EntitySet& support = domains[arc.to];
    std::size_t removed = domains[arc.from].erase_if(
        [&](EntityId x) { return !has_support(kg, x, support, arc.relation); });
    if (removed == 0) continue;
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      if (arcs[j].to == arc.from && !queued[j]) {
        queued[j] = 1;
        work.push_back(j);
      }
    }
  }
  return domains;
}

}  // namespace serial
}  // namespace gge
