#include <algorithm>
#include <map>

#include "gge/explorer.hpp"

namespace gge {

std::string_view to_string(FallbackReason reason) {
  switch (reason) {
    case FallbackReason::NoStartingPoint: return "NoStartingPoint";
    case FallbackReason::ConstructionFailed: return "ConstructionFailed";
    case FallbackReason::PruningExhausted: return "PruningExhausted";
    case FallbackReason::RoundLimit: return "RoundLimit";
  }
  return "Unknown";
}

std::string_view to_string(PruningFailure failure) {
  switch (failure) {
    case PruningFailure::EmptyRelationSet: return "empty_relation_set";
    case PruningFailure::ConstraintViolation: return "constraint_violation";
    case PruningFailure::Unparseable: return "unparseable";
    case PruningFailure::EmptyMapping: return "empty_mapping";
  }
  return "unknown";
}

void ClueMapping::unmap(const ClueId& id, const GuidanceGraph& gg) {
  node_map.erase(id);
  for (std::size_t i = 0; i < gg.edges.size(); ++i) {
    if (gg.edges[i].head == id || gg.edges[i].tail == id) edge_ground.erase(i);
  }
}

void ClueMapping::prune(const ClueId& id, const GuidanceGraph& gg) {
  unmap(id, gg);
  pruned_clues.insert(id);
}

ClueMapping find_starting_points(const GuidanceGraph& gg, const KnowledgeGraph& kg) {
  ClueMapping m;
  for (const auto& node : gg.nodes) {
    if (node.kind != ClueKind::Specific) continue;
    EntitySet hits = kg.entities_by_name(node.label);
    if (!hits.empty()) m.node_map.emplace(node.id, std::move(hits));
  }
  return m;
}

std::optional<TargetContext> select_target(const GuidanceGraph& gg, const ClueMapping& m,
                                           const std::set<ClueId>& excluded, std::mt19937_64* rng) {
  std::map<ClueId, TargetContext> eligible;
  for (std::size_t i = 0; i < gg.edges.size(); ++i) {
    const ClueEdge& e = gg.edges[i];
    auto consider = [&](const ClueId& next, const ClueId& other, Orientation o) {
      if (m.is_mapped(next) || !m.is_mapped(other)) return;
      if (m.pruned_clues.contains(next) || excluded.contains(next)) return;
      auto& t = eligible[next];
      t.next = next;
      t.contexts.push_back(EdgeContext{i, o, other});
    };
    consider(e.head, e.tail, Orientation::TargetIsHead);
    consider(e.tail, e.head, Orientation::TargetIsTail);
  }
  if (eligible.empty()) return std::nullopt;
  if (rng) {
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    return std::next(eligible.begin(), static_cast<std::ptrdiff_t>(pick(*rng)))->second;
  }
  return eligible.begin()->second;
}

std::size_t primary_context(const TargetContext& target, const ClueMapping& m) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < target.contexts.size(); ++i) {
    const auto& c = target.contexts[i];
    const auto& b = target.contexts[best];
    auto size_of = [&](const EdgeContext& x) { return m.is_mapped(x.mapped) ? m.at(x.mapped).size() : 0; };
    if (std::pair(size_of(c), c.mapped) < std::pair(size_of(b), b.mapped)) best = i;
  }
  return best;
}

EntitySet structural_alignment_filter(const KnowledgeGraph& kg, const EntitySet& candidates,
                                      std::span<const ConnectivityConstraint> constraints) {
  return filter_candidates(kg, candidates, constraints);
}

ClueMapping holistic_alignment(const GuidanceGraph& gg, const KnowledgeGraph& kg, const ClueMapping& m,
                               AlignmentLog* log) {
  std::vector<ClueId> clues;
  std::vector<EntitySet> domains;
  std::map<ClueId, std::size_t> slot;
  for (const auto& [id, set] : m.node_map) {
    slot.emplace(id, clues.size());
    clues.push_back(id);
    domains.push_back(set);
  }

  std::vector<SupportEdge> edges;
  for (std::size_t i = 0; i < gg.edges.size(); ++i) {
    if (m.ungrounded_edges.contains(i)) continue;
    auto h = slot.find(gg.edges[i].head);
    auto t = slot.find(gg.edges[i].tail);
    if (h == slot.end() || t == slot.end()) continue;
    std::optional<RelationId> rel;
    if (auto g = m.edge_ground.find(i); g != m.edge_ground.end()) rel = g->second;
    edges.push_back(SupportEdge{h->second, t->second, rel});
  }

  std::vector<EntitySet> result = propagate_support(kg, domains, edges);

  ClueMapping out = m;
  for (std::size_t d = 0; d < clues.size(); ++d) {
    if (result[d].size() != domains[d].size() && log) {
      log->removed.emplace_back(clues[d], set_difference(domains[d], result[d]));
    }
    if (result[d].empty()) {
      out.unmap(clues[d], gg);
      if (log) log->emptied.push_back(clues[d]);
    } else {
      out.node_map[clues[d]] = std::move(result[d]);
    }
  }
  return out;
}

std::vector<Triple> assemble_subgraph(const GuidanceGraph& gg, const KnowledgeGraph& kg, const ClueMapping& m) {
  std::vector<Triple> out;
  for (const auto& [edge, relation] : m.edge_ground) {
    const ClueEdge& e = gg.edges.at(edge);
    if (!m.is_mapped(e.head) || !m.is_mapped(e.tail)) continue;
    const EntitySet& heads = m.at(e.head);
    const EntitySet& tails = m.at(e.tail);
    for (EntityId a : heads) {
      for (const Neighbor& n : kg.incident(a)) {
        if (n.relation != relation || !tails.contains(n.entity)) continue;
        out.push_back(n.direction == Direction::Out ? Triple{a, relation, n.entity}
                                                    : Triple{n.entity, relation, a});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gge
