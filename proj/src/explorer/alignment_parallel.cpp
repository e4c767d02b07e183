#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "gge/alignment.hpp"

namespace gge {
namespace {

// Below this many work items the fork/join overhead dominates.
constexpr std::int64_t kParallelThreshold = 1024;

// Domain snapshot with per-member liveness; membership probes see only
// live members.
struct LiveDomain {
  const std::vector<EntityId>* members = nullptr;
  std::vector<unsigned char> alive;

  [[nodiscard]] bool live(EntityId e) const {
    auto it = std::lower_bound(members->begin(), members->end(), e);
    return it != members->end() && *it == e && alive[static_cast<std::size_t>(it - members->begin())];
  }
};

bool has_live_support(const KnowledgeGraph& kg, EntityId e, const LiveDomain& targets,
                      std::optional<RelationId> relation) {
  auto row = kg.incident(e);
  if (targets.members->size() < row.size()) {
    for (std::size_t p = 0; p < targets.members->size(); ++p) {
      if (targets.alive[p] && kg.has_edge(e, (*targets.members)[p], relation)) return true;
    }
    return false;
  }
  for (const Neighbor& n : row) {
    if (relation && n.relation != *relation) continue;
    if (targets.live(n.entity)) return true;
  }
  return false;
}

}  // namespace

EntitySet filter_candidates(const KnowledgeGraph& kg, const EntitySet& candidates,
                            std::span<const ConnectivityConstraint> constraints) {
  const auto n = static_cast<std::int64_t>(candidates.size());
  std::vector<unsigned char> keep(candidates.size(), 0);

#pragma omp parallel for schedule(dynamic, 64) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    const EntityId c = candidates[static_cast<std::size_t>(i)];
    bool ok = true;
    for (const auto& con : constraints) {
      if (!has_support(kg, c, con.anchors, con.required_relation)) {
        ok = false;
        break;
      }
    }
    keep[static_cast<std::size_t>(i)] = ok ? 1 : 0;
  }

  std::vector<EntityId> out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) out.push_back(candidates[i]);
  }
  return EntitySet::from_sorted(std::move(out));
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

  std::vector<LiveDomain> live(domains.size());
  for (std::size_t d = 0; d < domains.size(); ++d) {
    live[d].members = &domains[d].values();
    live[d].alive.assign(domains[d].size(), 1);
  }

  struct Item {
    std::uint32_t arc;
    std::uint32_t pos;
  };
  std::vector<Item> items;
  std::vector<unsigned char> unsupported;

  for (;;) {
    // Each round checks every live (arc, member) pair against the same
    // snapshot, then applies all removals at once.
    items.clear();
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const auto& alive = live[arcs[a].from].alive;
      for (std::size_t p = 0; p < alive.size(); ++p) {
        if (alive[p]) items.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(p)});
      }
    }
    const auto n = static_cast<std::int64_t>(items.size());
    unsupported.assign(items.size(), 0);

#pragma omp parallel for schedule(dynamic, 64) if (n >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
      const Item it = items[static_cast<std::size_t>(i)];
      const Arc& arc = arcs[it.arc];
      const EntityId e = (*live[arc.from].members)[it.pos];
      unsupported[static_cast<std::size_t>(i)] = has_live_support(kg, e, live[arc.to], arc.relation) ? 0 : 1;
    }

    bool changed = false;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!unsupported[i]) continue;
      auto& flag = live[arcs[items[i].arc].from].alive[items[i].pos];
      if (flag) {
        flag = 0;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<EntitySet> out;
  out.reserve(domains.size());
  for (std::size_t d = 0; d < domains.size(); ++d) {
    std::vector<EntityId> kept;
    for (std::size_t p = 0; p < live[d].alive.size(); ++p) {
      if (live[d].alive[p]) kept.push_back(domains[d][p]);
    }
    out.push_back(EntitySet::from_sorted(std::move(kept)));
  }
  return out;
}

}  // namespace gge
