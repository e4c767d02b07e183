#pragma once

// Brute-force reference implementations. They only use the triple list and
// never the graph's indexes or the library's alignment kernels.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gge/explorer.hpp"
#include "gge/knowledge_graph.hpp"
#include "gge/normalize.hpp"

namespace oracle {

using gge::EntityId;
using gge::RelationId;

inline bool connected(const gge::KnowledgeGraph& kg, EntityId a, EntityId b, std::optional<RelationId> rel) {
  for (const auto& t : kg.triples()) {
    if (rel && t.relation != *rel) continue;
    if ((t.subject == a && t.object == b) || (t.subject == b && t.object == a)) return true;
  }
  return false;
}

inline std::set<RelationId> relations_between(const gge::KnowledgeGraph& kg, const std::set<EntityId>& a,
                                              const std::set<EntityId>& b) {
  std::set<RelationId> out;
  for (const auto& t : kg.triples()) {
    if ((a.count(t.subject) && b.count(t.object)) || (b.count(t.subject) && a.count(t.object))) {
      out.insert(t.relation);
    }
  }
  return out;
}

inline std::set<EntityId> candidate_entities(const gge::KnowledgeGraph& kg, const std::set<EntityId>& frontier) {
  std::set<EntityId> out;
  for (const auto& t : kg.triples()) {
    if (frontier.count(t.subject)) out.insert(t.object);
    if (frontier.count(t.object)) out.insert(t.subject);
  }
  for (auto e : frontier) out.erase(e);
  return out;
}

inline std::set<EntityId> filter(const gge::KnowledgeGraph& kg, const std::set<EntityId>& cands,
                                 const std::vector<gge::ConnectivityConstraint>& cons) {
  std::set<EntityId> out;
  for (auto c : cands) {
    bool ok = true;
    for (const auto& k : cons) {
      bool any = false;
      for (auto a : k.anchors) any = any || connected(kg, c, a, k.required_relation);
      ok = ok && any;
    }
    if (ok) out.insert(c);
  }
  return out;
}

using Domains = std::map<gge::ClueId, std::set<EntityId>>;

inline Domains domains_of(const gge::ClueMapping& m) {
  Domains d;
  for (const auto& [id, s] : m.node_map) d[id] = std::set<EntityId>(s.begin(), s.end());
  return d;
}

struct ActiveEdge {
  gge::ClueId a;
  gge::ClueId b;
  std::optional<RelationId> rel;
};

inline std::vector<ActiveEdge> active_edges(const gge::GuidanceGraph& gg, const gge::ClueMapping& m) {
  std::vector<ActiveEdge> out;
  for (std::size_t i = 0; i < gg.edges.size(); ++i) {
    const auto& e = gg.edges[i];
    if (m.ungrounded_edges.count(i) || !m.is_mapped(e.head) || !m.is_mapped(e.tail)) continue;
    std::optional<RelationId> rel;
    if (auto g = m.edge_ground.find(i); g != m.edge_ground.end()) rel = g->second;
    out.push_back({e.head, e.tail, rel});
  }
  return out;
}

// Repeat full passes of pairwise support deletion until nothing changes;
// empty sets are dropped at the end.
inline Domains holistic(const gge::GuidanceGraph& gg, const gge::KnowledgeGraph& kg, const gge::ClueMapping& m) {
  Domains d = domains_of(m);
  const auto edges = active_edges(gg, m);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges) {
      for (int side = 0; side < 2; ++side) {
        auto& from = d[side ? e.b : e.a];
        const auto& to = d[side ? e.a : e.b];
        for (auto it = from.begin(); it != from.end();) {
          bool supported = false;
          for (auto y : to) supported = supported || connected(kg, *it, y, e.rel);
          if (!supported) {
            it = from.erase(it);
            changed = true;
          } else {
            ++it;
          }
        }
      }
    }
  }
  for (auto it = d.begin(); it != d.end();) it = it->second.empty() ? d.erase(it) : std::next(it);
  return d;
}

// Entities taking part in at least one full embedding: one entity per mapped
// clue with every active edge's pair connected.
inline Domains embedded_entities(const gge::GuidanceGraph& gg, const gge::KnowledgeGraph& kg,
                                 const gge::ClueMapping& m) {
  const Domains d = domains_of(m);
  const auto edges = active_edges(gg, m);
  std::vector<gge::ClueId> clues;
  std::vector<std::vector<EntityId>> values;
  for (const auto& [id, s] : d) {
    clues.push_back(id);
    values.emplace_back(s.begin(), s.end());
  }
  std::map<gge::ClueId, std::size_t> index;
  for (std::size_t i = 0; i < clues.size(); ++i) index[clues[i]] = i;

  Domains seen;
  std::vector<EntityId> pick(clues.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == clues.size()) {
      for (const auto& e : edges) {
        if (!connected(kg, pick[index[e.a]], pick[index[e.b]], e.rel)) return;
      }
      for (std::size_t i = 0; i < clues.size(); ++i) seen[clues[i]].insert(pick[i]);
      return;
    }
    for (auto v : values[k]) {
      pick[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return seen;
}

// score() straight from its definition, on normalized strings.
inline std::pair<int, int> score(const std::vector<std::string>& predicted, const std::vector<std::string>& gold) {
  std::set<std::string> p, g;
  for (const auto& s : predicted) p.insert(gge::normalize_name(s));
  for (const auto& s : gold) g.insert(gge::normalize_name(s));
  bool any = false, all = true;
  for (const auto& s : g) {
    any = any || p.count(s);
    all = all && p.count(s);
  }
  // complete needs something to be complete about
  return {any ? 1 : 0, all && !g.empty() ? 1 : 0};
}

}  // namespace oracle
