#pragma once

#include <random>
#include <string>
#include <vector>

#include "gge/explorer.hpp"
#include "gge/knowledge_graph.hpp"

namespace gen {

inline gge::KnowledgeGraph random_kg(std::mt19937& rng, std::size_t max_entities, std::size_t max_triples,
                                     std::size_t max_relations = 4) {
  std::uniform_int_distribution<std::size_t> ne(2, max_entities);
  std::uniform_int_distribution<std::size_t> nt(1, max_triples);
  std::uniform_int_distribution<std::size_t> nr(1, max_relations);
  const std::size_t n = ne(rng), t = nt(rng), r = nr(rng);
  std::uniform_int_distribution<std::size_t> pe(0, n - 1), pr(0, r - 1);
  std::vector<gge::NamedTriple> triples;
  for (std::size_t i = 0; i < t; ++i) {
    triples.push_back({"e" + std::to_string(pe(rng)), "r" + std::to_string(pr(rng)), "e" + std::to_string(pe(rng))});
  }
  return gge::KnowledgeGraph::from_triples(triples);
}

// Exactly `n` entities: a ring keeps everyone present, plus `extra` random triples.
inline gge::KnowledgeGraph sized_kg(std::mt19937& rng, std::size_t n, std::size_t extra, std::size_t relations) {
  std::uniform_int_distribution<std::size_t> pe(0, n - 1), pr(0, relations - 1);
  std::vector<gge::NamedTriple> triples;
  for (std::size_t i = 0; i < n; ++i) {
    triples.push_back({"e" + std::to_string(i), "r" + std::to_string(pr(rng)), "e" + std::to_string((i + 1) % n)});
  }
  for (std::size_t i = 0; i < extra; ++i) {
    triples.push_back({"e" + std::to_string(pe(rng)), "r" + std::to_string(pr(rng)), "e" + std::to_string(pe(rng))});
  }
  return gge::KnowledgeGraph::from_triples(triples);
}

inline gge::EntitySet random_subset(std::mt19937& rng, std::size_t universe, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> sz(1, std::min(max_size, universe));
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(universe - 1));
  std::vector<gge::EntityId> v;
  const std::size_t k = sz(rng);
  for (std::size_t i = 0; i < k; ++i) v.push_back(gge::EntityId{pick(rng)});
  return gge::EntitySet(std::move(v));
}

// Guidance graph over clues c0..c{n-1} with random edges (no self loops).
inline gge::GuidanceGraph random_gg(std::mt19937& rng, std::size_t max_nodes) {
  std::uniform_int_distribution<std::size_t> nn(2, max_nodes);
  const std::size_t n = nn(rng);
  gge::GuidanceGraph gg;
  for (std::size_t i = 0; i < n; ++i) {
    gg.nodes.push_back({gge::ClueId{"c" + std::to_string(i)}, "clue " + std::to_string(i), gge::ClueKind::Generic});
  }
  std::uniform_int_distribution<std::size_t> ned(1, n + 2), pn(0, n - 1);
  const std::size_t m = ned(rng);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t a = pn(rng), b = pn(rng);
    if (a == b) b = (a + 1) % n;
    gg.edges.push_back({gg.nodes[a].id, "rel " + std::to_string(i), gg.nodes[b].id});
  }
  return gg;
}

struct Instance {
  gge::KnowledgeGraph kg;
  gge::GuidanceGraph gg;
  gge::ClueMapping mapping;
};

// KG <= 25 entities / <= 60 triples, GG <= 5 nodes, random initial mapping
// with a few grounded and ungrounded edges.
inline Instance random_instance(std::mt19937& rng) {
  Instance inst{random_kg(rng, 25, 60), random_gg(rng, 5), {}};
  std::bernoulli_distribution mapped(0.85), grounded(0.3), ungrounded(0.1);
  for (const auto& node : inst.gg.nodes) {
    if (mapped(rng)) inst.mapping.node_map[node.id] = random_subset(rng, inst.kg.entity_count(), 6);
  }
  std::uniform_int_distribution<std::uint32_t> pr(0, static_cast<std::uint32_t>(inst.kg.relation_count() - 1));
  for (std::size_t i = 0; i < inst.gg.edges.size(); ++i) {
    const auto& e = inst.gg.edges[i];
    if (!inst.mapping.is_mapped(e.head) || !inst.mapping.is_mapped(e.tail)) continue;
    if (grounded(rng)) {
      inst.mapping.edge_ground[i] = gge::RelationId{pr(rng)};
    } else if (ungrounded(rng)) {
      inst.mapping.ungrounded_edges.insert(i);
    }
  }
  return inst;
}

}  // namespace gen
