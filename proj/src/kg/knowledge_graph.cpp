#include "gge/knowledge_graph.hpp"

#include <algorithm>
#include <tuple>

#include "gge/errors.hpp"
#include "gge/normalize.hpp"

namespace gge {
namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::uint32_t index_of(const std::vector<std::string>& sorted, const std::string& s) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
  return static_cast<std::uint32_t>(it - sorted.begin());
}

template <typename Less>
void build_csr(std::size_t rows, std::vector<std::pair<std::uint32_t, Neighbor>> entries,
               Less less, std::vector<std::uint32_t>& offsets, std::vector<Neighbor>& items) {
  std::sort(entries.begin(), entries.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return less(x.second, y.second);
  });
  offsets.assign(rows + 1, 0);
  items.clear();
  items.reserve(entries.size());
  for (const auto& [row, n] : entries) {
    ++offsets[row + 1];
    items.push_back(n);
  }
  for (std::size_t i = 0; i < rows; ++i) offsets[i + 1] += offsets[i];
}

}  // namespace

std::span<const Neighbor> KnowledgeGraph::Csr::row(std::uint32_t i) const {
  if (i + 1 >= offsets.size()) return {};
  return std::span<const Neighbor>(items.data() + offsets[i], offsets[i + 1] - offsets[i]);
}

KnowledgeGraph KnowledgeGraph::from_triples(std::span<const NamedTriple> input) {
  std::vector<NamedTriple> cleaned;
  cleaned.reserve(input.size());
  std::vector<std::string> entity_names;
  std::vector<std::string> relation_names;
  for (std::size_t i = 0; i < input.size(); ++i) {
    NamedTriple t{trim(input[i].subject), trim(input[i].relation), trim(input[i].object)};
    if (t.subject.empty() || t.relation.empty() || t.object.empty()) {
      throw FormatError("triples", i + 1, "empty field");
    }
    entity_names.push_back(t.subject);
    entity_names.push_back(t.object);
    relation_names.push_back(t.relation);
    cleaned.push_back(std::move(t));
  }

  KnowledgeGraph kg;
  kg.entity_names_ = sorted_unique(std::move(entity_names));
  kg.relation_names_ = sorted_unique(std::move(relation_names));

  kg.triples_.reserve(cleaned.size());
  for (const auto& t : cleaned) {
    kg.triples_.push_back(Triple{EntityId{index_of(kg.entity_names_, t.subject)},
                                 RelationId{index_of(kg.relation_names_, t.relation)},
                                 EntityId{index_of(kg.entity_names_, t.object)}});
  }
  std::sort(kg.triples_.begin(), kg.triples_.end());
  kg.triples_.erase(std::unique(kg.triples_.begin(), kg.triples_.end()), kg.triples_.end());

  kg.entity_keys_.reserve(kg.entity_names_.size());
  for (std::uint32_t i = 0; i < kg.entity_names_.size(); ++i) {
    kg.entity_keys_.push_back(normalize_name(kg.entity_names_[i]));
    kg.name_index_[kg.entity_keys_.back()].push_back(EntityId{i});
  }

  std::vector<std::pair<std::uint32_t, Neighbor>> out_entries;
  std::vector<std::pair<std::uint32_t, Neighbor>> in_entries;
  out_entries.reserve(kg.triples_.size());
  in_entries.reserve(kg.triples_.size());
  for (const auto& t : kg.triples_) {
    out_entries.push_back({t.subject.value, Neighbor{t.object, t.relation, Direction::Out}});
    in_entries.push_back({t.object.value, Neighbor{t.subject, t.relation, Direction::In}});
  }
  std::vector<std::pair<std::uint32_t, Neighbor>> both = out_entries;
  both.insert(both.end(), in_entries.begin(), in_entries.end());

  auto by_relation = [](const Neighbor& a, const Neighbor& b) {
    return std::tie(a.relation, a.entity) < std::tie(b.relation, b.entity);
  };
  auto by_entity = [](const Neighbor& a, const Neighbor& b) { return a < b; };
  const std::size_t n = kg.entity_names_.size();
  build_csr(n, std::move(out_entries), by_relation, kg.out_.offsets, kg.out_.items);
  build_csr(n, std::move(in_entries), by_relation, kg.in_.offsets, kg.in_.items);
  build_csr(n, std::move(both), by_entity, kg.incident_.offsets, kg.incident_.items);
  return kg;
}

std::optional<EntityId> KnowledgeGraph::find_entity(std::string_view name) const {
  auto it = std::lower_bound(entity_names_.begin(), entity_names_.end(), name);
  if (it == entity_names_.end() || *it != name) return std::nullopt;
  return EntityId{static_cast<std::uint32_t>(it - entity_names_.begin())};
}

std::optional<RelationId> KnowledgeGraph::find_relation(std::string_view name) const {
  auto it = std::lower_bound(relation_names_.begin(), relation_names_.end(), name);
  if (it == relation_names_.end() || *it != name) return std::nullopt;
  return RelationId{static_cast<std::uint32_t>(it - relation_names_.begin())};
}

std::span<const Neighbor> KnowledgeGraph::out_edges(EntityId e) const { return out_.row(e.value); }
std::span<const Neighbor> KnowledgeGraph::in_edges(EntityId e) const { return in_.row(e.value); }
std::span<const Neighbor> KnowledgeGraph::incident(EntityId e) const { return incident_.row(e.value); }

EntitySet KnowledgeGraph::entities_by_name(std::string_view name) const {
  auto it = name_index_.find(normalize_name(name));
  if (it == name_index_.end()) return {};
  return EntitySet(it->second);
}

std::vector<Neighbor> KnowledgeGraph::neighbors(EntityId e) const {
  auto row = incident(e);
  return {row.begin(), row.end()};
}

bool KnowledgeGraph::has_edge(EntityId a, EntityId b, std::optional<RelationId> required) const {
  auto row = incident(a);
  if (row.empty()) return false;
  Neighbor probe{b, required.value_or(RelationId{0}), Direction::Out};
  auto it = std::lower_bound(row.begin(), row.end(), probe);
  if (it == row.end() || it->entity != b) return false;
  return !required || it->relation == *required;
}

RelationSet KnowledgeGraph::relations_between(const EntitySet& a, const EntitySet& b) const {
  const EntitySet& scan = a.size() <= b.size() ? a : b;
  const EntitySet& probe = a.size() <= b.size() ? b : a;
  std::vector<RelationId> found;
  for (EntityId e : scan) {
    for (const Neighbor& n : incident(e)) {
      if (probe.contains(n.entity)) found.push_back(n.relation);
    }
  }
  return RelationSet(std::move(found));
}

std::map<RelationId, std::size_t> KnowledgeGraph::relation_counts_between(const EntitySet& a,
                                                                        const EntitySet& b) const {
  std::map<RelationId, std::size_t> counts;
  for (EntityId e : a) {
    for (const Neighbor& n : incident(e)) {
      if (!b.contains(n.entity)) continue;
      if (n.direction == Direction::Out) {
        ++counts[n.relation];
      } else if (!(a.contains(n.entity) && b.contains(e))) {
        // Otherwise already counted from the subject's Out entry.
        ++counts[n.relation];
      }
    }
  }
  return counts;
}

EntitySet KnowledgeGraph::candidate_entities(const EntitySet& frontier) const {
  std::vector<EntityId> found;
  for (EntityId e : frontier) {
    for (const Neighbor& n : incident(e)) {
      if (!frontier.contains(n.entity)) found.push_back(n.entity);
    }
  }
  return EntitySet(std::move(found));
}

}  // namespace gge
