#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gge/sorted_set.hpp"

namespace gge {

// Dense handle of an entity inside one KnowledgeGraph. Handles are assigned
// in lexicographic order of the entity's surface name, so two graphs loaded
// from the same triples agree on every handle.
struct EntityId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

struct RelationId {
  std::uint32_t value = 0;
  friend auto operator<=>(const RelationId&, const RelationId&) = default;
};

enum class Direction : std::uint8_t { Out, In };

struct Triple {
  EntityId subject;
  RelationId relation;
  EntityId object;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// One incident edge seen from an entity. `direction` is Out when the
// viewing entity is the subject of the stored triple.
struct Neighbor {
  EntityId entity;
  RelationId relation;
  Direction direction;
  friend auto operator<=>(const Neighbor&, const Neighbor&) = default;
};

using EntitySet = SortedSet<EntityId>;
using RelationSet = SortedSet<RelationId>;

// Surface-form triple, as read from a TSV line.
struct NamedTriple {
  std::string subject;
  std::string relation;
  std::string object;
};

// Immutable directed labeled multigraph. Storage keeps triple direction;
// the connectivity queries (has_edge, relations_between,
// candidate_entities) ignore it.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Fields are trimmed; empty fields throw FormatError. Duplicates collapse.
  static KnowledgeGraph from_triples(std::span<const NamedTriple> triples);

  [[nodiscard]] std::size_t entity_count() const noexcept { return entity_names_.size(); }
  [[nodiscard]] std::size_t relation_count() const noexcept { return relation_names_.size(); }
  [[nodiscard]] std::size_t triple_count() const noexcept { return triples_.size(); }

  [[nodiscard]] bool contains(EntityId e) const noexcept { return e.value < entity_names_.size(); }
  [[nodiscard]] const std::string& entity_name(EntityId e) const { return entity_names_.at(e.value); }
  [[nodiscard]] const std::string& entity_key(EntityId e) const { return entity_keys_.at(e.value); }
  [[nodiscard]] const std::string& relation_name(RelationId r) const { return relation_names_.at(r.value); }

  // Exact surface-name lookups.
  [[nodiscard]] std::optional<EntityId> find_entity(std::string_view name) const;
  [[nodiscard]] std::optional<RelationId> find_relation(std::string_view name) const;

  [[nodiscard]] const std::vector<Triple>& triples() const noexcept { return triples_; }

  // Outgoing (relation, object) pairs of `e`, sorted by (relation, object).
  [[nodiscard]] std::span<const Neighbor> out_edges(EntityId e) const;
  // Incoming (relation, subject) pairs of `e`, sorted by (relation, subject).
  [[nodiscard]] std::span<const Neighbor> in_edges(EntityId e) const;
  // Both directions, sorted by (entity, relation, direction). Empty for unknown ids.
  [[nodiscard]] std::span<const Neighbor> incident(EntityId e) const;

  // Entities whose normalized name equals normalize_name(name).
  [[nodiscard]] EntitySet entities_by_name(std::string_view name) const;

  [[nodiscard]] std::vector<Neighbor> neighbors(EntityId e) const;

  [[nodiscard]] bool has_edge(EntityId a, EntityId b,
                              std::optional<RelationId> required_relation = std::nullopt) const;

  [[nodiscard]] RelationSet relations_between(const EntitySet& a, const EntitySet& b) const;

  // Number of stored triples per relation with one endpoint in `a` and the
  // other in `b`. Each triple is counted once.
  [[nodiscard]] std::map<RelationId, std::size_t> relation_counts_between(const EntitySet& a,
                                                                          const EntitySet& b) const;

  // Entities adjacent to any member of `frontier`, minus `frontier` itself.
  [[nodiscard]] EntitySet candidate_entities(const EntitySet& frontier) const;

 private:
  struct Csr {
    std::vector<std::uint32_t> offsets;
    std::vector<Neighbor> items;
    [[nodiscard]] std::span<const Neighbor> row(std::uint32_t i) const;
  };

  std::vector<std::string> entity_names_;
  std::vector<std::string> entity_keys_;
  std::vector<std::string> relation_names_;
  std::vector<Triple> triples_;
  Csr out_;
  Csr in_;
  Csr incident_;
  std::unordered_map<std::string, std::vector<EntityId>> name_index_;
};

struct LoadStats {
  std::size_t data_lines = 0;
  std::size_t duplicate_lines = 0;
};

// Reads `subject<TAB>relation<TAB>object` lines; `#` comments and blank
// lines are skipped. Throws IoError or FormatError (with line number).
KnowledgeGraph load_tsv(const std::filesystem::path& path, LoadStats* stats = nullptr);

}  // namespace gge
