#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gge/guidance_graph.hpp"
#include "gge/knowledge_graph.hpp"
#include "gge/llm_gateway.hpp"
#include "json.hpp"

namespace fx {

inline std::string path(const std::string& name) { return std::string(GGE_FIXTURE_DIR) + "/" + name; }

inline const gge::KnowledgeGraph& movies() {
  static const gge::KnowledgeGraph kg = gge::load_tsv(path("movies.tsv"));
  return kg;
}

// movies.tsv plus one edge joining the two q1 starting points.
inline gge::KnowledgeGraph movies_extended() {
  std::vector<gge::NamedTriple> t;
  const auto& kg = movies();
  for (const auto& tr : kg.triples()) {
    t.push_back({kg.entity_name(tr.subject), kg.relation_name(tr.relation), kg.entity_name(tr.object)});
  }
  t.push_back({"Christopher_Nolan", "co_worked_with", "Leonardo_DiCaprio"});
  return gge::KnowledgeGraph::from_triples(t);
}

inline gge::EntityId ent(const gge::KnowledgeGraph& kg, const std::string& name) { return *kg.find_entity(name); }
inline gge::RelationId rel(const gge::KnowledgeGraph& kg, const std::string& name) {
  return *kg.find_relation(name);
}

inline gge::EntitySet ents(const gge::KnowledgeGraph& kg, std::initializer_list<const char*> names) {
  std::vector<gge::EntityId> v;
  for (const char* n : names) v.push_back(ent(kg, n));
  return gge::EntitySet(std::move(v));
}

inline std::vector<std::string> names(const gge::KnowledgeGraph& kg, const gge::EntitySet& s) {
  std::vector<std::string> out;
  for (auto e : s) out.push_back(kg.entity_name(e));
  return out;
}

// Transcript builder for the scripted provider.
class Script {
 public:
  Script& add(const std::string& qid, const std::string& task, const std::string& response,
              std::uint64_t in = 10, std::uint64_t out = 2) {
    doc_[qid].push_back({{"task", task}, {"response", response},
                         {"usage", {{"input_tokens", in}, {"output_tokens", out}}}});
    return *this;
  }
  [[nodiscard]] std::shared_ptr<gge::ScriptedProvider> provider() const {
    return gge::ScriptedProvider::from_json(doc_.is_null() ? nlohmann::json::object() : doc_);
  }
  [[nodiscard]] const nlohmann::json& json() const { return doc_; }

 private:
  nlohmann::json doc_ = nlohmann::json::object();
};

inline gge::Keyword kw(const std::string& label, gge::ClueKind kind, const std::string& group) {
  return {label, kind, gge::ClueId{group}};
}
inline gge::Association as(const std::string& head, const std::string& label, const std::string& tail) {
  return {gge::ClueId{head}, label, gge::ClueId{tail}};
}

constexpr auto S = gge::ClueKind::Specific;
constexpr auto G = gge::ClueKind::Generic;

// Guidance graph of the q1 question.
inline gge::GuidanceGraph q1_graph() {
  auto gg = gge::apply_rules({kw("film", G, "g1"), kw("Christopher Nolan", S, "g2"), kw("Leonardo DiCaprio", S, "g3")},
                             {as("g1", "directed by", "g2"), as("g1", "starring", "g3")});
  gg.statement = "A film directed by Christopher Nolan stars Leonardo DiCaprio.";
  return gg;
}

inline std::string q1_text() { return "Which film directed by Christopher Nolan stars Leonardo DiCaprio?"; }

}  // namespace fx
