#include "gge/errors.hpp"
#include "gge/guidance_graph.hpp"
#include "gge/tasks.hpp"

namespace gge {

GuidanceGraph construct(const std::string& question, const std::string& question_id, LlmGateway& gateway) {
  std::string statement = tasks::rewrite(gateway, question_id, question);
  std::vector<Keyword> keywords = tasks::extract_keywords(gateway, question_id, statement);
  if (keywords.empty()) throw TaskError("no keywords");
  std::vector<Association> associations = tasks::mine_relations(gateway, question_id, statement, keywords);

  GuidanceGraph gg = apply_rules(keywords, associations);
  gg.statement = std::move(statement);
  return gg;
}

}  // namespace gge
