#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gge/guidance_graph.hpp"
#include "gge/llm_gateway.hpp"
#include "json.hpp"

namespace gge {

// Returns the JSON value carried by a response: the body of the first
// ``` fenced block if there is one, otherwise the whole trimmed content.
// nullopt when that text is not valid JSON.
std::optional<nlohmann::json> extract_structured_block(std::string_view content);

// Maps an LLM relation choice onto the offered candidates: exact, then
// normalized (case, `_`/space), then trailing dotted segment, then the
// unique candidate with the most prefix-matching tokens.
std::optional<std::string> match_candidate(std::string_view choice,
                                           std::span<const std::string> candidates);

namespace tasks {

// Each helper renders its prompt, calls the gateway, parses the structured
// reply and retries once with a corrective message on parse failure.
// Throws TaskError after the retry, ProviderError from the gateway.

std::string rewrite(LlmGateway& gw, const std::string& qid, const std::string& question);

std::vector<Keyword> extract_keywords(LlmGateway& gw, const std::string& qid,
                                      const std::string& statement);

std::vector<Association> mine_relations(LlmGateway& gw, const std::string& qid,
                                        const std::string& statement,
                                        const std::vector<Keyword>& keywords);

// Throws ConstraintError when the answer matches none of `candidates`.
std::string select_relation(LlmGateway& gw, const std::string& qid, const std::string& phrase,
                            std::span<const std::string> candidates);

// 0 picks `current_phrase`, 1 picks `related_phrase`.
int select_branch(LlmGateway& gw, const std::string& qid, const std::string& query_context,
                  const std::string& current_phrase, const std::string& related_phrase);

std::vector<std::string> final_answer(LlmGateway& gw, const std::string& qid,
                                      const std::string& question,
                                      const std::vector<std::string>& knowledge_lines);

std::vector<std::string> direct_answer(LlmGateway& gw, const std::string& qid,
                                       const std::string& question);

}  // namespace tasks
}  // namespace gge
