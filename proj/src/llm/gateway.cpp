#include <array>
#include <utility>

#include "gge/errors.hpp"
#include "gge/llm_gateway.hpp"

namespace gge {
namespace {

constexpr std::array<std::pair<TaskTag, std::string_view>, 7> kTaskNames{{
    {TaskTag::Rewrite, "Rewrite"},
    {TaskTag::ExtractKeywords, "ExtractKeywords"},
    {TaskTag::MineRelations, "MineRelations"},
    {TaskTag::SelectRelation, "SelectRelation"},
    {TaskTag::SelectBranch, "SelectBranch"},
    {TaskTag::FinalAnswer, "FinalAnswer"},
    {TaskTag::DirectAnswer, "DirectAnswer"},
}};

}  // namespace

std::string_view to_string(TaskTag tag) {
  for (const auto& [t, name] : kTaskNames) {
    if (t == tag) return name;
  }
  return "Unknown";
}

std::optional<TaskTag> parse_task_tag(std::string_view name) {
  for (const auto& [t, n] : kTaskNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, const CostLedger& c) {
  j = nlohmann::json{{"llm_calls", c.llm_calls},
                     {"input_tokens", c.input_tokens},
                     {"output_tokens", c.output_tokens},
                     {"total_tokens", c.total_tokens}};
}

std::uint64_t estimate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

LlmGateway::LlmGateway(std::shared_ptr<Provider> provider) : provider_(std::move(provider)) {
  if (!provider_) throw ProviderError("no LLM provider configured");
}

ChatResponse LlmGateway::complete(const ChatRequest& request) {
  if (request.messages.empty()) throw ProviderError("chat request without messages");
  ChatResponse response = provider_->send(request);

  std::lock_guard lock(mutex_);
  CostLedger& ledger = ledgers_[request.question_id];
  ledger.llm_calls += 1;
  ledger.input_tokens += response.usage.input_tokens;
  ledger.output_tokens += response.usage.output_tokens;
  ledger.total_tokens = ledger.input_tokens + ledger.output_tokens;
  return response;
}

CostLedger LlmGateway::ledger_snapshot(const std::string& question_id) const {
  std::lock_guard lock(mutex_);
  auto it = ledgers_.find(question_id);
  return it == ledgers_.end() ? CostLedger{} : it->second;
}

}  // namespace gge
