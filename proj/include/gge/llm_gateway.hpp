#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gge {

enum class TaskTag {
  Rewrite,
  ExtractKeywords,
  MineRelations,
  SelectRelation,
  SelectBranch,
  FinalAnswer,
  DirectAnswer,
};

std::string_view to_string(TaskTag tag);
std::optional<TaskTag> parse_task_tag(std::string_view name);

enum class Role { System, User };

struct ChatMessage {
  Role role = Role::User;
  std::string content;
};

struct ChatRequest {
  TaskTag task = TaskTag::Rewrite;
  std::string question_id;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
};

struct TokenUsage {
  std::uint64_t input_tokens = 0;
  std::uint64_t output_tokens = 0;
  bool estimated = false;
};

struct ChatResponse {
  std::string content;
  TokenUsage usage;
};

struct CostLedger {
  std::uint64_t llm_calls = 0;
  std::uint64_t input_tokens = 0;
  std::uint64_t output_tokens = 0;
  std::uint64_t total_tokens = 0;

  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

void to_json(nlohmann::json& j, const CostLedger& c);

// ceil(characters / 4); used when a provider reports no usage.
std::uint64_t estimate_tokens(std::string_view text);

class Provider {
 public:
  virtual ~Provider() = default;
  // Throws ProviderError on transport failure or exhausted script.
  virtual ChatResponse send(const ChatRequest& request) = 0;
};

// Replays a transcript: question_id -> ordered entries, consumed in order
// per (question_id, task).
class ScriptedProvider final : public Provider {
 public:
  struct Entry {
    TaskTag task;
    std::string response;
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;
  };

  explicit ScriptedProvider(std::map<std::string, std::vector<Entry>> transcript);

  // Parses the transcript JSON document; FormatError on schema violations.
  static std::shared_ptr<ScriptedProvider> from_json(const nlohmann::json& doc,
                                                     const std::string& source = "transcript");
  static std::shared_ptr<ScriptedProvider> from_file(const std::filesystem::path& path);

  ChatResponse send(const ChatRequest& request) override;

 private:
  using Key = std::pair<std::string, TaskTag>;
  std::map<Key, std::vector<Entry>> queues_;
  std::map<Key, std::size_t> cursors_;
  std::mutex mutex_;
};

struct HttpProviderConfig {
  std::string base_url;
  std::string api_key;
  std::string model;

  // Reads GG_LLM_BASE_URL, GG_LLM_API_KEY, GG_LLM_MODEL. nullopt when the
  // base URL or model is unset.
  static std::optional<HttpProviderConfig> from_env();
};

// OpenAI-style chat-completions client: POST <base_url>/chat/completions.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);
  ChatResponse send(const ChatRequest& request) override;

  // Exposed for tests of the wire format.
  [[nodiscard]] nlohmann::json request_body(const ChatRequest& request) const;
  static ChatResponse parse_response(const ChatRequest& request, const std::string& body);

 private:
  HttpProviderConfig config_;
  std::string origin_;
  std::string path_prefix_;
};

// Shared front door to a provider. Records every completed call in a
// per-question ledger. Safe for concurrent use across questions.
class LlmGateway {
 public:
  explicit LlmGateway(std::shared_ptr<Provider> provider);

  ChatResponse complete(const ChatRequest& request);
  [[nodiscard]] CostLedger ledger_snapshot(const std::string& question_id) const;

 private:
  std::shared_ptr<Provider> provider_;
  mutable std::mutex mutex_;
  std::map<std::string, CostLedger> ledgers_;
};

}  // namespace gge
