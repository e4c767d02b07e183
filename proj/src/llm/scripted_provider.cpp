#include <fstream>

#include "gge/errors.hpp"
#include "gge/llm_gateway.hpp"

namespace gge {

ScriptedProvider::ScriptedProvider(std::map<std::string, std::vector<Entry>> transcript) {
  for (auto& [qid, entries] : transcript) {
    for (auto& e : entries) queues_[{qid, e.task}].push_back(std::move(e));
  }
}

std::shared_ptr<ScriptedProvider> ScriptedProvider::from_json(const nlohmann::json& doc,
                                                              const std::string& source) {
  if (!doc.is_object()) throw FormatError(source, 0, "transcript must be a JSON object");
  std::map<std::string, std::vector<Entry>> transcript;
  for (const auto& [qid, entries] : doc.items()) {
    if (!entries.is_array()) throw FormatError(source, 0, "entries for '" + qid + "' must be a list");
    auto& out = transcript[qid];
    for (const auto& item : entries) {
      const std::string where = "entry " + std::to_string(out.size()) + " of '" + qid + "'";
      if (!item.is_object() || !item.contains("task") || !item.contains("response")) {
        throw FormatError(source, 0, where + ": needs task and response");
      }
      if (!item["task"].is_string() || !item["response"].is_string()) {
        throw FormatError(source, 0, where + ": task and response must be strings");
      }
      auto tag = parse_task_tag(item["task"].get<std::string>());
      if (!tag) throw FormatError(source, 0, where + ": unknown task " + item["task"].dump());
      Entry e{*tag, item["response"].get<std::string>(), 0, 0};
      if (item.contains("usage")) {
        const auto& u = item["usage"];
        try {
          e.input_tokens = u.at("input_tokens").get<std::uint64_t>();
          e.output_tokens = u.at("output_tokens").get<std::uint64_t>();
        } catch (const nlohmann::json::exception&) {
          throw FormatError(source, 0, where + ": usage needs non-negative input_tokens/output_tokens");
        }
      }
      out.push_back(std::move(e));
    }
  }
  return std::make_shared<ScriptedProvider>(std::move(transcript));
}

std::shared_ptr<ScriptedProvider> ScriptedProvider::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transcript file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string(), 0, e.what());
  }
  return from_json(doc, path.string());
}

ChatResponse ScriptedProvider::send(const ChatRequest& request) {
  std::lock_guard lock(mutex_);
  Key key{request.question_id, request.task};
  auto q = queues_.find(key);
  std::size_t& cursor = cursors_[key];
  if (q == queues_.end() || cursor >= q->second.size()) {
    throw ProviderError("transcript exhausted: " + request.question_id + "/" +
                        std::string(to_string(request.task)));
  }
  const Entry& e = q->second[cursor++];
  return ChatResponse{e.response, TokenUsage{e.input_tokens, e.output_tokens, false}};
}

}  // namespace gge
