#include <cstdlib>

#include "gge/errors.hpp"
#include "gge/llm_gateway.hpp"
#include "httplib.h"

namespace gge {
namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

}  // namespace

std::optional<HttpProviderConfig> HttpProviderConfig::from_env() {
  HttpProviderConfig c{env_or_empty("GG_LLM_BASE_URL"), env_or_empty("GG_LLM_API_KEY"),
                       env_or_empty("GG_LLM_MODEL")};
  if (c.base_url.empty() || c.model.empty()) return std::nullopt;
  return c;
}

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  std::string url = config_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ProviderError("base URL needs an http:// or https:// scheme: " + config_.base_url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? std::string() : url.substr(path_start);
}

nlohmann::json HttpProvider::request_body(const ChatRequest& request) const {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", m.role == Role::System ? "system" : "user"}, {"content", m.content}});
  }
  return {{"model", config_.model}, {"messages", std::move(messages)}, {"temperature", request.temperature}};
}

ChatResponse HttpProvider::parse_response(const ChatRequest& request, const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProviderError(std::string("malformed chat-completions response: ") + e.what());
  }
  ChatResponse out;
  try {
    out.content = doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw ProviderError("chat-completions response lacks choices[0].message.content");
  }

  const auto usage = doc.find("usage");
  bool have_usage = usage != doc.end() && usage->is_object() &&
                    usage->contains("prompt_tokens") && usage->contains("completion_tokens") &&
                    (*usage)["prompt_tokens"].is_number_unsigned() &&
                    (*usage)["completion_tokens"].is_number_unsigned();
  if (have_usage) {
    out.usage = TokenUsage{(*usage)["prompt_tokens"].get<std::uint64_t>(),
                           (*usage)["completion_tokens"].get<std::uint64_t>(), false};
  } else {
    std::uint64_t in = 0;
    for (const auto& m : request.messages) in += estimate_tokens(m.content);
    out.usage = TokenUsage{in, estimate_tokens(out.content), true};
  }
  return out;
}

ChatResponse HttpProvider::send(const ChatRequest& request) {
  httplib::Client client(origin_);
  if (!client.is_valid()) throw ProviderError("cannot create HTTP client for " + origin_);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  const std::string path = path_prefix_ + "/chat/completions";
  auto res = client.Post(path, headers, request_body(request).dump(), "application/json");
  if (!res) {
    throw ProviderError("HTTP request to " + origin_ + path + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderError("HTTP " + std::to_string(res->status) + " from " + origin_ + path);
  }
  return parse_response(request, res->body);
}

}  // namespace gge
