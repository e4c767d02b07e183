#include <algorithm>
#include <cctype>

#include "gge/normalize.hpp"
#include "gge/tasks.hpp"

namespace gge {
namespace {

std::vector<std::string> tokens_of(std::string_view s) {
  std::string key = normalize_name(s);
  std::vector<std::string> out;
  std::string cur;
  for (char c : key) {
    bool word = std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
    if (word) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool prefix_related(const std::string& a, const std::string& b) {
  constexpr std::size_t kMinStem = 3;
  if (a.size() < kMinStem || b.size() < kMinStem) return false;
  return a.starts_with(b) || b.starts_with(a);
}

std::string last_segment(const std::string& s) {
  auto dot = s.rfind('.');
  return dot == std::string::npos ? s : s.substr(dot + 1);
}

}  // namespace

std::optional<nlohmann::json> extract_structured_block(std::string_view content) {
  std::string_view body = content;
  auto open = content.find("```");
  if (open != std::string_view::npos) {
    auto line_end = content.find('\n', open);
    if (line_end != std::string_view::npos) {
      auto close = content.find("```", line_end + 1);
      if (close != std::string_view::npos) body = content.substr(line_end + 1, close - line_end - 1);
    }
  }
  std::string text = trim(body);
  if (text.empty()) return std::nullopt;
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    return std::nullopt;
  }
}

std::optional<std::string> match_candidate(std::string_view choice,
                                           std::span<const std::string> candidates) {
  for (const auto& c : candidates) {
    if (c == choice) return c;
  }
  const std::string key = normalize_name(choice);
  if (key.empty()) return std::nullopt;
  for (const auto& c : candidates) {
    if (normalize_name(c) == key) return c;
  }

  std::vector<const std::string*> tail_hits;
  for (const auto& c : candidates) {
    if (normalize_name(last_segment(c)) == key || normalize_name(c) == normalize_name(last_segment(std::string(choice)))) {
      tail_hits.push_back(&c);
    }
  }
  if (tail_hits.size() == 1) return *tail_hits.front();

  const auto wanted = tokens_of(choice);
  std::size_t best = 0;
  std::vector<const std::string*> best_hits;
  for (const auto& c : candidates) {
    const auto have = tokens_of(last_segment(c));
    std::size_t score = 0;
    for (const auto& w : wanted) {
      if (std::any_of(have.begin(), have.end(), [&](const std::string& h) { return prefix_related(w, h); })) {
        ++score;
      }
    }
    if (score == 0) continue;
    if (score > best) {
      best = score;
      best_hits.clear();
    }
    if (score == best) best_hits.push_back(&c);
  }
  if (best_hits.size() == 1) return *best_hits.front();
  return std::nullopt;
}

}  // namespace gge
