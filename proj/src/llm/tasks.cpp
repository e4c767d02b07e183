#include <functional>
#include <sstream>

#include "gge/errors.hpp"
#include "gge/normalize.hpp"
#include "gge/tasks.hpp"

namespace gge::tasks {
namespace {

using json = nlohmann::json;

template <typename T>
using Parser = std::function<std::optional<T>(const std::string& content, std::string& why)>;

ChatRequest make_request(TaskTag tag, const std::string& qid, std::string instructions,
                         std::string user) {
  ChatRequest req;
  req.task = tag;
  req.question_id = qid;
  req.messages.push_back(
      {Role::System, "Task: " + std::string(to_string(tag)) + "\n" + std::move(instructions)});
  req.messages.push_back({Role::User, std::move(user)});
  return req;
}

template <typename T>
T run_structured(LlmGateway& gw, ChatRequest req, const Parser<T>& parse) {
  std::string why;
  ChatResponse first = gw.complete(req);
  if (auto v = parse(first.content, why)) return std::move(*v);

  req.messages.push_back(
      {Role::User, "Your previous reply could not be used (" + why + "). It was:\n" + first.content +
                       "\nReply again with exactly one fenced ```json block in the requested shape."});
  why.clear();
  ChatResponse second = gw.complete(req);
  if (auto v = parse(second.content, why)) return std::move(*v);
  throw TaskError(std::string(to_string(req.task)) + " output unparseable after retry: " + why);
}

std::optional<std::string> as_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  return std::nullopt;
}

// String-or-object reply: {"<field>": "..."}, a JSON string, or one line of plain text.
std::optional<std::string> loose_string(const std::string& content, const char* field, std::string& why) {
  if (auto block = extract_structured_block(content)) {
    if (auto scalar = as_text(*block)) return scalar;
    if (block->is_object() && block->contains(field) && (*block)[field].is_string()) {
      return (*block)[field].get<std::string>();
    }
    why = std::string("expected a JSON object with a string \"") + field + "\"";
    return std::nullopt;
  }
  std::string text = trim(content);
  if (text.starts_with("```")) {
    why = "fenced block is not valid JSON";
    return std::nullopt;
  }
  while (text.size() >= 2 && (text.front() == '"' || text.front() == '`') && text.back() == text.front()) {
    text = trim(std::string_view(text).substr(1, text.size() - 2));
  }
  if (text.empty() || text.find('\n') != std::string::npos) {
    why = "expected a single line or a JSON block";
    return std::nullopt;
  }
  return text;
}

std::optional<std::vector<std::string>> parse_answers(const std::string& content, std::string& why) {
  auto block = extract_structured_block(content);
  if (!block || !block->is_object() || !block->contains("answers") || !(*block)["answers"].is_array()) {
    why = "expected {\"answers\": [...]}";
    return std::nullopt;
  }
  std::vector<std::string> out;
  for (const auto& a : (*block)["answers"]) {
    auto s = as_text(a);
    if (!s) {
      why = "answers must be strings";
      return std::nullopt;
    }
    std::string t = trim(*s);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::string render_keywords(const std::vector<Keyword>& keywords) {
  std::ostringstream os;
  for (const auto& k : keywords) {
    os << "- " << k.label << " (" << to_string(k.kind) << ", group " << k.group.value << ")\n";
  }
  return os.str();
}

}  // namespace

std::string rewrite(LlmGateway& gw, const std::string& qid, const std::string& question) {
  auto req = make_request(
      TaskTag::Rewrite, qid,
      "Rewrite the question as one complete declarative statement. Fill in anything the question "
      "leaves implicit and use a placeholder noun for the unknown answer. Do not answer it.\n"
      "Reply with ```json {\"statement\": \"...\"} ```.",
      "Question: " + question);
  return run_structured<std::string>(gw, std::move(req), [](const std::string& c, std::string& why) {
    auto s = loose_string(c, "statement", why);
    if (s && trim(*s).empty()) {
      why = "empty statement";
      return std::optional<std::string>{};
    }
    return s;
  });
}

std::vector<Keyword> extract_keywords(LlmGateway& gw, const std::string& qid, const std::string& statement) {
  auto req = make_request(
      TaskTag::ExtractKeywords, qid,
      "Extract the keywords of the statement.\n"
      "kind \"specific\": a named entity (a person, place, work, organisation, date).\n"
      "kind \"generic\": a broader term such as \"country\" or \"film\", including the unknown the "
      "statement asks about.\n"
      "Keywords that refer to the same entity share a group id.\n"
      "Reply with ```json {\"keywords\": [{\"label\": \"...\", \"kind\": \"specific|generic\", "
      "\"group\": \"g1\"}]} ```.",
      "Statement: " + statement);
  return run_structured<std::vector<Keyword>>(gw, std::move(req), [](const std::string& c, std::string& why) {
    std::optional<std::vector<Keyword>> none;
    auto block = extract_structured_block(c);
    if (!block) {
      why = "no JSON block";
      return none;
    }
    const json* list = block->is_array() ? &*block : nullptr;
    if (block->is_object() && block->contains("keywords")) list = &(*block)["keywords"];
    if (!list || !list->is_array()) {
      why = "expected {\"keywords\": [...]}";
      return none;
    }
    std::vector<Keyword> out;
    for (const auto& item : *list) {
      if (!item.is_object() || !item.contains("label") || !item.contains("kind") || !item.contains("group")) {
        why = "keyword entries need label, kind and group";
        return none;
      }
      auto label = as_text(item["label"]);
      auto group = as_text(item["group"]);
      auto kind = as_text(item["kind"]);
      if (!label || !group || !kind || trim(*label).empty() || trim(*group).empty()) {
        why = "keyword label/kind/group must be non-empty strings";
        return none;
      }
      std::string k = normalize_name(*kind);
      if (k != "specific" && k != "generic") {
        why = "kind must be specific or generic";
        return none;
      }
      out.push_back(Keyword{trim(*label), k == "specific" ? ClueKind::Specific : ClueKind::Generic,
                            ClueId{trim(*group)}});
    }
    return std::optional(std::move(out));
  });
}

std::vector<Association> mine_relations(LlmGateway& gw, const std::string& qid, const std::string& statement,
                                        const std::vector<Keyword>& keywords) {
  auto req = make_request(
      TaskTag::MineRelations, qid,
      "For the keyword groups below, list the pairs of groups that the statement directly relates, "
      "with a short phrase for the relationship (empty when the statement gives none).\n"
      "Reply with ```json {\"associations\": [{\"head\": \"g1\", \"label\": \"...\", \"tail\": \"g2\"}]} ```.",
      "Statement: " + statement + "\nKeywords:\n" + render_keywords(keywords));
  return run_structured<std::vector<Association>>(
      gw, std::move(req), [](const std::string& c, std::string& why) {
        std::optional<std::vector<Association>> none;
        auto block = extract_structured_block(c);
        if (!block) {
          why = "no JSON block";
          return none;
        }
        const json* list = block->is_array() ? &*block : nullptr;
        if (block->is_object() && block->contains("associations")) list = &(*block)["associations"];
        if (!list || !list->is_array()) {
          why = "expected {\"associations\": [...]}";
          return none;
        }
        std::vector<Association> out;
        for (const auto& item : *list) {
          if (!item.is_object() || !item.contains("head") || !item.contains("tail")) {
            why = "association entries need head and tail";
            return none;
          }
          auto head = as_text(item["head"]);
          auto tail = as_text(item["tail"]);
          std::optional<std::string> label = std::string();
          if (item.contains("label") && !item["label"].is_null()) label = as_text(item["label"]);
          if (!head || !tail || !label) {
            why = "association head/label/tail must be strings";
            return none;
          }
          out.push_back(Association{ClueId{trim(*head)}, trim(*label), ClueId{trim(*tail)}});
        }
        return std::optional(std::move(out));
      });
}

std::string select_relation(LlmGateway& gw, const std::string& qid, const std::string& phrase,
                            std::span<const std::string> candidates) {
  if (candidates.empty()) throw ConstraintError("SelectRelation needs at least one candidate");
  std::ostringstream list;
  for (const auto& c : candidates) list << "- " << c << "\n";
  auto req = make_request(
      TaskTag::SelectRelation, qid,
      "A phrase describes part of what a question asks for. Pick the one knowledge-graph relation "
      "from the candidate list that can replace the relation in the phrase while keeping its "
      "meaning. Answer with a candidate exactly as written.\n"
      "Reply with ```json {\"relation\": \"...\"} ```.",
      "Phrase: " + phrase + "\nCandidates:\n" + list.str());
  std::string choice = run_structured<std::string>(
      gw, std::move(req), [](const std::string& c, std::string& why) { return loose_string(c, "relation", why); });
  auto matched = match_candidate(choice, candidates);
  if (!matched) throw ConstraintError("relation '" + choice + "' is not among the candidates");
  return *matched;
}

int select_branch(LlmGateway& gw, const std::string& qid, const std::string& query_context,
                  const std::string& current_phrase, const std::string& related_phrase) {
  auto req = make_request(
      TaskTag::SelectBranch, qid,
      "Two phrases describe alternative ways to reach the same unknown. Choose the one that better "
      "matches the query.\nReply with ```json {\"choice\": 0} ``` or ```json {\"choice\": 1} ```.",
      "Query: " + query_context + "\n0: " + current_phrase + "\n1: " + related_phrase);
  return run_structured<int>(gw, std::move(req), [](const std::string& c, std::string& why) {
    std::optional<int> none;
    auto block = extract_structured_block(c);
    const json* v = nullptr;
    if (block && block->is_number_integer()) v = &*block;
    if (block && block->is_object()) {
      for (const char* key : {"choice", "index"}) {
        if (block->contains(key)) v = &(*block)[key];
      }
    }
    if (!v || !v->is_number_integer() || (v->get<int>() != 0 && v->get<int>() != 1)) {
      why = "expected {\"choice\": 0|1}";
      return none;
    }
    return std::optional(v->get<int>());
  });
}

std::vector<std::string> final_answer(LlmGateway& gw, const std::string& qid, const std::string& question,
                                      const std::vector<std::string>& knowledge_lines) {
  std::ostringstream kb;
  for (const auto& l : knowledge_lines) kb << l << "\n";
  auto req = make_request(
      TaskTag::FinalAnswer, qid,
      "Answer the question using the knowledge triples (subject | relation | object). List every "
      "answer entity exactly as it appears in the triples.\n"
      "Reply with ```json {\"answers\": [\"...\"]} ```.",
      "Knowledge:\n" + kb.str() + "Question: " + question);
  return run_structured<std::vector<std::string>>(gw, std::move(req), parse_answers);
}

std::vector<std::string> direct_answer(LlmGateway& gw, const std::string& qid, const std::string& question) {
  auto req = make_request(TaskTag::DirectAnswer, qid,
                          "Answer the question from your own knowledge.\n"
                          "Reply with ```json {\"answers\": [\"...\"]} ```.",
                          "Question: " + question);
  return run_structured<std::vector<std::string>>(gw, std::move(req), parse_answers);
}

}  // namespace gge::tasks
