#include <deque>
#include <map>
#include <set>

#include "gge/errors.hpp"
#include "gge/guidance_graph.hpp"
#include "gge/normalize.hpp"

namespace gge {

std::string_view to_string(ClueKind kind) {
  return kind == ClueKind::Specific ? "specific" : "generic";
}

const ClueNode* GuidanceGraph::find(const ClueId& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::string GuidanceGraph::phrase(std::size_t edge_index) const {
  const ClueEdge& e = edges.at(edge_index);
  const ClueNode* h = find(e.head);
  const ClueNode* t = find(e.tail);
  return (h ? h->label : e.head.value) + " " + e.label + " " + (t ? t->label : e.tail.value);
}

namespace {

struct Group {
  ClueId id;
  std::optional<std::string> specific;
  std::vector<std::string> generics;
  std::deque<std::string> leftovers;
};

}  // namespace

GuidanceGraph apply_rules(const std::vector<Keyword>& keywords,
                          const std::vector<Association>& associations) {
  std::vector<Group> groups;
  std::map<ClueId, std::size_t> slot;

  for (const Keyword& kw : keywords) {
    std::string label = trim(kw.label);
    if (label.empty()) throw RuleError("keyword with empty label");
    if (kw.group.value.empty()) throw RuleError("keyword '" + label + "' has no group");
    auto [it, fresh] = slot.try_emplace(kw.group, groups.size());
    if (fresh) groups.push_back(Group{kw.group, std::nullopt, {}, {}});
    Group& g = groups[it->second];
    if (kw.kind == ClueKind::Specific) {
      if (g.specific && normalize_name(*g.specific) != normalize_name(label)) {
        throw RuleError("group " + g.id.value + " has conflicting specific keywords '" + *g.specific +
                        "' and '" + label + "'");
      }
      if (!g.specific) g.specific = label;
    } else {
      g.generics.push_back(label);
    }
  }

  GuidanceGraph gg;
  std::set<std::string> specific_keys;
  for (Group& g : groups) {
    ClueNode node{g.id, {}, g.specific ? ClueKind::Specific : ClueKind::Generic};
    node.label = g.specific ? *g.specific : g.generics.front();
    std::size_t first_leftover = g.specific ? 0 : 1;
    for (std::size_t i = first_leftover; i < g.generics.size(); ++i) {
      if (normalize_name(g.generics[i]) != normalize_name(node.label)) g.leftovers.push_back(g.generics[i]);
    }
    if (g.specific) specific_keys.insert(normalize_name(*g.specific));
    gg.nodes.push_back(std::move(node));
  }

  auto allowed = [&](const std::string& label) {
    return !label.empty() && !specific_keys.contains(normalize_name(label));
  };
  auto take_donor = [&](Group& g) -> std::optional<std::string> {
    while (!g.leftovers.empty()) {
      std::string donor = std::move(g.leftovers.front());
      g.leftovers.pop_front();
      if (allowed(donor)) return donor;
      gg.dropped_generics.push_back(donor);
    }
    return std::nullopt;
  };

  for (const Association& a : associations) {
    auto h = slot.find(a.head_group);
    auto t = slot.find(a.tail_group);
    if (h == slot.end() || t == slot.end()) {
      throw RuleError("association references unknown group " +
                      (h == slot.end() ? a.head_group.value : a.tail_group.value));
    }
    if (a.head_group == a.tail_group) {
      throw RuleError("association joins group " + a.head_group.value + " to itself");
    }

    std::string label = trim(a.label);
    if (!allowed(label)) {
      auto donor = take_donor(groups[h->second]);
      if (!donor) donor = take_donor(groups[t->second]);
      if (donor) {
        label = std::move(*donor);
      } else {
        label = std::string(kDefaultEdgeLabel);
        while (!allowed(label)) label += " *";
      }
    }
    gg.edges.push_back(ClueEdge{a.head_group, std::move(label), a.tail_group});
  }

  for (Group& g : groups) {
    for (auto& rest : g.leftovers) gg.dropped_generics.push_back(std::move(rest));
  }
  return gg;
}

}  // namespace gge
