#include <map>
#include <numeric>
#include <set>

#include "gge/guidance_graph.hpp"
#include "gge/normalize.hpp"

namespace gge {

std::vector<std::vector<std::size_t>> connected_components(const GuidanceGraph& gg) {
  std::map<ClueId, std::size_t> index;
  for (std::size_t i = 0; i < gg.nodes.size(); ++i) index.emplace(gg.nodes[i].id, i);

  std::vector<std::size_t> parent(gg.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : gg.edges) {
    auto h = index.find(e.head);
    auto t = index.find(e.tail);
    if (h == index.end() || t == index.end()) continue;
    parent[root(h->second)] = root(t->second);
  }

  std::map<std::size_t, std::size_t> component_of_root;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < gg.nodes.size(); ++i) {
    auto [it, fresh] = component_of_root.try_emplace(root(i), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

std::vector<Finding> validate(const GuidanceGraph& gg) {
  using S = Finding::Severity;
  std::vector<Finding> out;
  if (gg.nodes.empty()) {
    out.push_back({S::Error, "no-nodes", "guidance graph has no nodes"});
    return out;
  }

  std::set<std::string> specific_keys;
  for (const auto& n : gg.nodes) {
    if (n.kind == ClueKind::Specific) specific_keys.insert(normalize_name(n.label));
  }
  for (std::size_t i = 0; i < gg.edges.size(); ++i) {
    const auto& e = gg.edges[i];
    for (const ClueId* end : {&e.head, &e.tail}) {
      if (!gg.find(*end)) {
        out.push_back({S::Error, "missing-endpoint",
                       "edge " + std::to_string(i) + " references unknown node " + end->value});
      }
    }
    if (specific_keys.contains(normalize_name(e.label))) {
      out.push_back({S::Error, "specific-as-edge",
                     "edge " + std::to_string(i) + " is labeled by specific keyword '" + e.label + "'"});
    }
  }

  if (specific_keys.empty()) {
    out.push_back({S::Warning, "no-specific", "no specific keyword; exploration has no starting point"});
  }
  if (connected_components(gg).size() > 1) {
    out.push_back({S::Warning, "disconnected", "guidance graph is disconnected"});
  }
  for (const auto& g : gg.dropped_generics) {
    out.push_back({S::Warning, "dropped-generic", "generic keyword '" + g + "' was not used"});
  }
  return out;
}

bool has_errors(const std::vector<Finding>& findings) {
  for (const auto& f : findings) {
    if (f.severity == Finding::Severity::Error) return true;
  }
  return false;
}

}  // namespace gge
