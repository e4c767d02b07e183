#include "gge/guidance_graph.hpp"

namespace gge {

nlohmann::json to_json(const GuidanceGraph& gg) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : gg.nodes) {
    nodes.push_back({{"id", n.id.value}, {"label", n.label}, {"kind", to_string(n.kind)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : gg.edges) {
    edges.push_back({{"head", e.head.value}, {"label", e.label}, {"tail", e.tail.value}});
  }
  return {{"statement", gg.statement}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

nlohmann::json to_json(const std::vector<Finding>& findings) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : findings) {
    out.push_back({{"severity", f.severity == Finding::Severity::Error ? "error" : "warning"},
                   {"code", f.code},
                   {"message", f.message}});
  }
  return out;
}

}  // namespace gge
