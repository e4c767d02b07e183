#include <set>

#include "gge/normalize.hpp"
#include "gge/qa_bench.hpp"

namespace gge {

MatchScore score(const std::vector<std::string>& predicted, const std::vector<std::string>& gold) {
  std::set<std::string> have;
  for (const auto& p : predicted) have.insert(normalize_name(p));
  std::set<std::string> want;
  for (const auto& g : gold) want.insert(normalize_name(g));

  std::size_t hits = 0;
  for (const auto& g : want) hits += have.contains(g) ? 1 : 0;
  MatchScore s;
  s.partial = hits > 0 ? 1 : 0;
  s.complete = !want.empty() && hits == want.size() ? 1 : 0;
  return s;
}

}  // namespace gge
