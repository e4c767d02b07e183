#include <fstream>
#include <set>
#include <string>

#include "gge/errors.hpp"
#include "gge/knowledge_graph.hpp"
#include "gge/normalize.hpp"

namespace gge {

KnowledgeGraph load_tsv(const std::filesystem::path& path, LoadStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open knowledge graph file: " + path.string());

  std::vector<NamedTriple> triples;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  LoadStats local;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty() || line.starts_with('#')) continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3) {
      throw FormatError(path.string(), line_no,
                        "expected 3 tab-separated fields, found " + std::to_string(fields.size()));
    }
    NamedTriple t{trim(fields[0]), trim(fields[1]), trim(fields[2])};
    if (t.subject.empty() || t.relation.empty() || t.object.empty()) {
      throw FormatError(path.string(), line_no, "empty field");
    }
    ++local.data_lines;
    if (!seen.emplace(t.subject, t.relation, t.object).second) {
      ++local.duplicate_lines;
      continue;
    }
    triples.push_back(std::move(t));
  }
  if (in.bad()) throw IoError("read failure: " + path.string());
  if (stats) *stats = local;
  return KnowledgeGraph::from_triples(triples);
}

}  // namespace gge
