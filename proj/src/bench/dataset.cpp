#include <fstream>
#include <set>

#include "gge/errors.hpp"
#include "gge/normalize.hpp"
#include "gge/qa_bench.hpp"

namespace gge {

std::vector<QAExample> parse_dataset(std::istream& in, const std::string& source) {
  std::vector<QAExample> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(source, line_no, e.what());
    }
    QAExample ex;
    try {
      ex.id = j.at("id").get<std::string>();
      ex.question = j.at("question").get<std::string>();
      ex.answers = j.at("answers").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      throw FormatError(source, line_no, "expected {\"id\": string, \"question\": string, \"answers\": [string]}");
    }
    if (ex.id.empty()) throw FormatError(source, line_no, "empty id");
    if (ex.answers.empty()) throw FormatError(source, line_no, "answers must be non-empty");
    if (!ids.insert(ex.id).second) throw FormatError(source, line_no, "duplicate id " + ex.id);
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<QAExample> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path.string());
  return parse_dataset(in, path.string());
}

}  // namespace gge
