#include "gge/cli.hpp"

#include <fstream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "gge/errors.hpp"
#include "gge/guidance_graph.hpp"
#include "gge/knowledge_graph.hpp"
#include "gge/llm_gateway.hpp"
#include "gge/qa_bench.hpp"

namespace gge::cli {
namespace {

struct Options {
  std::string kg_path;
  std::string provider = "scripted";
  std::string transcript_path;
  std::string dataset_path;
  std::string question;
  std::string question_id = "q0";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_rounds;
  std::string trace_path;
  std::string fallback = "on";
  bool disable_structural_alignment = false;
  bool disable_branch_selection = false;
  bool context_free_pruning = false;
  std::string out_path;
  int jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_provider_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--provider", o.provider, "LLM provider")->check(CLI::IsMember({"scripted", "http"}));
  cmd->add_option("--transcript", o.transcript_path, "Transcript JSON for the scripted provider");
}

void add_explore_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Seed for random target tie-breaks");
  cmd->add_option("--max-rounds", o.max_rounds, "Pruning attempts per question (default 2 x clues)");
  cmd->add_option("--trace", o.trace_path, "Write exploration events as JSON lines to this path");
  cmd->add_option("--fallback", o.fallback, "Answer directly when grounding fails")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_flag("--disable-structural-alignment", o.disable_structural_alignment);
  cmd->add_flag("--disable-branch-selection", o.disable_branch_selection);
  cmd->add_flag("--context-free-pruning", o.context_free_pruning);
}

std::shared_ptr<Provider> make_provider(const Options& o) {
  if (o.provider == "scripted") {
    if (o.transcript_path.empty()) throw UsageError("--provider scripted requires --transcript");
    return ScriptedProvider::from_file(o.transcript_path);
  }
  auto config = HttpProviderConfig::from_env();
  if (!config) throw UsageError("--provider http requires GG_LLM_BASE_URL and GG_LLM_MODEL");
  return std::make_shared<HttpProvider>(*config);
}

PipelineConfig pipeline_config(const Options& o) {
  PipelineConfig c;
  c.explore.structural_alignment = !o.disable_structural_alignment;
  c.explore.branch_selection = !o.disable_branch_selection;
  c.explore.context_phrases = !o.context_free_pruning;
  c.explore.seed = o.seed;
  c.explore.max_rounds = o.max_rounds;
  c.fallback = o.fallback == "on";
  c.keep_trace = !o.trace_path.empty();
  return c;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

void write_json(const std::string& path, const nlohmann::json& j, std::ostream& out) {
  write_text(path, j.dump(2) + "\n", out);
}

int kg_stats(const Options& o, std::ostream& out) {
  KnowledgeGraph kg = load_tsv(o.kg_path);
  if (o.out_path.empty()) {
    out << "entities=" << kg.entity_count() << " relations=" << kg.relation_count()
        << " triples=" << kg.triple_count() << "\n";
  } else {
    write_json(o.out_path,
               {{"entities", kg.entity_count()}, {"relations", kg.relation_count()}, {"triples", kg.triple_count()}},
               out);
  }
  return kOk;
}

int gg_build(const Options& o, std::ostream& out) {
  LlmGateway gateway(make_provider(o));
  GuidanceGraph gg = construct(o.question, o.question_id, gateway);
  write_json(o.out_path, {{"guidance_graph", to_json(gg)}, {"findings", to_json(validate(gg))}}, out);
  return kOk;
}

int ask(const Options& o, std::ostream& out, std::ostream& err) {
  KnowledgeGraph kg = load_tsv(o.kg_path);
  LlmGateway gateway(make_provider(o));
  PipelineConfig config = pipeline_config(o);
  PredictionRecord rec = answer_question(QAExample{o.question_id, o.question, {}}, kg, gateway, config);
  if (config.keep_trace) write_text(o.trace_path, to_jsonl(rec.trace, rec.id), out);

  nlohmann::json j = to_json(rec);
  // A single question has no gold answers to score against.
  j.erase("partial");
  j.erase("complete");
  write_json(o.out_path, j, out);
  if (rec.provider_failure) {
    err << "ggx: provider error: " << *rec.error << "\n";
    return kProviderError;
  }
  return kOk;
}

int bench(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<QAExample> dataset = load_dataset(o.dataset_path);
  if (dataset.empty()) throw FormatError(o.dataset_path, 0, "dataset is empty");
  KnowledgeGraph kg = load_tsv(o.kg_path);
  LlmGateway gateway(make_provider(o));
  PipelineConfig config = pipeline_config(o);

  err << "bench: " << dataset.size() << " questions, " << o.jobs << " job(s)\n";
  BenchReport report = run_benchmark(dataset, kg, gateway, config, o.jobs);
  if (config.keep_trace) {
    std::string lines;
    for (const auto& r : report.records) lines += to_jsonl(r.trace, r.id);
    write_text(o.trace_path, lines, out);
  }
  write_json(o.out_path.empty() ? "-" : o.out_path, to_json(report), out);

  std::size_t errors = 0;
  for (const auto& r : report.records) errors += r.error ? 1 : 0;
  err << "bench: partial " << report.aggregates.partial_rate << "%, complete " << report.aggregates.complete_rate
      << "%, errors " << errors << "\n";
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Guidance-graph knowledge exploration over a TSV knowledge graph", "ggx"};
  app.require_subcommand(1);

  auto* kg_cmd = app.add_subcommand("kg", "Knowledge graph utilities")->require_subcommand(1);
  auto* stats = kg_cmd->add_subcommand("stats", "Entity, relation and triple counts");
  stats->add_option("--kg", o.kg_path, "Knowledge graph TSV")->required();
  stats->add_option("--out", o.out_path, "Write JSON here ('-' for stdout)");

  auto* gg_cmd = app.add_subcommand("gg", "Guidance graph utilities")->require_subcommand(1);
  auto* build = gg_cmd->add_subcommand("build", "Build and validate a guidance graph for a question");
  build->add_option("--question", o.question)->required();
  build->add_option("--id", o.question_id, "Question id keying the transcript");
  build->add_option("--out", o.out_path, "Write JSON here ('-' for stdout)");
  add_provider_options(build, o);

  auto* ask_cmd = app.add_subcommand("ask", "Answer one question");
  ask_cmd->add_option("--kg", o.kg_path)->required();
  ask_cmd->add_option("--question", o.question)->required();
  ask_cmd->add_option("--id", o.question_id, "Question id keying the transcript");
  ask_cmd->add_option("--out", o.out_path, "Write JSON here ('-' for stdout)");
  add_provider_options(ask_cmd, o);
  add_explore_options(ask_cmd, o);

  auto* bench_cmd = app.add_subcommand("bench", "Run a JSONL dataset and write a report");
  bench_cmd->add_option("--kg", o.kg_path)->required();
  bench_cmd->add_option("--dataset", o.dataset_path)->required();
  bench_cmd->add_option("--jobs", o.jobs, "Questions processed in parallel")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", o.out_path, "Report path ('-' for stdout, the default)");
  add_provider_options(bench_cmd, o);
  add_explore_options(bench_cmd, o);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ggx: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (stats->parsed()) return kg_stats(o, out);
    if (build->parsed()) return gg_build(o, out);
    if (ask_cmd->parsed()) return ask(o, out, err);
    if (bench_cmd->parsed()) return bench(o, out, err);
  } catch (const UsageError& e) {
    err << "ggx: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "ggx: " << e.what() << "\n";
    return kDataError;
  } catch (const FormatError& e) {
    err << "ggx: " << e.what() << "\n";
    return kDataError;
  } catch (const RuleError& e) {
    err << "ggx: " << e.what() << "\n";
    return kDataError;
  } catch (const ProviderError& e) {
    err << "ggx: provider error: " << e.what() << "\n";
    return kProviderError;
  } catch (const TaskError& e) {
    err << "ggx: " << e.what() << "\n";
    return kProviderError;
  }
  err << "ggx: no command given\n";
  return kUsage;
}

}  // namespace gge::cli
