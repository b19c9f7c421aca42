// Command-line driver: ingest DBLP XML, run threshold experiments, refine
// common names, generate synthetic corpora and print reports.
//
// Exit codes: 0 success, 1 usage or argument error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "CLI11.hpp"
#include "disambig/canonical.hpp"
#include "disambig/coauthor_graph.hpp"
#include "disambig/dblp_xml.hpp"
#include "disambig/errors.hpp"
#include "disambig/gold.hpp"
#include "disambig/pipeline.hpp"
#include "disambig/synth.hpp"
#include "disambig/threshold_cluster.hpp"

namespace {

using namespace disambig;

constexpr int kUsage = 1;
constexpr int kDataError = 2;

struct IngestOptions {
  std::string input;
  std::string records;
  std::string gold;
  std::string graph_cache;
  std::size_t min_gold_authors = 1;
};

struct CorpusOptions {
  std::string records;
  std::string gold;
  std::string graph_cache;
  std::string out_dir;
  std::size_t min_gold_authors = 1;
};

struct SynthOptions {
  std::string records;
  std::string gold;
  std::string xml;
  SynthConfig config;
};

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int run_ingest(const IngestOptions& opt) {
  DblpReader reader(open_input(opt.input));
  std::ofstream records_out = open_output(opt.records);
  GoldBuilder gold_builder;
  std::unordered_set<std::string> ids;
  std::unordered_set<std::string> names;
  std::vector<RawRecord> kept;  // only for the graph cache
  std::size_t count = 0;
  while (auto record = reader.next()) {
    if (!ids.insert(record->record_id).second) {
      throw DataIntegrityError("duplicate record id " + record->record_id);
    }
    for (const AuthorMention& m : record->mentions) names.insert(m.surface_name);
    records_out << to_canonical_line(*record) << '\n';
    gold_builder.add(*record);
    if (!opt.graph_cache.empty()) kept.push_back(std::move(*record));
    ++count;
  }
  const GoldStandard gold =
      std::move(gold_builder).finish({opt.min_gold_authors});
  open_output(opt.gold) << gold_to_json(gold) << '\n';
  if (!opt.graph_cache.empty()) {
    std::ofstream cache = open_output(opt.graph_cache);
    CoauthorGraph::build(kept).save(cache);
  }
  std::cerr << "records: " << count << "\n"
            << "distinct author names: " << names.size() << "\n"
            << "gold blocks: " << gold.entries.size() << "\n"
            << "gold authors: " << gold.author_count() << "\n";
  if (gold.entries.empty()) {
    std::cerr << "warning: no disambiguated author names found\n";
  }
  return 0;
}

struct LoadedCorpus {
  CoauthorGraph graph;
  BlockSet blocks;
};

LoadedCorpus load_corpus(const CorpusOptions& opt) {
  LoadedCorpus corpus;
  if (!opt.graph_cache.empty() && std::filesystem::exists(opt.graph_cache)) {
    std::ifstream in(opt.graph_cache, std::ios::binary);
    corpus.graph = CoauthorGraph::load(in);
  } else {
    const std::vector<RawRecord> records = read_canonical_file(opt.records);
    corpus.graph = CoauthorGraph::build(records);
    if (!opt.graph_cache.empty()) {
      std::ofstream cache = open_output(opt.graph_cache);
      corpus.graph.save(cache);
    }
  }
  GoldStandard gold = read_gold_file(opt.gold);
  apply_gold_config(gold, {opt.min_gold_authors});
  corpus.blocks = build_blocks(gold);
  return corpus;
}

int run_run(const CorpusOptions& opt, const ExperimentConfig& config) {
  config.validate();
  const LoadedCorpus corpus = load_corpus(opt);
  const BlockSet selected = select_blocks(corpus.blocks, config);
  const RunResult result = run_experiment(corpus.graph, selected, config);
  for (const ThresholdResult& t : result.thresholds) {
    std::cerr << "threshold " << t.threshold << ": " << t.comparisons
              << " comparisons (expected " << result.expected_comparisons
              << ")\n";
  }
  write_run_outputs(opt.out_dir, result, selected, config);
  std::cout << render_report(run_summary(result, config));
  return 0;
}

int run_common(const CorpusOptions& opt, const ExperimentConfig& config) {
  config.validate();
  const LoadedCorpus corpus = load_corpus(opt);
  const BlockSet selected = select_blocks(corpus.blocks, config);
  const CommonNamesResult result =
      run_common_names(corpus.graph, selected, config);
  if (result.blocks.empty()) {
    std::cerr << "warning: no block has more than "
              << config.common_name_min_pubs << " publications\n";
  }
  write_common_names_outputs(opt.out_dir, result, selected, config);
  std::cout << render_report(common_names_report(result, config));
  return 0;
}

int run_synth(const SynthOptions& opt) {
  const SyntheticCorpus corpus = generate_synthetic(opt.config);
  {
    std::ofstream out = open_output(opt.records);
    write_canonical(out, corpus.records);
  }
  open_output(opt.gold) << gold_to_json(corpus.gold) << '\n';
  if (!opt.xml.empty()) {
    std::ofstream out = open_output(opt.xml);
    DblpXmlWriter writer(out);
    for (const RawRecord& r : corpus.records) writer.write(r);
  }
  std::cerr << "records: " << corpus.records.size()
            << ", gold blocks: " << corpus.gold.entries.size()
            << ", gold authors: " << corpus.gold.author_count() << "\n";
  return 0;
}

int run_report(const std::vector<std::string>& paths) {
  for (const std::string& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path, 0);
    nlohmann::ordered_json report;
    try {
      report = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": " + e.what(), e.byte);
    }
    std::cout << render_report(report);
  }
  return 0;
}

void add_corpus_options(CLI::App* cmd, CorpusOptions& opt) {
  cmd->add_option("--records", opt.records, "Canonical record file (JSONL)")
      ->required();
  cmd->add_option("--gold", opt.gold, "Gold standard JSON")->required();
  cmd->add_option("--out-dir", opt.out_dir, "Report directory")->required();
  cmd->add_option("--graph-cache", opt.graph_cache,
                  "Binary graph snapshot, read if present, written otherwise");
  cmd->add_option("--min-gold-authors", opt.min_gold_authors,
                  "Drop names with fewer gold identities")
      ->capture_default_str();
}

void add_sampling_options(CLI::App* cmd, ExperimentConfig& config) {
  cmd->add_option("--sample-count", config.sample_count, "Blocks to sample")
      ->capture_default_str();
  cmd->add_flag("--all-blocks", config.all_blocks, "Use every block, no sampling");
  cmd->add_option("--seed", config.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--alpha", config.alpha, "Precision weight in BCubed F")
      ->capture_default_str();
  cmd->add_flag("--f-from-means", config.f_from_means,
                "Block F from mean P and R instead of mean item F");
  cmd->add_option("--workers", config.workers, "Worker threads")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-authorship based author name disambiguation"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "Parse DBLP XML into canonical records and a gold standard");
  ingest_cmd->add_option("-i,--input", ingest.input,
                         "DBLP XML file, optionally gzipped; - for stdin")
      ->required();
  ingest_cmd->add_option("--records", ingest.records, "Output record file")
      ->required();
  ingest_cmd->add_option("--gold", ingest.gold, "Output gold standard")
      ->required();
  ingest_cmd->add_option("--graph-cache", ingest.graph_cache,
                         "Also write a binary graph snapshot");
  ingest_cmd->add_option("--min-gold-authors", ingest.min_gold_authors,
                         "Drop names with fewer gold identities")
      ->capture_default_str();

  CorpusOptions run_opt;
  ExperimentConfig run_config;
  auto* run_cmd = app.add_subcommand(
      "run", "Cluster sampled blocks per threshold and evaluate");
  add_corpus_options(run_cmd, run_opt);
  add_sampling_options(run_cmd, run_config);
  run_cmd->add_option("--threshold", run_config.thresholds,
                      "Distance thresholds (odd)")
      ->capture_default_str();

  CorpusOptions common_opt;
  ExperimentConfig common_config;
  auto* common_cmd = app.add_subcommand(
      "common-names", "Refine large blocks with Louvain and compare");
  add_corpus_options(common_cmd, common_opt);
  add_sampling_options(common_cmd, common_config);
  common_cmd->add_option("--min-block-size", common_config.common_name_min_pubs,
                         "Refine blocks with more publications than this")
      ->capture_default_str();
  common_cmd->add_option("--threshold", common_config.common_name_threshold,
                         "Threshold of the base clustering")
      ->capture_default_str();
  common_cmd->add_option("--resolution", common_config.resolution,
                         "Modularity resolution")
      ->capture_default_str();
  common_cmd->add_option("--max-passes", common_config.max_passes,
                         "Louvain aggregation rounds")
      ->capture_default_str();

  SynthOptions synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a planted-author corpus");
  synth_cmd->add_option("--records", synth.records, "Output record file")
      ->required();
  synth_cmd->add_option("--gold", synth.gold, "Output gold standard")
      ->required();
  synth_cmd->add_option("--xml", synth.xml, "Also write DBLP-style XML");
  synth_cmd->add_option("--blocks", synth.config.blocks)->capture_default_str();
  synth_cmd->add_option("--authors-min", synth.config.authors_min)
      ->capture_default_str();
  synth_cmd->add_option("--authors-max", synth.config.authors_max)
      ->capture_default_str();
  synth_cmd->add_option("--pubs-min", synth.config.pubs_min)
      ->capture_default_str();
  synth_cmd->add_option("--pubs-max", synth.config.pubs_max)
      ->capture_default_str();
  synth_cmd->add_option("--pool-size", synth.config.pool_size,
                        "Private co-authors per author topic")
      ->capture_default_str();
  synth_cmd->add_option("--topics-min", synth.config.topics_min)
      ->capture_default_str();
  synth_cmd->add_option("--topics-max", synth.config.topics_max)
      ->capture_default_str();
  synth_cmd->add_option("--coauthors-min", synth.config.coauthors_min)
      ->capture_default_str();
  synth_cmd->add_option("--coauthors-max", synth.config.coauthors_max)
      ->capture_default_str();
  synth_cmd->add_option("--bridge-rate", synth.config.bridge_rate,
                        "Chance per publication of a cross-author link")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.config.seed)->capture_default_str();

  std::vector<std::string> report_paths;
  auto* report_cmd =
      app.add_subcommand("report", "Print report JSON files as tables");
  report_cmd->add_option("files", report_paths, "Report files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*run_cmd) return run_run(run_opt, run_config);
    if (*common_cmd) return run_common(common_opt, common_config);
    if (*synth_cmd) return run_synth(synth);
    if (*report_cmd) return run_report(report_paths);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}
