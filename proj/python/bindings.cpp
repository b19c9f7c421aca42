#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "disambig/bcubed.hpp"
#include "disambig/canonical.hpp"
#include "disambig/clustering.hpp"
#include "disambig/coauthor_graph.hpp"
#include "disambig/community.hpp"
#include "disambig/dblp_xml.hpp"
#include "disambig/errors.hpp"
#include "disambig/gold.hpp"
#include "disambig/pipeline.hpp"
#include "disambig/synth.hpp"
#include "disambig/threshold_cluster.hpp"

namespace py = pybind11;
using namespace disambig;

namespace {

std::vector<RawRecord> read_dblp(const std::string& path) {
  std::vector<RawRecord> out;
  DblpReader reader(open_input(path));
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

WeightedPubGraph edge_graph(std::size_t n,
                            const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges) {
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(std::to_string(i));
  std::vector<WeightedEdge> list;
  for (const auto& [u, v, w] : edges) list.push_back({u, v, w});
  return WeightedPubGraph(std::move(nodes), std::move(list));
}

ExperimentConfig experiment_config(const py::kwargs& kw) {
  ExperimentConfig c;
  for (const auto& [key, value] : kw) {
    const std::string k = py::str(key);
    if (k == "thresholds") c.thresholds = value.cast<std::vector<int>>();
    else if (k == "sample_count") c.sample_count = value.cast<std::size_t>();
    else if (k == "all_blocks") c.all_blocks = value.cast<bool>();
    else if (k == "seed") c.seed = value.cast<std::uint64_t>();
    else if (k == "alpha") c.alpha = value.cast<double>();
    else if (k == "f_from_means") c.f_from_means = value.cast<bool>();
    else if (k == "min_block_size") c.common_name_min_pubs = value.cast<std::size_t>();
    else if (k == "common_name_threshold") c.common_name_threshold = value.cast<int>();
    else if (k == "resolution") c.resolution = value.cast<double>();
    else if (k == "max_passes") c.max_passes = value.cast<int>();
    else if (k == "workers") c.workers = value.cast<unsigned>();
    else throw ArgumentError("unknown option " + k);
  }
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Co-authorship based author name disambiguation";

  auto base = py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MalformedMention>(m, "MalformedMention", PyExc_ValueError);
  py::register_exception<DataIntegrityError>(m, "DataIntegrityError", PyExc_ValueError);
  py::register_exception<UndefinedModularity>(m, "UndefinedModularity", PyExc_ValueError);
  py::register_exception<LookupError>(m, "UnknownIdError", PyExc_KeyError);
  (void)base;

  py::class_<AuthorMention>(m, "AuthorMention")
      .def_readonly("surface_name", &AuthorMention::surface_name)
      .def_readonly("gold_id", &AuthorMention::gold_id)
      .def_readonly("raw", &AuthorMention::raw)
      .def_property_readonly("gold_key", &AuthorMention::gold_key)
      .def("__repr__", [](const AuthorMention& a) { return "AuthorMention(" + a.raw + ")"; });

  py::class_<RawRecord>(m, "RawRecord")
      .def_readonly("record_id", &RawRecord::record_id)
      .def_property_readonly("kind", [](const RawRecord& r) { return std::string(kind_name(r.kind)); })
      .def_readonly("title", &RawRecord::title)
      .def_readonly("venue", &RawRecord::venue)
      .def_readonly("year", &RawRecord::year)
      .def_readonly("mentions", &RawRecord::mentions)
      .def("to_json", &to_canonical_line)
      .def("__eq__", [](const RawRecord& a, const RawRecord& b) { return a == b; })
      .def("__repr__", [](const RawRecord& r) { return "RawRecord(" + r.record_id + ")"; });

  m.def("parse_mention", &parse_mention, py::arg("raw"));
  m.def("normalize_name", &normalize_name, py::arg("text"));
  m.def("record_from_json", [](const std::string& line) { return from_canonical_line(line); },
        py::arg("line"));
  m.def("read_dblp", &read_dblp, py::arg("path"),
        "Stream a DBLP XML file (plain or gzip) into records.");
  m.def("parse_dblp", [](const std::string& xml) { return parse_dblp(xml); }, py::arg("xml"));
  m.def("to_dblp_xml", &to_dblp_xml, py::arg("records"));
  m.def("read_records", &read_canonical_file, py::arg("path"));
  m.def("write_records", [](const std::string& path, const std::vector<RawRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    write_canonical(out, records);
  }, py::arg("path"), py::arg("records"));

  py::class_<GoldStandard>(m, "GoldStandard")
      .def_readonly("entries", &GoldStandard::entries)
      .def_property_readonly("author_count", &GoldStandard::author_count)
      .def("to_json", &gold_to_json)
      .def_static("from_json", &gold_from_json, py::arg("text"))
      .def("__eq__", [](const GoldStandard& a, const GoldStandard& b) { return a == b; });

  m.def("build_gold_standard", [](const std::vector<RawRecord>& records, std::size_t min_gold_authors) {
    return build_gold_standard(records, GoldConfig{min_gold_authors});
  }, py::arg("records"), py::arg("min_gold_authors") = 1);

  py::class_<Block>(m, "Block")
      .def_readonly("block_key", &Block::block_key)
      .def_readonly("members", &Block::members)
      .def_readonly("labels", &Block::labels)
      .def("__len__", &Block::size);

  py::class_<BlockSet>(m, "BlockSet")
      .def_readonly("blocks", &BlockSet::blocks)
      .def_property_readonly("publication_count", &BlockSet::publication_count)
      .def("__len__", &BlockSet::size)
      .def("__getitem__", [](const BlockSet& s, std::size_t i) {
        if (i >= s.size()) throw py::index_error();
        return s.blocks[i];
      });

  m.def("build_blocks", &build_blocks, py::arg("gold"));
  m.def("sample_blocks", &sample_blocks, py::arg("blocks"), py::arg("count"), py::arg("seed"));
  m.def("count_comparisons", &count_comparisons, py::arg("blocks"));

  py::class_<CoauthorGraph>(m, "CoauthorGraph")
      .def_static("build", [](const std::vector<RawRecord>& r) { return CoauthorGraph::build(r); },
                  py::arg("records"))
      .def_static("load", [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ArgumentError("cannot open " + path);
        return CoauthorGraph::load(in);
      }, py::arg("path"))
      .def("save", [](const CoauthorGraph& g, const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ArgumentError("cannot write " + path);
        g.save(out);
      }, py::arg("path"))
      .def_property_readonly("pub_count", &CoauthorGraph::pub_count)
      .def_property_readonly("author_count", &CoauthorGraph::author_count)
      .def("distance", [](const CoauthorGraph& g, const std::string& a, const std::string& b,
                          int max_distance, const std::string& excluded) -> std::optional<int> {
        const PubDistance d = pub_distance(g, a, b, max_distance, excluded);
        if (!d.finite()) return std::nullopt;
        return d.value();
      }, py::arg("a"), py::arg("b"), py::arg("max_distance") = 3, py::arg("excluded_author") = "",
         "Intermediate-node distance, or None beyond max_distance.")
      .def("within", [](const CoauthorGraph& g, const std::string& id, int k, const std::string& excluded) {
        return pubs_within(g, id, k, excluded);
      }, py::arg("record_id"), py::arg("k") = 2, py::arg("excluded_author") = "");

  py::class_<Clustering>(m, "Clustering")
      .def_property_readonly("block_key", &Clustering::block_key)
      .def_property_readonly("members", &Clustering::members)
      .def_property_readonly("labels", &Clustering::labels)
      .def_property_readonly("cluster_count", &Clustering::cluster_count)
      .def("cluster_id", &Clustering::cluster_id, py::arg("record_id"))
      .def("clusters", &Clustering::clusters)
      .def("is_coarsening_of", [](const Clustering& a, const Clustering& b) { return is_coarsening_of(a, b); })
      .def_static("gold", &Clustering::gold)
      .def_static("singletons", &Clustering::singletons)
      .def("__eq__", [](const Clustering& a, const Clustering& b) { return a == b; });

  m.def("cluster_block", [](const Block& b, const CoauthorGraph& g, int threshold) {
    return cluster_block(b, g, threshold);
  }, py::arg("block"), py::arg("graph"), py::arg("threshold"));
  m.def("refine_clustering", [](const Block& b, const Clustering& base, const CoauthorGraph& g,
                                double resolution) {
    return refine_clustering(b, base, g, LouvainConfig{resolution, 100, 0});
  }, py::arg("block"), py::arg("base"), py::arg("graph"), py::arg("resolution") = 1.0);

  py::class_<BcubedScores>(m, "BcubedScores")
      .def(py::init<double, double, double>(), py::arg("precision"), py::arg("recall"), py::arg("f"))
      .def_readonly("precision", &BcubedScores::precision)
      .def_readonly("recall", &BcubedScores::recall)
      .def_readonly("f", &BcubedScores::f)
      .def("__eq__", [](const BcubedScores& a, const BcubedScores& b) { return a == b; })
      .def("__repr__", [](const BcubedScores& s) {
        std::ostringstream o;
        o << "BcubedScores(precision=" << s.precision << ", recall=" << s.recall << ", f=" << s.f << ")";
        return o.str();
      });

  m.def("block_scores", [](const Clustering& c, const Block& b, double alpha, bool f_from_means) {
    return block_scores(c, b, {alpha, f_from_means});
  }, py::arg("clustering"), py::arg("block"), py::arg("alpha") = 0.5, py::arg("f_from_means") = false);
  m.def("item_scores", [](const Clustering& c, const Block& b, double alpha) {
    return all_item_scores(c, b, {alpha, false});
  }, py::arg("clustering"), py::arg("block"), py::arg("alpha") = 0.5);
  m.def("corpus_scores", [](const std::vector<BcubedScores>& s) { return corpus_scores(s); },
        py::arg("per_block"));

  m.def("modularity", [](std::size_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges,
                         const std::vector<std::uint32_t>& labels, double resolution) {
    return modularity(edge_graph(n, edges), Partition::from_labels(labels), resolution);
  }, py::arg("n"), py::arg("edges"), py::arg("labels"), py::arg("resolution") = 1.0);
  m.def("louvain", [](std::size_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges,
                      double resolution) {
    return louvain(edge_graph(n, edges), LouvainConfig{resolution, 100, 0}).partition.assignment;
  }, py::arg("n"), py::arg("edges"), py::arg("resolution") = 1.0,
     "Community of every node, numbered by first appearance.");

  m.def("generate_synthetic", [](const py::kwargs& kw) {
    SynthConfig c;
    for (const auto& [key, value] : kw) {
      const std::string k = py::str(key);
      if (k == "blocks") c.blocks = value.cast<std::size_t>();
      else if (k == "authors_min") c.authors_min = value.cast<std::size_t>();
      else if (k == "authors_max") c.authors_max = value.cast<std::size_t>();
      else if (k == "pubs_min") c.pubs_min = value.cast<std::size_t>();
      else if (k == "pubs_max") c.pubs_max = value.cast<std::size_t>();
      else if (k == "pool_size") c.pool_size = value.cast<std::size_t>();
      else if (k == "topics_min") c.topics_min = value.cast<std::size_t>();
      else if (k == "topics_max") c.topics_max = value.cast<std::size_t>();
      else if (k == "coauthors_min") c.coauthors_min = value.cast<std::size_t>();
      else if (k == "coauthors_max") c.coauthors_max = value.cast<std::size_t>();
      else if (k == "bridge_rate") c.bridge_rate = value.cast<double>();
      else if (k == "seed") c.seed = value.cast<std::uint64_t>();
      else throw ArgumentError("unknown option " + k);
    }
    SyntheticCorpus corpus = generate_synthetic(c);
    return py::make_tuple(std::move(corpus.records), std::move(corpus.gold));
  }, "Returns (records, gold).");

  m.def("run_experiment", [](const CoauthorGraph& g, const BlockSet& blocks, const py::kwargs& kw) {
    const ExperimentConfig c = experiment_config(kw);
    RunResult r;
    {
      py::gil_scoped_release release;
      r = run_experiment(g, select_blocks(blocks, c), c);
    }
    nlohmann::ordered_json out = run_summary(r, c);
    nlohmann::ordered_json evals = nlohmann::ordered_json::array();
    for (const ThresholdResult& t : r.thresholds) evals.push_back(eval_report(t, c));
    out["evaluations"] = std::move(evals);
    return out.dump();
  }, py::arg("graph"), py::arg("blocks"), "JSON text of the run summary and per-threshold reports.");

  m.def("run_common_names", [](const CoauthorGraph& g, const BlockSet& blocks, const py::kwargs& kw) {
    const ExperimentConfig c = experiment_config(kw);
    CommonNamesResult r;
    {
      py::gil_scoped_release release;
      r = run_common_names(g, select_blocks(blocks, c), c);
    }
    return common_names_report(r, c).dump();
  }, py::arg("graph"), py::arg("blocks"));

  m.def("render_report", [](const std::string& text) {
    return render_report(nlohmann::ordered_json::parse(text));
  }, py::arg("report_json"));
}
