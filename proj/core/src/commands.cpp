#include "brandgraph/commands.hpp"

#include <fstream>
#include <sstream>

#include "brandgraph/error.hpp"
#include "json.hpp"

namespace brandgraph {

namespace {

using nlohmann::json;

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j[key].get<T>();
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::MissingFile:
    case ErrorCode::IoError:
      return kExitIo;
    default:
      return kExitData;
  }
}

void apply_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedRow, path.string(), 1,
                std::string("invalid JSON: ") + e.what());
  }

  AnalysisConfig& a = config.analysis;
  maybe(j, "seed", a.louvain_seed);
  maybe(j, "resolution", a.resolution);
  maybe(j, "eigen_tol", a.eigen_tol);
  maybe(j, "eigen_max_iter", a.eigen_max_iter);
  maybe(j, "pagerank_damping", a.pagerank_damping);
  maybe(j, "pagerank_tol", a.pagerank_tol);
  maybe(j, "pagerank_max_iter", a.pagerank_max_iter);
  maybe(j, "top_k", a.top_k);
  maybe(j, "mask", a.mask);
  maybe(j, "mask_salt", a.mask_salt);
  if (j.contains("kind_weights")) {
    for (const auto& [name, w] : j["kind_weights"].items()) {
      auto kind = event_kind_from(name);
      if (!kind)
        throw Error(ErrorCode::MalformedRow, path.string(), 1,
                    "unknown event kind '" + name + "' in kind_weights");
      a.kind_weights[*kind] = w.get<double>();
    }
  }
  if (j.contains("lexicon")) {
    const std::string lex_path = j["lexicon"].get<std::string>();
    a.lexicon = load_lexicon(lex_path);
    a.lexicon_source = lex_path;
  }
  if (j.contains("layout")) {
    const json& l = j["layout"];
    maybe(l, "scaling", a.layout.scaling);
    maybe(l, "gravity", a.layout.gravity);
    maybe(l, "iterations", a.layout.iterations);
    maybe(l, "jitter_tolerance", a.layout.jitter_tolerance);
    maybe(l, "linlog", a.layout.linlog);
    maybe(l, "seed", a.layout.seed);
    maybe(l, "posts", a.layout_posts);
    maybe(l, "exact_limit", a.layout_exact_limit);
  }
}

int cmd_validate(const std::filesystem::path& dataset_dir, std::ostream& out,
                 std::ostream& err) {
  std::vector<std::string> warnings;
  try {
    PageDataset ds = parse_page_dataset(dataset_dir, &warnings);
    DatasetStats stats = dataset_stats(ds);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    out << "ok: " << stats.n_posts << " posts, " << stats.n_users << " users, "
        << stats.n_events << " events, " << stats.total_engagements
        << " total engagements\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_analyze(const std::filesystem::path& dataset_dir,
                const std::filesystem::path& out_dir, const RunConfig& config,
                std::ostream& err) {
  try {
    std::vector<std::string> warnings;
    PageDataset ds = parse_page_dataset(dataset_dir, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    PageReportBundle bundle = analyze_page_bundle(ds, config.analysis);
    write_page_tree(bundle, out_dir);

    if (config.graphml_path || config.edge_list_path) {
      EngagementGraph eg = build_engagement_graph(ds, config.analysis.kind_weights);
      if (config.graphml_path) {
        std::ofstream g(*config.graphml_path, std::ios::binary);
        if (!g)
          throw Error(ErrorCode::IoError, "cannot write " + config.graphml_path->string());
        write_graphml(eg.graph, g);
      }
      if (config.edge_list_path) {
        std::ofstream g(*config.edge_list_path, std::ios::binary);
        if (!g)
          throw Error(ErrorCode::IoError,
                      "cannot write " + config.edge_list_path->string());
        write_edge_list_tsv(eg.graph, g);
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_compare(const std::filesystem::path& dataset_a,
                const std::filesystem::path& dataset_b,
                const std::filesystem::path& out_dir, const RunConfig& config,
                std::ostream& err) {
  try {
    std::vector<std::string> warnings;
    PageDataset a = parse_page_dataset(dataset_a, &warnings);
    PageDataset b = parse_page_dataset(dataset_b, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    PageReportBundle bundle_a = analyze_page_bundle(a, config.analysis);
    PageReportBundle bundle_b = analyze_page_bundle(b, config.analysis);
    write_page_tree(bundle_a, out_dir);
    write_page_tree(bundle_b, out_dir);

    ComparisonReport report = compare_pages(bundle_a.analysis, bundle_b.analysis);
    write_comparison_tree(report, out_dir);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_layout(const std::filesystem::path& dataset_dir,
               const std::filesystem::path& out_svg, const RunConfig& config,
               std::ostream& err) {
  try {
    PageDataset ds = parse_page_dataset(dataset_dir, nullptr);
    const AnalysisConfig& a = config.analysis;

    EngagementGraph eg = build_engagement_graph(ds, a.kind_weights);
    if (eg.graph.node_count() == 0)
      throw Error(ErrorCode::EmptyGraph, "dataset produces an empty graph");
    CommunityPartition part = louvain(eg.graph, a.resolution, a.louvain_seed);

    std::string svg = layout_svg_for(ds, eg, part, a);
    std::ofstream out(out_svg, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + out_svg.string());
    out << svg;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + out_svg.string());
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_synth(const PlantedSpec& spec, const std::filesystem::path& out_dir,
              std::ostream& err) {
  try {
    PlantedResult planted = synth_planted(spec);
    write_page_dataset(planted.dataset, out_dir);
    write_truth_json(planted, out_dir);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace brandgraph
