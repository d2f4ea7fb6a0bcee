// brandgraph: brand-page engagement analytics from the command line.
//
// Subcommands: validate, analyze, compare, layout, synth. Exit codes:
// 0 success, 1 data error, 2 I/O error, 64 usage error.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "brandgraph/commands.hpp"
#include "brandgraph/error.hpp"

namespace {

using namespace brandgraph;

bool color_enabled() {
  return std::getenv("BRANDGRAPH_NO_COLOR") == nullptr;
}

/// Wraps stderr so error lines carry an ANSI prefix only when allowed.
void print_error(const std::string& message) {
  if (color_enabled())
    std::cerr << "\033[31merror\033[0m: " << message << '\n';
  else
    std::cerr << "error: " << message << '\n';
}

struct CommonFlags {
  std::string config_file;
  std::vector<std::string> kind_weights;
  std::string lexicon_file;
};

void add_analysis_flags(CLI::App* cmd, RunConfig& config, CommonFlags& flags) {
  AnalysisConfig& a = config.analysis;
  cmd->add_option("--config", flags.config_file,
                  "JSON config file; flags override its values");
  cmd->add_option("--seed", a.louvain_seed, "Community detection seed");
  cmd->add_option("--resolution", a.resolution, "Louvain resolution");
  cmd->add_option("--kind-weight", flags.kind_weights,
                  "Engagement kind weight, e.g. like=1.0 (repeatable)");
  cmd->add_option("--top-k", a.top_k, "Rows in the ranked tables")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--mask", a.mask, "Mask non-owner user ids in every output");
  cmd->add_option("--mask-salt", a.mask_salt, "Salt for masked user ids");
  cmd->add_option("--eigen-tol", a.eigen_tol, "Eigenvector convergence tolerance");
  cmd->add_option("--pagerank-tol", a.pagerank_tol, "PageRank convergence tolerance");
  cmd->add_option("--damping", a.pagerank_damping, "PageRank damping factor");
  cmd->add_option("--lexicon", flags.lexicon_file, "Lexicon JSON file");
  cmd->add_option("--posts", a.layout_posts, "Layout subsample: most recent posts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--iterations", a.layout.iterations, "Layout iterations");
  cmd->add_option("--gravity", a.layout.gravity, "Layout gravity");
  cmd->add_option("--scaling", a.layout.scaling, "Layout repulsion scaling");
  cmd->add_option("--jitter", a.layout.jitter_tolerance, "Layout jitter tolerance");
  cmd->add_flag("--linlog", a.layout.linlog, "Logarithmic layout attraction");
  cmd->add_option("--layout-seed", a.layout.seed, "Layout position seed");
  cmd->add_option("--layout-exact-limit", a.layout_exact_limit,
                  "Node count above which layout repulsion is approximated");
}

/// Applies config file first, then flag overrides that CLI11 saw.
int finalize_config(const CLI::App* cmd, RunConfig& config, CommonFlags& flags) {
  if (!flags.config_file.empty()) {
    // Values given on the command line must win over the file, so stash
    // the parsed flag results, load the file, then re-apply.
    RunConfig from_flags = config;
    config = RunConfig{};
    apply_config_file(flags.config_file, config);
    AnalysisConfig& a = config.analysis;
    const AnalysisConfig& f = from_flags.analysis;
    if (cmd->count("--seed")) a.louvain_seed = f.louvain_seed;
    if (cmd->count("--resolution")) a.resolution = f.resolution;
    if (cmd->count("--top-k")) a.top_k = f.top_k;
    if (cmd->count("--mask")) a.mask = f.mask;
    if (cmd->count("--mask-salt")) a.mask_salt = f.mask_salt;
    if (cmd->count("--eigen-tol")) a.eigen_tol = f.eigen_tol;
    if (cmd->count("--pagerank-tol")) a.pagerank_tol = f.pagerank_tol;
    if (cmd->count("--damping")) a.pagerank_damping = f.pagerank_damping;
    if (cmd->count("--posts")) a.layout_posts = f.layout_posts;
    if (cmd->count("--iterations")) a.layout.iterations = f.layout.iterations;
    if (cmd->count("--gravity")) a.layout.gravity = f.layout.gravity;
    if (cmd->count("--scaling")) a.layout.scaling = f.layout.scaling;
    if (cmd->count("--jitter"))
      a.layout.jitter_tolerance = f.layout.jitter_tolerance;
    if (cmd->count("--linlog")) a.layout.linlog = f.layout.linlog;
    if (cmd->count("--layout-seed")) a.layout.seed = f.layout.seed;
    if (cmd->count("--layout-exact-limit"))
      a.layout_exact_limit = f.layout_exact_limit;
  }
  for (const auto& spec : flags.kind_weights) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
      print_error("--kind-weight expects kind=value, got '" + spec + "'");
      return kExitUsage;
    }
    auto kind = event_kind_from(spec.substr(0, eq));
    if (!kind) {
      print_error("unknown event kind '" + spec.substr(0, eq) + "'");
      return kExitUsage;
    }
    try {
      config.analysis.kind_weights[*kind] = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
      print_error("bad weight in '" + spec + "'");
      return kExitUsage;
    }
  }
  if (!flags.lexicon_file.empty()) {
    config.analysis.lexicon = load_lexicon(flags.lexicon_file);
    config.analysis.lexicon_source = flags.lexicon_file;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brand-page engagement graph analytics"};
  app.require_subcommand(1);

  std::string dataset_dir, dataset_b, out_path;

  // validate
  CLI::App* validate = app.add_subcommand("validate", "Check a dataset directory");
  validate->add_option("dir", dataset_dir, "Dataset directory")->required();

  // analyze
  RunConfig analyze_cfg;
  CommonFlags analyze_flags;
  std::string graphml_path, edge_list_path;
  CLI::App* analyze = app.add_subcommand("analyze", "Full analysis report for one page");
  analyze->add_option("dir", dataset_dir, "Dataset directory")->required();
  analyze->add_option("-o,--out", out_path, "Output directory")->required();
  add_analysis_flags(analyze, analyze_cfg, analyze_flags);
  analyze->add_option("--graphml", graphml_path, "Also export the graph as GraphML");
  analyze->add_option("--edge-list", edge_list_path, "Also export a TSV edge list");

  // compare
  RunConfig compare_cfg;
  CommonFlags compare_flags;
  CLI::App* compare = app.add_subcommand("compare", "Analyze and compare two pages");
  compare->add_option("dirA", dataset_dir, "First dataset directory")->required();
  compare->add_option("dirB", dataset_b, "Second dataset directory")->required();
  compare->add_option("-o,--out", out_path, "Output directory")->required();
  add_analysis_flags(compare, compare_cfg, compare_flags);

  // layout
  RunConfig layout_cfg;
  CommonFlags layout_flags;
  CLI::App* layout = app.add_subcommand("layout", "Render the engagement graph as SVG");
  layout->add_option("dir", dataset_dir, "Dataset directory")->required();
  layout->add_option("-o,--out", out_path, "Output SVG file")->required();
  add_analysis_flags(layout, layout_cfg, layout_flags);

  // synth
  PlantedSpec spec;
  CLI::App* synth = app.add_subcommand("synth", "Generate a planted-partition dataset");
  synth->add_option("--blocks", spec.n_blocks, "Number of planted blocks");
  synth->add_option("--posts-per-block", spec.posts_per_block, "Posts per block");
  synth->add_option("--users-per-block", spec.users_per_block, "Users per block");
  synth->add_option("--p-in", spec.p_in, "Within-block engagement probability");
  synth->add_option("--p-out", spec.p_out, "Cross-block engagement probability");
  synth->add_option("--seed", spec.seed, "Generator seed");
  synth->add_option("-o,--out", out_path, "Output dataset directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return brandgraph::kExitUsage;
  }

  try {
    if (validate->parsed())
      return brandgraph::cmd_validate(dataset_dir, std::cout, std::cerr);

    if (analyze->parsed()) {
      if (int rc = finalize_config(analyze, analyze_cfg, analyze_flags); rc != 0)
        return rc;
      if (!graphml_path.empty()) analyze_cfg.graphml_path = graphml_path;
      if (!edge_list_path.empty()) analyze_cfg.edge_list_path = edge_list_path;
      return brandgraph::cmd_analyze(dataset_dir, out_path, analyze_cfg, std::cerr);
    }

    if (compare->parsed()) {
      if (int rc = finalize_config(compare, compare_cfg, compare_flags); rc != 0)
        return rc;
      return brandgraph::cmd_compare(dataset_dir, dataset_b, out_path, compare_cfg,
                                     std::cerr);
    }

    if (layout->parsed()) {
      if (int rc = finalize_config(layout, layout_cfg, layout_flags); rc != 0)
        return rc;
      return brandgraph::cmd_layout(dataset_dir, out_path, layout_cfg, std::cerr);
    }

    if (synth->parsed()) return brandgraph::cmd_synth(spec, out_path, std::cerr);
  } catch (const brandgraph::Error& e) {
    print_error(e.what());
    return brandgraph::exit_code_for(e);
  } catch (const std::exception& e) {
    print_error(e.what());
    return brandgraph::kExitData;
  }
  return brandgraph::kExitUsage;
}
