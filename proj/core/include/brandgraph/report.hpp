#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brandgraph/community.hpp"
#include "brandgraph/content.hpp"
#include "brandgraph/graph.hpp"
#include "brandgraph/ingest.hpp"
#include "brandgraph/layout.hpp"
#include "brandgraph/metrics.hpp"

namespace brandgraph {

struct RankedTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string provenance;  // metric and parameters that produced the ranking
};

/// Everything the analyze pipeline produces for one page. When masked,
/// non-owner user ids everywhere in the object are replaced by stable
/// salted hashes; the owner is always rendered as "Page owner" in the
/// user table.
struct PageAnalysis {
  std::string page_id;
  std::string country;
  std::string language;
  std::string culture_label;
  bool masked = false;
  DatasetStats stats;
  TopologySummary topology;
  RankedTable top_posts;
  RankedTable top_users;
  CommunityStats communities;
  /// Parallel to communities.communities.
  std::vector<CommunityTheme> community_themes;
  double top_community_pct = 0.0;
  double top5_community_pct = 0.0;
  /// Page-level label histogram over all posts.
  std::map<std::string, std::size_t> theme_post_counts;
  /// Effective parameters, in emission order.
  std::vector<std::pair<std::string, std::string>> provenance;
};

/// Descriptive side-by-side deltas (a minus b); no statistics drawn.
struct ComparisonReport {
  PageAnalysis a;
  PageAnalysis b;
  double audience_delta = 0.0;
  double engagement_per_post_a = 0.0;
  double engagement_per_post_b = 0.0;
  double engagement_per_post_delta = 0.0;
  double community_count_delta = 0.0;
  double top_community_pct_delta = 0.0;
  double top5_community_pct_delta = 0.0;
  std::map<std::string, double> theme_share_a;  // pct of posts per theme
  std::map<std::string, double> theme_share_b;
  std::map<std::string, double> theme_share_delta;
};

struct AnalysisConfig {
  std::map<EventKind, double> kind_weights = default_kind_weights();
  std::uint64_t louvain_seed = 0;
  double resolution = 1.0;
  double eigen_tol = 1e-9;
  int eigen_max_iter = 1000;
  double pagerank_damping = 0.85;
  double pagerank_tol = 1e-9;
  int pagerank_max_iter = 1000;
  int top_k = 10;
  bool mask = false;
  std::string mask_salt = "brandgraph";
  Lexicon lexicon = default_lexicon();
  std::string lexicon_source = "default";
  LayoutParams layout;
  /// Layout subsample: this many most recent posts plus their engaged users.
  std::size_t layout_posts = 50;
  /// Above this many layout nodes the grid repulsion approximation is
  /// used so full-page runs stay within an interactive time budget.
  std::size_t layout_exact_limit = 1000;
};

/// Stable one-way masking: "user_" + 10 hex digits of a salted 64-bit
/// FNV-1a hash.
std::string mask_user_id(const std::string& raw_id, const std::string& salt);

/// Top-k post nodes by eigenvector score. Columns: Post_id, Type_post,
/// Eigenvector Centrality, Community. k larger than the post count
/// returns all posts.
RankedTable top_posts(const EngagementGraph& g, const PageDataset& ds,
                      const ScoreMap& eigen_scores, const CommunityPartition& p,
                      int k);

/// Top-k user nodes by weighted out-degree; the page owner ranks like any
/// user and renders as "Page owner". Columns: User_Id, Weighted
/// Out-Degree, Community.
RankedTable top_users(const EngagementGraph& g, const ScoreMap& out_degrees,
                      const CommunityPartition& p, int k,
                      const std::string* owner_id,
                      const std::string* mask_salt = nullptr);

PageAnalysis analyze_page(const PageDataset& ds, const AnalysisConfig& config);

/// SVG of the layout subsample (config.layout_posts most recent posts
/// plus their engaged users), colored by the given partition. Above
/// config.layout_exact_limit nodes the grid repulsion approximation is
/// enabled. Empty string when the subsample has no nodes.
std::string layout_svg_for(const PageDataset& ds, const EngagementGraph& eg,
                           const CommunityPartition& part,
                           const AnalysisConfig& config);

/// analyze_page plus the serialized artifacts that accompany the page
/// tree on disk.
struct PageReportBundle {
  PageAnalysis analysis;
  std::string communities_csv;
  std::string layout_svg;
};

PageReportBundle analyze_page_bundle(const PageDataset& ds,
                                     const AnalysisConfig& config);

ComparisonReport compare_pages(const PageAnalysis& a, const PageAnalysis& b);

enum class EmitFormat { json, csv, markdown };

std::string ranked_table_csv(const RankedTable& t);
std::string ranked_table_markdown(const RankedTable& t);
std::string page_analysis_json(const PageAnalysis& a);
std::string page_analysis_markdown(const PageAnalysis& a);
std::string comparison_json(const ComparisonReport& r);
std::string comparison_markdown(const ComparisonReport& r);

void emit(const RankedTable& t, EmitFormat format, const std::filesystem::path& path);
void emit(const PageAnalysis& a, EmitFormat format, const std::filesystem::path& path);
void emit(const ComparisonReport& r, EmitFormat format,
          const std::filesystem::path& path);

/// Directory-safe page id (used for the per-page output directory).
std::string sanitize_page_id(const std::string& page_id);

/// Writes <out_root>/<page_id>/{analysis.json, analysis.md, top_posts.csv,
/// top_users.csv, communities.csv, layout.svg}.
void write_page_tree(const PageReportBundle& bundle,
                     const std::filesystem::path& out_root);

/// Writes <out_root>/compare/<a>_vs_<b>.{json,md}.
void write_comparison_tree(const ComparisonReport& report,
                           const std::filesystem::path& out_root);

}  // namespace brandgraph
