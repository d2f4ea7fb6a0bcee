#include "brandgraph/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "brandgraph/error.hpp"
#include "brandgraph/text.hpp"
#include "json.hpp"

namespace brandgraph {

namespace {

using nlohmann::json;

/// Rethrows module errors with the pipeline stage that raised them.
template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("stage '") + name + "': " + e.what());
  }
}

struct RowDraft {
  double display_score = 0.0;  // score at emitted precision
  std::vector<std::string> cells;
};

/// Orders rows exactly as an emitted artifact can verify: displayed score
/// descending, first column ascending.
void sort_rows(std::vector<RowDraft>& rows) {
  std::sort(rows.begin(), rows.end(), [](const RowDraft& a, const RowDraft& b) {
    if (a.display_score != b.display_score) return a.display_score > b.display_score;
    return a.cells[0] < b.cells[0];
  });
}

double displayed(double v) { return std::strtod(format_score(v).c_str(), nullptr); }

json table_json(const RankedTable& t) {
  json j;
  j["title"] = t.title;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  j["provenance"] = t.provenance;
  return j;
}

json analysis_json_object(const PageAnalysis& a) {
  json j;
  j["page"] = {{"page_id", a.page_id},
               {"country", a.country},
               {"language", a.language},
               {"culture_label", a.culture_label}};
  j["masked"] = a.masked;
  j["stats"] = {{"n_posts", a.stats.n_posts},
                {"n_users", a.stats.n_users},
                {"n_events", a.stats.n_events},
                {"total_engagements", a.stats.total_engagements}};
  json topo;
  topo["n_nodes"] = a.topology.n_nodes;
  topo["n_edges"] = a.topology.n_edges;
  topo["density"] = a.topology.density;
  if (a.topology.avg_path_length)
    topo["avg_path_length"] = *a.topology.avg_path_length;
  else
    topo["avg_path_length"] = nullptr;
  topo["n_components"] = a.topology.n_components;
  topo["largest_component_fraction"] = a.topology.largest_component_fraction;
  j["topology"] = std::move(topo);
  j["top_posts"] = table_json(a.top_posts);
  j["top_users"] = table_json(a.top_users);

  json comms = json::array();
  for (std::size_t i = 0; i < a.communities.communities.size(); ++i) {
    const CommunityStat& c = a.communities.communities[i];
    json cj;
    cj["id"] = c.id;
    cj["n_nodes"] = c.n_nodes;
    cj["pct_nodes"] = c.pct_nodes;
    cj["n_posts"] = c.n_posts;
    json posts = json::array();
    const std::size_t post_limit = std::min<std::size_t>(c.top_posts.size(), 10);
    for (std::size_t k = 0; k < post_limit; ++k)
      posts.push_back({{"post_id", c.top_posts[k].post_id},
                       {"score", c.top_posts[k].score}});
    cj["top_posts"] = std::move(posts);
    if (i < a.community_themes.size()) {
      const CommunityTheme& theme = a.community_themes[i];
      cj["dominant_theme"] = theme.dominant_theme;
      cj["label_histogram"] = theme.label_histogram;
      json kws = json::array();
      const std::size_t kw_limit = std::min<std::size_t>(theme.top_keywords.size(), 20);
      for (std::size_t k = 0; k < kw_limit; ++k)
        kws.push_back({{"token", theme.top_keywords[k].token},
                       {"count", theme.top_keywords[k].count}});
      cj["top_keywords"] = std::move(kws);
    }
    comms.push_back(std::move(cj));
  }
  j["communities"] = std::move(comms);
  j["concentration"] = {{"top_community_pct", a.top_community_pct},
                        {"top5_community_pct", a.top5_community_pct}};
  j["theme_post_counts"] = a.theme_post_counts;
  json prov;
  for (const auto& [k, v] : a.provenance) prov[k] = v;
  j["provenance"] = std::move(prov);
  return j;
}

json comparison_json_object(const ComparisonReport& r) {
  json j;
  j["a"] = analysis_json_object(r.a);
  j["b"] = analysis_json_object(r.b);
  json d;
  d["audience_delta"] = r.audience_delta;
  d["engagement_per_post_a"] = r.engagement_per_post_a;
  d["engagement_per_post_b"] = r.engagement_per_post_b;
  d["engagement_per_post_delta"] = r.engagement_per_post_delta;
  d["community_count_delta"] = r.community_count_delta;
  d["top_community_pct_delta"] = r.top_community_pct_delta;
  d["top5_community_pct_delta"] = r.top5_community_pct_delta;
  d["theme_share_a"] = r.theme_share_a;
  d["theme_share_b"] = r.theme_share_b;
  d["theme_share_delta"] = r.theme_share_delta;
  j["deltas"] = std::move(d);
  j["culture_labels"] = {{"a", r.a.culture_label}, {"b", r.b.culture_label}};
  return j;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace

std::string mask_user_id(const std::string& raw_id, const std::string& salt) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix(salt);
  h ^= 0x1f;
  h *= 1099511628211ull;
  mix(raw_id);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%010llx",
                static_cast<unsigned long long>(h & 0xFFFFFFFFFFull));
  return std::string("user_") + buf;
}

RankedTable top_posts(const EngagementGraph& g, const PageDataset& ds,
                      const ScoreMap& eigen_scores, const CommunityPartition& p,
                      int k) {
  if (k < 1) throw std::invalid_argument("top_posts: k must be >= 1");
  const WeightedGraph& graph = g.graph;
  if (p.assignment.size() != graph.node_count() ||
      eigen_scores.values.size() != graph.node_count())
    throw Error(ErrorCode::PartitionMismatch,
                "scores or partition do not cover the graph");

  std::map<std::string, PostType> types;
  for (const auto& post : ds.posts) types.emplace(post.post_id, post.post_type);

  RankedTable t;
  t.title = "Top posts by eigenvector centrality";
  t.columns = {"Post_id", "Type_post", "Eigenvector Centrality", "Community"};
  t.provenance = eigen_scores.metric + "(" + eigen_scores.params + ")";

  std::vector<RowDraft> rows;
  for (std::uint32_t i : ranked_nodes(graph, eigen_scores)) {
    if (graph.node(i).kind != NodeKind::post) continue;
    if (rows.size() == static_cast<std::size_t>(k)) break;
    RowDraft row;
    row.display_score = displayed(eigen_scores.values[i]);
    auto type_it = types.find(graph.node(i).id);
    row.cells = {graph.node(i).id,
                 type_it == types.end() ? "" : std::string(to_string(type_it->second)),
                 format_score(eigen_scores.values[i]),
                 std::to_string(p.assignment[i])};
    rows.push_back(std::move(row));
  }
  sort_rows(rows);
  for (auto& r : rows) t.rows.push_back(std::move(r.cells));
  return t;
}

RankedTable top_users(const EngagementGraph& g, const ScoreMap& out_degrees,
                      const CommunityPartition& p, int k,
                      const std::string* owner_id, const std::string* mask_salt) {
  if (k < 1) throw std::invalid_argument("top_users: k must be >= 1");
  const WeightedGraph& graph = g.graph;
  if (p.assignment.size() != graph.node_count() ||
      out_degrees.values.size() != graph.node_count())
    throw Error(ErrorCode::PartitionMismatch,
                "scores or partition do not cover the graph");

  RankedTable t;
  t.title = "Top users by weighted out-degree";
  t.columns = {"User_Id", "Weighted Out-Degree", "Community"};
  t.provenance = out_degrees.metric + "(" + out_degrees.params + ")";

  std::vector<RowDraft> rows;
  for (std::uint32_t i : ranked_nodes(graph, out_degrees)) {
    if (graph.node(i).kind != NodeKind::user) continue;
    if (rows.size() == static_cast<std::size_t>(k)) break;
    const std::string& raw = graph.node(i).id;
    std::string display;
    if (owner_id && raw == *owner_id) {
      display = "Page owner";
    } else if (mask_salt) {
      display = mask_user_id(raw, *mask_salt);
    } else {
      display = raw;
    }
    RowDraft row;
    row.display_score = displayed(out_degrees.values[i]);
    row.cells = {std::move(display), format_score(out_degrees.values[i]),
                 std::to_string(p.assignment[i])};
    rows.push_back(std::move(row));
  }
  sort_rows(rows);
  for (auto& r : rows) t.rows.push_back(std::move(r.cells));
  return t;
}

PageReportBundle analyze_page_bundle(const PageDataset& ds,
                                     const AnalysisConfig& config) {
  PageReportBundle bundle;
  PageAnalysis& a = bundle.analysis;
  a.page_id = ds.page_id;
  a.country = ds.country;
  a.language = ds.language;
  a.culture_label = ds.culture_label;
  a.masked = config.mask;
  a.stats = dataset_stats(ds);

  const EngagementGraph eg =
      stage("graph", [&] { return build_engagement_graph(ds, config.kind_weights); });
  const WeightedGraph& graph = eg.graph;

  const ScoreMap eigen = stage("metrics", [&] {
    return eigenvector_centrality(graph, config.eigen_tol, config.eigen_max_iter);
  });
  const ScoreMap outdeg =
      stage("metrics", [&] { return weighted_degree(graph, DegreeDirection::out); });
  a.topology = stage("metrics", [&] { return topology_summary(graph); });

  const CommunityPartition part = stage("community", [&] {
    return louvain(graph, config.resolution, config.louvain_seed);
  });
  const ScoreMap pr = stage("metrics", [&] {
    return pagerank(graph, config.pagerank_damping, config.pagerank_tol,
                    config.pagerank_max_iter);
  });
  a.communities = stage("community", [&] { return community_stats(eg, part, pr); });

  // Content: classify posts, then summarize per community.
  std::vector<PostTheme> post_themes;
  post_themes.reserve(ds.posts.size());
  for (const auto& post : ds.posts)
    post_themes.push_back(classify_post(post, config.lexicon));
  for (std::size_t i = 0; i < ds.posts.size(); ++i)
    for (const auto& label : post_themes[i].labels) ++a.theme_post_counts[label];

  std::map<std::string, std::size_t> post_row;
  for (std::size_t i = 0; i < ds.posts.size(); ++i)
    post_row.emplace(ds.posts[i].post_id, i);
  for (const CommunityStat& c : a.communities.communities) {
    std::vector<PostRecord> posts;
    std::vector<PostTheme> labels;
    for (const auto& ranked : c.top_posts) {
      const std::size_t row = post_row.at(ranked.post_id);
      posts.push_back(ds.posts[row]);
      labels.push_back(post_themes[row]);
    }
    CommunityTheme theme =
        community_theme(posts, labels, config.lexicon, ds.language, nullptr);
    theme.community_id = c.id;
    a.community_themes.push_back(std::move(theme));
  }

  const UserRecord* owner = ds.page_owner();
  const std::string* owner_id = owner ? &owner->user_id : nullptr;
  a.top_posts =
      stage("report", [&] { return top_posts(eg, ds, eigen, part, config.top_k); });
  a.top_users = stage("report", [&] {
    return top_users(eg, outdeg, part, config.top_k, owner_id,
                     config.mask ? &config.mask_salt : nullptr);
  });

  if (!a.communities.communities.empty()) {
    a.top_community_pct = a.communities.communities[0].pct_nodes;
    const std::size_t top = std::min<std::size_t>(5, a.communities.communities.size());
    for (std::size_t i = 0; i < top; ++i)
      a.top5_community_pct += a.communities.communities[i].pct_nodes;
  }

  // communities.csv: partition dump with masking applied to user ids.
  {
    std::vector<std::uint32_t> order(graph.node_count());
    for (std::uint32_t i = 0; i < graph.node_count(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      if (graph.node(x).kind != graph.node(y).kind)
        return graph.node(x).kind == NodeKind::post;
      return graph.node(x).id < graph.node(y).id;
    });
    std::string csv = "node_id,kind,community\r\n";
    for (std::uint32_t i : order) {
      const NodeId& n = graph.node(i);
      std::string id = n.id;
      if (config.mask && n.kind == NodeKind::user && (!owner_id || id != *owner_id))
        id = mask_user_id(id, config.mask_salt);
      csv += csv_field(id);
      csv += ',';
      csv += to_string(n.kind);
      csv += ',';
      csv += std::to_string(part.assignment[i]);
      csv += "\r\n";
    }
    bundle.communities_csv = std::move(csv);
  }

  bundle.layout_svg =
      stage("layout", [&] { return layout_svg_for(ds, eg, part, config); });

  // Provenance records every effective parameter.
  auto add = [&](const std::string& key, std::string value) {
    a.provenance.emplace_back(key, std::move(value));
  };
  for (const auto& [kind, w] : eg.kind_weights)
    add("kind_weight." + std::string(to_string(kind)), format_double(w));
  add("louvain_seed", std::to_string(config.louvain_seed));
  add("resolution", format_double(config.resolution));
  add("eigen_tol", format_double(config.eigen_tol));
  add("eigen_max_iter", std::to_string(config.eigen_max_iter));
  add("eigen_converged", eigen.converged ? "true" : "false");
  add("eigen_iterations", std::to_string(eigen.iterations));
  add("pagerank_damping", format_double(config.pagerank_damping));
  add("pagerank_tol", format_double(config.pagerank_tol));
  add("pagerank_max_iter", std::to_string(config.pagerank_max_iter));
  add("pagerank_converged", pr.converged ? "true" : "false");
  add("top_k", std::to_string(config.top_k));
  add("mask", config.mask ? "true" : "false");
  add("lexicon", config.lexicon_source);
  add("layout.scaling", format_double(config.layout.scaling));
  add("layout.gravity", format_double(config.layout.gravity));
  add("layout.iterations", std::to_string(config.layout.iterations));
  add("layout.jitter_tolerance", format_double(config.layout.jitter_tolerance));
  add("layout.linlog", config.layout.linlog ? "true" : "false");
  add("layout.seed", std::to_string(config.layout.seed));
  add("layout.posts", std::to_string(config.layout_posts));
  add("layout.exact_limit", std::to_string(config.layout_exact_limit));
  add("modularity", format_double(part.q));
  add("n_communities", std::to_string(part.n_communities));

  return bundle;
}

PageAnalysis analyze_page(const PageDataset& ds, const AnalysisConfig& config) {
  return analyze_page_bundle(ds, config).analysis;
}

std::string layout_svg_for(const PageDataset& ds, const EngagementGraph& eg,
                           const CommunityPartition& part,
                           const AnalysisConfig& config) {
  const WeightedGraph& graph = eg.graph;

  // Most recent posts first; ties resolve by post id.
  std::vector<std::uint32_t> post_rows(ds.posts.size());
  for (std::uint32_t i = 0; i < ds.posts.size(); ++i) post_rows[i] = i;
  std::sort(post_rows.begin(), post_rows.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (ds.posts[x].created_at != ds.posts[y].created_at)
      return ds.posts[x].created_at > ds.posts[y].created_at;
    return ds.posts[x].post_id < ds.posts[y].post_id;
  });
  if (config.layout_posts < post_rows.size()) post_rows.resize(config.layout_posts);

  WeightedGraph sub(Directedness::directed);
  std::vector<std::uint32_t> sub_to_full;
  for (std::uint32_t row : post_rows) {
    const NodeId id{NodeKind::post, ds.posts[row].post_id};
    if (auto idx = graph.find(id)) {
      sub.add_node(id);
      sub_to_full.push_back(*idx);
    }
  }
  const std::size_t n_sub_posts = sub.node_count();
  for (std::size_t s = 0; s < n_sub_posts; ++s) {
    const std::uint32_t full_post = sub_to_full[s];
    for (const Edge& e : graph.in_edges(full_post)) {
      const NodeId& user = graph.node(e.target);
      const std::uint32_t u = sub.add_node(user);
      if (u == sub_to_full.size()) sub_to_full.push_back(e.target);
      sub.add_edge(u, static_cast<std::uint32_t>(s), e.weight);
    }
  }
  if (sub.node_count() == 0) return std::string();

  CommunityPartition sub_part;
  sub_part.assignment.resize(sub.node_count());
  std::uint32_t max_c = 0;
  for (std::size_t s = 0; s < sub.node_count(); ++s) {
    sub_part.assignment[s] = part.assignment[sub_to_full[s]];
    max_c = std::max(max_c, sub_part.assignment[s]);
  }
  sub_part.n_communities = max_c + 1;

  LayoutParams lp = config.layout;
  if (sub.node_count() > config.layout_exact_limit) lp.approximate_repulsion = true;
  const LayoutResult layout = forceatlas2(sub, lp);
  return svg_document(sub, layout, &sub_part);
}

ComparisonReport compare_pages(const PageAnalysis& a, const PageAnalysis& b) {
  ComparisonReport r;
  r.a = a;
  r.b = b;
  r.audience_delta =
      static_cast<double>(a.stats.n_users) - static_cast<double>(b.stats.n_users);
  auto per_post = [](const PageAnalysis& p) {
    if (p.stats.n_posts == 0) return 0.0;
    return static_cast<double>(p.stats.total_engagements) /
           static_cast<double>(p.stats.n_posts);
  };
  r.engagement_per_post_a = per_post(a);
  r.engagement_per_post_b = per_post(b);
  r.engagement_per_post_delta = r.engagement_per_post_a - r.engagement_per_post_b;
  r.community_count_delta =
      static_cast<double>(a.communities.communities.size()) -
      static_cast<double>(b.communities.communities.size());
  r.top_community_pct_delta = a.top_community_pct - b.top_community_pct;
  r.top5_community_pct_delta = a.top5_community_pct - b.top5_community_pct;

  auto shares = [](const PageAnalysis& p) {
    std::map<std::string, double> out;
    if (p.stats.n_posts == 0) return out;
    for (const auto& [theme, count] : p.theme_post_counts)
      out[theme] = 100.0 * static_cast<double>(count) /
                   static_cast<double>(p.stats.n_posts);
    return out;
  };
  r.theme_share_a = shares(a);
  r.theme_share_b = shares(b);
  for (const auto& [theme, share] : r.theme_share_a)
    r.theme_share_delta[theme] = share;
  for (const auto& [theme, share] : r.theme_share_b)
    r.theme_share_delta[theme] -= share;
  return r;
}

std::string ranked_table_csv(const RankedTable& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_field(t.columns[c]);
  }
  out += "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_field(row[c]);
    }
    out += "\r\n";
  }
  return out;
}

std::string ranked_table_markdown(const RankedTable& t) {
  std::string out = "| ";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += " | ";
    out += t.columns[c];
  }
  out += " |\n|";
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += " --- |";
  out += "\n";
  for (const auto& row : t.rows) {
    out += "| ";
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += " | ";
      out += row[c];
    }
    out += " |\n";
  }
  return out;
}

std::string page_analysis_json(const PageAnalysis& a) {
  return analysis_json_object(a).dump(2) + "\n";
}

std::string page_analysis_markdown(const PageAnalysis& a) {
  std::string out;
  out += "# Page analysis: " + a.page_id + "\n\n";
  out += "- country: " + a.country + "\n";
  out += "- language: " + a.language + "\n";
  out += "- culture label: " + a.culture_label + "\n";
  out += std::string("- user ids masked: ") + (a.masked ? "yes" : "no") + "\n\n";

  out += "## Dataset\n\n";
  out += "- posts: " + std::to_string(a.stats.n_posts) + "\n";
  out += "- users: " + std::to_string(a.stats.n_users) + "\n";
  out += "- events: " + std::to_string(a.stats.n_events) + "\n";
  out += "- total engagements: " + std::to_string(a.stats.total_engagements) + "\n\n";

  out += "## Topology\n\n";
  out += "- nodes: " + std::to_string(a.topology.n_nodes) + "\n";
  out += "- edges: " + std::to_string(a.topology.n_edges) + "\n";
  out += "- density: " + format_double(a.topology.density) + "\n";
  out += "- average path length: " +
         (a.topology.avg_path_length ? format_double(*a.topology.avg_path_length)
                                     : std::string("undefined")) +
         "\n";
  out += "- components: " + std::to_string(a.topology.n_components) + "\n";
  out += "- largest component fraction: " +
         format_double(a.topology.largest_component_fraction) + "\n\n";

  out += "## Top posts\n\n";
  out += ranked_table_markdown(a.top_posts);
  out += "\n## Top users\n\n";
  out += ranked_table_markdown(a.top_users);

  out += "\n## Communities\n\n";
  std::map<std::uint32_t, std::string> themes;
  for (const auto& theme : a.community_themes)
    themes[theme.community_id] = theme.dominant_theme;
  out += community_stats_markdown(a.communities, themes, 5);

  out += "\n## Theme distribution\n\n";
  if (a.theme_post_counts.empty()) {
    out += "No posts matched the lexicon.\n";
  } else {
    for (const auto& [theme, count] : a.theme_post_counts)
      out += "- " + theme + ": " + std::to_string(count) + " posts\n";
  }
  return out;
}

std::string comparison_json(const ComparisonReport& r) {
  return comparison_json_object(r).dump(2) + "\n";
}

std::string comparison_markdown(const ComparisonReport& r) {
  std::string out;
  out += "# Page comparison: " + r.a.page_id + " vs " + r.b.page_id + "\n\n";
  out += "| Metric | " + r.a.page_id + " | " + r.b.page_id + " | delta (a-b) |\n";
  out += "| --- | --- | --- | --- |\n";
  out += "| culture label | " + r.a.culture_label + " | " + r.b.culture_label +
         " |  |\n";
  out += "| audience (users) | " + std::to_string(r.a.stats.n_users) + " | " +
         std::to_string(r.b.stats.n_users) + " | " + format_score(r.audience_delta) +
         " |\n";
  out += "| engagements per post | " + fmt2(r.engagement_per_post_a) + " | " +
         fmt2(r.engagement_per_post_b) + " | " + fmt2(r.engagement_per_post_delta) +
         " |\n";
  out += "| communities | " + std::to_string(r.a.communities.communities.size()) +
         " | " + std::to_string(r.b.communities.communities.size()) + " | " +
         format_score(r.community_count_delta) + " |\n";
  out += "| top community % nodes | " + fmt2(r.a.top_community_pct) + " | " +
         fmt2(r.b.top_community_pct) + " | " + fmt2(r.top_community_pct_delta) +
         " |\n";
  out += "| top-5 communities % nodes | " + fmt2(r.a.top5_community_pct) + " | " +
         fmt2(r.b.top5_community_pct) + " | " + fmt2(r.top5_community_pct_delta) +
         " |\n";

  out += "\n## Theme share of posts (%)\n\n";
  out += "| Theme | " + r.a.page_id + " | " + r.b.page_id + " | delta |\n";
  out += "| --- | --- | --- | --- |\n";
  for (const auto& [theme, delta] : r.theme_share_delta) {
    auto find = [](const std::map<std::string, double>& m, const std::string& k) {
      auto it = m.find(k);
      return it == m.end() ? 0.0 : it->second;
    };
    out += "| " + theme + " | " + fmt2(find(r.theme_share_a, theme)) + " | " +
           fmt2(find(r.theme_share_b, theme)) + " | " + fmt2(delta) + " |\n";
  }
  return out;
}

void emit(const RankedTable& t, EmitFormat format, const std::filesystem::path& path) {
  switch (format) {
    case EmitFormat::json: write_text_file(path, table_json(t).dump(2) + "\n"); break;
    case EmitFormat::csv: write_text_file(path, ranked_table_csv(t)); break;
    case EmitFormat::markdown: write_text_file(path, ranked_table_markdown(t)); break;
  }
}

void emit(const PageAnalysis& a, EmitFormat format, const std::filesystem::path& path) {
  switch (format) {
    case EmitFormat::json: write_text_file(path, page_analysis_json(a)); break;
    case EmitFormat::markdown: write_text_file(path, page_analysis_markdown(a)); break;
    case EmitFormat::csv: {
      // Key-value summary; the ranked tables have their own CSV files.
      std::string out = "metric,value\r\n";
      out += "n_posts," + std::to_string(a.stats.n_posts) + "\r\n";
      out += "n_users," + std::to_string(a.stats.n_users) + "\r\n";
      out += "n_events," + std::to_string(a.stats.n_events) + "\r\n";
      out += "total_engagements," + std::to_string(a.stats.total_engagements) + "\r\n";
      out += "n_nodes," + std::to_string(a.topology.n_nodes) + "\r\n";
      out += "n_edges," + std::to_string(a.topology.n_edges) + "\r\n";
      out += "density," + format_double(a.topology.density) + "\r\n";
      out += "n_communities," + std::to_string(a.communities.communities.size()) +
             "\r\n";
      out += "top_community_pct," + format_double(a.top_community_pct) + "\r\n";
      out += "top5_community_pct," + format_double(a.top5_community_pct) + "\r\n";
      write_text_file(path, out);
      break;
    }
  }
}

void emit(const ComparisonReport& r, EmitFormat format,
          const std::filesystem::path& path) {
  switch (format) {
    case EmitFormat::json: write_text_file(path, comparison_json(r)); break;
    case EmitFormat::markdown: write_text_file(path, comparison_markdown(r)); break;
    case EmitFormat::csv: {
      std::string out = "metric,a,b,delta\r\n";
      out += "audience," + std::to_string(r.a.stats.n_users) + "," +
             std::to_string(r.b.stats.n_users) + "," +
             format_double(r.audience_delta) + "\r\n";
      out += "engagement_per_post," + format_double(r.engagement_per_post_a) + "," +
             format_double(r.engagement_per_post_b) + "," +
             format_double(r.engagement_per_post_delta) + "\r\n";
      out += "communities," + std::to_string(r.a.communities.communities.size()) +
             "," + std::to_string(r.b.communities.communities.size()) + "," +
             format_double(r.community_count_delta) + "\r\n";
      out += "top_community_pct," + format_double(r.a.top_community_pct) + "," +
             format_double(r.b.top_community_pct) + "," +
             format_double(r.top_community_pct_delta) + "\r\n";
      out += "top5_community_pct," + format_double(r.a.top5_community_pct) + "," +
             format_double(r.b.top5_community_pct) + "," +
             format_double(r.top5_community_pct_delta) + "\r\n";
      write_text_file(path, out);
      break;
    }
  }
}

std::string sanitize_page_id(const std::string& page_id) {
  std::string out;
  for (char c : page_id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty()) out = "page";
  return out;
}

void write_page_tree(const PageReportBundle& bundle,
                     const std::filesystem::path& out_root) {
  const std::filesystem::path dir =
      out_root / sanitize_page_id(bundle.analysis.page_id);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());

  emit(bundle.analysis, EmitFormat::json, dir / "analysis.json");
  emit(bundle.analysis, EmitFormat::markdown, dir / "analysis.md");
  emit(bundle.analysis.top_posts, EmitFormat::csv, dir / "top_posts.csv");
  emit(bundle.analysis.top_users, EmitFormat::csv, dir / "top_users.csv");
  write_text_file(dir / "communities.csv", bundle.communities_csv);
  write_text_file(dir / "layout.svg", bundle.layout_svg);
}

void write_comparison_tree(const ComparisonReport& report,
                           const std::filesystem::path& out_root) {
  const std::filesystem::path dir = out_root / "compare";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
  const std::string stem =
      sanitize_page_id(report.a.page_id) + "_vs_" + sanitize_page_id(report.b.page_id);
  emit(report, EmitFormat::json, dir / (stem + ".json"));
  emit(report, EmitFormat::markdown, dir / (stem + ".md"));
}

}  // namespace brandgraph
