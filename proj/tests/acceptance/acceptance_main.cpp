// Acceptance suite: runs every release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "brandgraph/commands.hpp"
#include "brandgraph/text.hpp"
#include "brandgraph/community.hpp"
#include "brandgraph/graph.hpp"
#include "brandgraph/ingest.hpp"
#include "brandgraph/layout.hpp"
#include "brandgraph/metrics.hpp"
#include "brandgraph/report.hpp"
#include "brandgraph/rng.hpp"
#include "brandgraph/synth.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace brandgraph;
using namespace bgtest;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared scale fixtures (headline graph shapes: 31568/90963 and 3532/7425).
ScaleSpec france_spec() {
  ScaleSpec s;
  s.n_posts = 836;
  s.n_users = 30732;
  s.n_pairs = 90963;
  s.total_engagements = 97182;
  s.seed = 2016;
  s.page_id = "page-fr";
  s.country = "France";
  s.language = "fr";
  s.culture_label = "individualistic";
  return s;
}

ScaleSpec saudi_spec() {
  ScaleSpec s;
  s.n_posts = 175;
  s.n_users = 3357;
  s.n_pairs = 7425;
  s.total_engagements = 8396;
  s.seed = 2017;
  s.page_id = "page-sa";
  s.country = "Saudi Arabia";
  s.language = "ar";
  s.culture_label = "collectivistic";
  return s;
}

bool check_density(std::string& detail) {
  struct Case {
    ScaleSpec spec;
    double n, e;
  };
  const std::vector<Case> cases = {{france_spec(), 31568.0, 90963.0},
                                   {saudi_spec(), 3532.0, 7425.0}};
  for (const auto& c : cases) {
    PageDataset ds = synth_scale(c.spec);
    EngagementGraph g = build_engagement_graph(ds);
    if (g.graph.node_count() != static_cast<std::size_t>(c.n) ||
        g.graph.edge_count() != static_cast<std::size_t>(c.e)) {
      detail = c.spec.page_id + ": graph shape " +
               std::to_string(g.graph.node_count()) + "/" +
               std::to_string(g.graph.edge_count()) + " differs from target";
      return false;
    }
    const double expected = c.e / (c.n * (c.n - 1.0));
    const double got = density(g.graph);
    if (std::fabs(got - expected) / expected >= 1e-12) {
      detail = c.spec.page_id + ": density " + format_double(got) + " vs " +
               format_double(expected);
      return false;
    }
  }
  detail = "France 90963/(31568*31567) and Saudi 7425/(3532*3531) exact";
  return true;
}

bool check_eigen_normalization(std::string& detail) {
  Rng rng(1001);
  const double tol = 1e-9;
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng.next_below(199));
    WeightedGraph g = random_connected_graph(rng, n, 0.05);
    ScoreMap s = eigenvector_centrality(g, tol, 50000);
    if (!s.converged) {
      detail = "fixture " + std::to_string(round) + " did not converge";
      return false;
    }
    double max_v = 0.0;
    for (double v : s.values) max_v = std::max(max_v, v);
    if (max_v != 1.0) {
      detail = "max score " + format_double(max_v) + " != 1";
      return false;
    }
    // residual ||Av - lambda v||_inf / lambda against the undirected view
    double residual = 0.0;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
      double av = 0.0;
      for (const Edge& e : g.out_edges(i)) av += e.weight * s.values[e.target];
      residual = std::max(residual,
                          std::fabs(av - s.spectral_estimate * s.values[i]));
    }
    if (residual / s.spectral_estimate > 10.0 * tol) {
      detail = "fixture " + std::to_string(round) + " residual " +
               format_double(residual / s.spectral_estimate);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " connected fixtures, 2-200 nodes";
  return true;
}

bool check_centrality_oracle(std::string& detail) {
  int checked = 0;
  auto agree = [&](const WeightedGraph& g) -> bool {
    ScoreMap eig = eigenvector_centrality(g, 1e-12, 500000);
    auto eig_oracle = oracle_eigenvector(dense_undirected(g));
    for (std::size_t i = 0; i < eig.values.size(); ++i)
      if (std::fabs(eig.values[i] - eig_oracle[i]) > 1e-6) return false;
    ScoreMap pr = pagerank(g, 0.85, 1e-13, 1000000);
    auto pr_oracle = oracle_pagerank(dense_adjacency(g), 0.85);
    for (std::size_t i = 0; i < pr.values.size(); ++i)
      if (std::fabs(pr.values[i] - pr_oracle[i]) > 1e-6) return false;
    ++checked;
    return true;
  };

  // Exhaustive sweep: every unit-weight undirected graph on 4 and 5 nodes.
  for (std::uint32_t n : {4u, 5u}) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) slots.push_back({i, j});
    for (std::uint32_t bits = 1; bits < (1u << slots.size()); ++bits) {
      WeightedGraph g(Directedness::undirected);
      for (std::uint32_t i = 0; i < n; ++i)
        g.add_node({NodeKind::user, node_name(i)});
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (bits & (1u << s)) g.add_edge(slots[s].first, slots[s].second, 1.0);
      if (!agree(g)) {
        detail = "exhaustive sweep failed at n=" + std::to_string(n) +
                 " bits=" + std::to_string(bits);
        return false;
      }
    }
  }
  // Plus 100 random weighted graphs up to 8 nodes, half directed.
  Rng rng(2002);
  for (int round = 0; round < 100; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng.next_below(7));
    const bool directed = round % 2 == 0;
    WeightedGraph g = random_graph(
        rng, n, 0.4, directed ? Directedness::directed : Directedness::undirected);
    if (!agree(g)) {
      detail = "random graph round " + std::to_string(round) + " disagreed";
      return false;
    }
  }
  detail = std::to_string(checked) + " graphs within 1e-6 per node";
  return true;
}

bool check_modularity_values(std::string& detail) {
  WeightedGraph two = make_undirected(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1},
                                          {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
  WeightedGraph bridged = make_undirected(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1},
                                              {3, 4, 1}, {4, 5, 1}, {3, 5, 1},
                                              {2, 3, 1}});
  CommunityPartition split;
  split.assignment = {0, 0, 0, 1, 1, 1};
  split.n_communities = 2;
  CommunityPartition one;
  one.assignment = {0, 0, 0, 0, 0, 0};
  one.n_communities = 1;

  if (std::fabs(modularity(two, split) - 0.5) > 1e-12) {
    detail = "two triangles: " + format_double(modularity(two, split));
    return false;
  }
  if (std::fabs(modularity(bridged, split) - 0.357142857) > 1e-9) {
    detail = "bridged triangles: " + format_double(modularity(bridged, split));
    return false;
  }
  if (modularity(two, one) != 0.0 || modularity(bridged, one) != 0.0) {
    detail = "one-community partition must be exactly 0";
    return false;
  }
  detail = "Q = 0.5, 0.357142857 (5/14), 0 exact";
  return true;
}

bool check_louvain_recovery(std::string& detail) {
  int recovered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PlantedSpec spec;  // 4 blocks, 10 posts + 25 users per block
    spec.seed = seed;
    PlantedResult planted = synth_planted(spec);
    EngagementGraph g = build_engagement_graph(planted.dataset);
    CommunityPartition p = louvain(g.graph, 1.0, seed);

    const double q_oracle = oracle_modularity(dense_undirected(g.graph), p.assignment);
    if (std::fabs(p.q - q_oracle) > 1e-12) {
      detail = "seed " + std::to_string(seed) + ": q " + format_double(p.q) +
               " vs oracle " + format_double(q_oracle);
      return false;
    }
    std::vector<std::uint32_t> truth(g.graph.node_count(), 0);
    for (const auto& [node, block] : planted.ground_truth)
      if (auto idx = g.graph.find(node)) truth[*idx] = block;
    if (same_partition(p.assignment, truth)) ++recovered;
  }
  detail = std::to_string(recovered) + "/100 seeds recovered exactly (need >= 95)";
  return recovered >= 95;
}

bool check_projection_oracle(std::string& detail) {
  Rng rng(3003);
  for (int round = 0; round < 100; ++round) {
    const auto n_users = 2 + rng.next_below(49);
    const auto n_posts = 1 + rng.next_below(15);
    PageDataset ds = random_bipartite_dataset(rng, n_users, n_posts, 0.2);
    UserGraph ug = project_user_user(build_engagement_graph(ds), false, ds);
    auto expected = oracle_projection(ds);
    std::size_t edges_seen = 0;
    for (std::uint32_t i = 0; i < ug.graph.node_count(); ++i) {
      for (const Edge& e : ug.graph.out_edges(i)) {
        if (e.target < i) continue;
        auto key = std::minmax(ug.graph.node(i).id, ug.graph.node(e.target).id);
        auto it = expected.find({key.first, key.second});
        if (it == expected.end() || it->second != e.weight) {
          detail = "round " + std::to_string(round) + ": edge mismatch";
          return false;
        }
        ++edges_seen;
      }
    }
    if (edges_seen != expected.size()) {
      detail = "round " + std::to_string(round) + ": edge count mismatch";
      return false;
    }
  }
  detail = "100 random bipartite fixtures match the double-loop oracle";
  return true;
}

bool check_apl(std::string& detail) {
  auto p4 = average_path_length(path_graph(4));
  auto star = average_path_length(star_graph(3));
  auto k5 = average_path_length(complete_graph(5));
  if (!p4 || std::fabs(*p4 - 5.0 / 3.0) > 1e-15) {
    detail = "path of 4 nodes";
    return false;
  }
  if (!star || *star != 1.5) {
    detail = "star K1,3";
    return false;
  }
  if (!k5 || *k5 != 1.0) {
    detail = "K5";
    return false;
  }
  Rng rng(4004);
  for (int round = 0; round < 50; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng.next_below(49));
    const bool directed = round % 2 == 0;
    WeightedGraph g = random_graph(
        rng, n, 0.1 + 0.15 * rng.next_double(),
        directed ? Directedness::directed : Directedness::undirected);
    auto apl = average_path_length(g);
    const double expected = oracle_apl(g);
    if (expected < 0.0) {
      if (apl) {
        detail = "round " + std::to_string(round) + ": expected undefined";
        return false;
      }
    } else if (!apl || std::fabs(*apl - expected) > 1e-12) {
      detail = "round " + std::to_string(round) + ": oracle mismatch";
      return false;
    }
  }
  detail = "hand values exact; 50 fixtures equal the Floyd-Warshall oracle";
  return true;
}

bool check_layout(std::string& detail) {
  // two-node equilibrium at 2*sqrt(k_r)
  WeightedGraph pair = make_undirected(2, {{0, 1, 1.0}});
  LayoutParams params;
  params.gravity = 0.0;
  params.scaling = 2.0;
  params.iterations = 2000;
  params.seed = 7;
  LayoutResult r = forceatlas2(pair, params);
  const double d = std::hypot(r.positions[0][0] - r.positions[1][0],
                              r.positions[0][1] - r.positions[1][1]);
  const double target = 2.0 * std::sqrt(params.scaling);
  if (std::fabs(d - target) / target >= 0.01) {
    detail = "two-node distance " + format_double(d) + " vs " + format_double(target);
    return false;
  }

  // two disjoint K5s separate for every seed
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> edges;
  for (std::uint32_t base : {0u, 5u})
    for (std::uint32_t i = 0; i < 5; ++i)
      for (std::uint32_t j = i + 1; j < 5; ++j)
        edges.push_back({base + i, base + j, 1.0});
  WeightedGraph cliques = make_undirected(10, edges);
  LayoutParams cp;
  cp.iterations = 1000;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    cp.seed = seed;
    LayoutResult lr = forceatlas2(cliques, cp);
    double cax = 0, cay = 0, cbx = 0, cby = 0, max_intra = 0;
    for (int i = 0; i < 5; ++i) {
      cax += lr.positions[i][0] / 5;
      cay += lr.positions[i][1] / 5;
      cbx += lr.positions[5 + i][0] / 5;
      cby += lr.positions[5 + i][1] / 5;
    }
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        max_intra = std::max(max_intra,
                             std::hypot(lr.positions[i][0] - lr.positions[j][0],
                                        lr.positions[i][1] - lr.positions[j][1]));
        max_intra = std::max(
            max_intra, std::hypot(lr.positions[5 + i][0] - lr.positions[5 + j][0],
                                  lr.positions[5 + i][1] - lr.positions[5 + j][1]));
      }
    }
    if (std::hypot(cax - cbx, cay - cby) <= max_intra) {
      detail = "seed " + std::to_string(seed) + ": cliques not separated";
      return false;
    }
  }
  detail = "equilibrium within 1%; cliques separated for 10/10 seeds";
  return true;
}

bool check_pipeline_scale(std::string& detail) {
  TempDir work;
  PageDataset ds = synth_scale(france_spec());
  const auto ds_dir = work.path() / "dataset";
  write_page_dataset(ds, ds_dir);

  RunConfig config;  // documented defaults throughout
  std::ostringstream sink;

  const auto start = Clock::now();
  if (cmd_analyze(ds_dir, work.path() / "run1", config, sink) != 0) {
    detail = "analyze exited nonzero";
    return false;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) {
    detail = "analyze took " + format_double(elapsed) + " s (budget 60)";
    return false;
  }
  if (cmd_analyze(ds_dir, work.path() / "run2", config, sink) != 0) {
    detail = "second analyze exited nonzero";
    return false;
  }

  // byte-identical trees
  std::map<std::string, std::string> t1, t2;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(work.path() / "run1"))
    if (entry.is_regular_file())
      t1[std::filesystem::relative(entry.path(), work.path() / "run1").string()] =
          read_file(entry.path());
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(work.path() / "run2"))
    if (entry.is_regular_file())
      t2[std::filesystem::relative(entry.path(), work.path() / "run2").string()] =
          read_file(entry.path());
  if (t1.empty() || t1 != t2) {
    detail = "output trees differ between runs";
    return false;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "31568 nodes / 90963 edges in %.1f s", elapsed);
  detail = buf;
  return true;
}

bool check_comparison_arithmetic(std::string& detail) {
  auto star_fixture = [](const std::vector<std::size_t>& user_counts,
                         const std::string& page_id) {
    PageDataset ds;
    ds.page_id = page_id;
    ds.country = "XX";
    ds.language = "en";
    ds.culture_label = "synthetic";
    ds.window_start = 1420070400;
    ds.window_end = 1435708799;
    for (std::size_t b = 0; b < user_counts.size(); ++b) {
      std::string pid = "c" + std::to_string(b);
      ds.posts.push_back({pid, PostType::photo,
                          1423000000 + static_cast<std::int64_t>(b), "",
                          std::nullopt});
      for (std::size_t u = 0; u < user_counts[b]; ++u) {
        std::string uid = "s" + std::to_string(b) + "_" + std::to_string(u);
        ds.users.push_back({uid, false});
        ds.events.push_back({uid, pid, EventKind::like, 1});
      }
    }
    return ds;
  };
  // top-5 node shares: 9276/10000 = 92.76% and 7827/10000 = 78.27%
  PageDataset a = star_fixture({1899, 1899, 1899, 1799, 1775, 723}, "conc-a");
  PageDataset b = star_fixture({1565, 1565, 1564, 1564, 1564, 1436, 735}, "conc-b");

  AnalysisConfig config;
  config.layout.iterations = 50;
  ComparisonReport r =
      compare_pages(analyze_page(a, config), analyze_page(b, config));
  if (std::fabs(r.a.top5_community_pct - 92.76) > 1e-9 ||
      std::fabs(r.b.top5_community_pct - 78.27) > 1e-9) {
    detail = "concentrations " + format_double(r.a.top5_community_pct) + " / " +
             format_double(r.b.top5_community_pct);
    return false;
  }
  if (std::fabs(r.top5_community_pct_delta - 14.49) >= 0.01) {
    detail = "delta " + format_double(r.top5_community_pct_delta);
    return false;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "92.76 - 78.27 = %.4f points",
                r.top5_community_pct_delta);
  detail = buf;
  return true;
}

bool check_round_trip(std::string& detail) {
  std::vector<PageDataset> fixtures;
  fixtures.push_back(minimal_dataset());
  {
    PageDataset ds = minimal_dataset();
    ds.page_id = "bilingual";
    ds.posts.push_back({"p2", PostType::link, 1423400000,
                        "Fête des mères — عيد الأم sale\tligne\ndeux",
                        "https://ex.example/p"});
    ds.users.push_back({"owner", true});
    ds.events.push_back({"owner", "p2", EventKind::comment, 2});
    ds.events.push_back({"u1", "p2", EventKind::comment_reply, 1});
    fixtures.push_back(ds);
  }
  {
    PlantedSpec spec;
    spec.seed = 99;
    fixtures.push_back(synth_planted(spec).dataset);
  }
  {
    Rng rng(5005);
    fixtures.push_back(random_bipartite_dataset(rng, 40, 15, 0.2));
  }
  fixtures.push_back(synth_scale(saudi_spec()));

  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    TempDir dir;
    write_page_dataset(fixtures[i], dir.path());
    PageDataset back = parse_page_dataset(dir.path());
    if (!(back == fixtures[i])) {
      detail = "fixture " + std::to_string(i) + " did not round-trip";
      return false;
    }
  }
  detail = std::to_string(fixtures.size()) +
           " fixtures (incl. bilingual French/Arabic) round-trip exactly";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"density arithmetic on published graph shapes", check_density},
      {"eigenvector normalization pattern (max 1, residual <= 10 tol)",
       check_eigen_normalization},
      {"centrality oracle agreement on small graphs", check_centrality_oracle},
      {"modularity hand values", check_modularity_values},
      {"louvain planted-partition recovery", check_louvain_recovery},
      {"projection equals brute-force double loop", check_projection_oracle},
      {"average path length exactness", check_apl},
      {"layout equilibrium and clique separation", check_layout},
      {"pipeline scale and determinism", check_pipeline_scale},
      {"comparison concentration arithmetic", check_comparison_arithmetic},
      {"dataset round-trip identity", check_round_trip},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    std::printf("[%s] %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL",
                criterion.name.c_str(), elapsed, detail.empty() ? "" : " - ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
