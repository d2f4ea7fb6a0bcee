#include "brandgraph/metrics.hpp"

#include <cmath>
#include <sstream>

#include "brandgraph/error.hpp"
#include "brandgraph/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace brandgraph;
using namespace bgtest;

namespace {

double eigen_residual(const WeightedGraph& g, const ScoreMap& s) {
  const Matrix a = dense_undirected(g);
  double residual = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double av = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) av += a[i][j] * s.values[j];
    residual = std::max(residual,
                        std::fabs(av - s.spectral_estimate * s.values[i]));
  }
  return residual / s.spectral_estimate;
}

}  // namespace

TEST_CASE("density") {
  SUBCASE("complete undirected K4 is 1") { CHECK(density(complete_graph(4)) == 1.0); }
  SUBCASE("edgeless graph is 0") {
    CHECK(density(make_undirected(5, {})) == 0.0);
  }
  SUBCASE("directed formula") {
    WeightedGraph g = make_directed(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK(density(g) == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  }
  SUBCASE("degenerate graphs throw") {
    CHECK_THROWS_AS(density(make_undirected(1, {})), Error);
    CHECK_THROWS_AS(density(make_undirected(0, {})), Error);
  }
}

TEST_CASE("average path length hand values") {
  SUBCASE("path of four nodes: 5/3") {
    auto apl = average_path_length(path_graph(4));
    REQUIRE(apl.has_value());
    CHECK(*apl == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("complete K5: 1") {
    auto apl = average_path_length(complete_graph(5));
    REQUIRE(apl.has_value());
    CHECK(*apl == 1.0);
  }
  SUBCASE("star K1,3: 1.5") {
    auto apl = average_path_length(star_graph(3));
    REQUIRE(apl.has_value());
    CHECK(*apl == 1.5);
  }
  SUBCASE("restricted to the largest component") {
    // path of 4 plus an isolated edge: only the path contributes
    WeightedGraph g = make_undirected(6, {{0, 1, 1.0},
                                          {1, 2, 1.0},
                                          {2, 3, 1.0},
                                          {4, 5, 1.0}});
    auto apl = average_path_length(g);
    REQUIRE(apl.has_value());
    CHECK(*apl == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("undefined when the largest component is a single node") {
    auto apl = average_path_length(make_undirected(3, {}));
    CHECK_FALSE(apl.has_value());
  }
  SUBCASE("empty graph throws") {
    CHECK_THROWS_AS(average_path_length(make_undirected(0, {})), Error);
  }
}

TEST_CASE("average path length equals the Floyd-Warshall oracle") {
  Rng rng(17);
  for (int round = 0; round < 40; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng.next_below(49));
    const bool directed = rng.next_below(2) == 0;
    WeightedGraph g = random_graph(
        rng, n, 0.08 + 0.2 * rng.next_double(),
        directed ? Directedness::directed : Directedness::undirected);
    auto apl = average_path_length(g);
    const double expected = oracle_apl(g);
    if (expected < 0.0) {
      CHECK_FALSE(apl.has_value());
    } else {
      REQUIRE(apl.has_value());
      CHECK(*apl == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted degree") {
  WeightedGraph g = make_directed(5, {{0, 1, 2.0}, {0, 2, 3.0}, {0, 3, 1.0},
                                      {1, 0, 4.0}});
  ScoreMap out = weighted_degree(g, DegreeDirection::out);
  ScoreMap in = weighted_degree(g, DegreeDirection::in);
  ScoreMap total = weighted_degree(g, DegreeDirection::total);
  CHECK(out.values[0] == 6.0);
  CHECK(in.values[0] == 4.0);
  CHECK(total.values[0] == 10.0);
  CHECK(out.values[4] == 0.0);  // isolated node

  SUBCASE("undirected graphs report the total everywhere") {
    WeightedGraph u = make_undirected(3, {{0, 1, 2.0}, {1, 2, 5.0}});
    for (auto dir : {DegreeDirection::in, DegreeDirection::out, DegreeDirection::total}) {
      ScoreMap s = weighted_degree(u, dir);
      CHECK(s.values[1] == 7.0);
    }
  }
}

TEST_CASE("weighted degree is linear over edge-disjoint unions") {
  Rng rng(5);
  const std::uint32_t n = 12;
  WeightedGraph a(Directedness::undirected), b(Directedness::undirected),
      both(Directedness::undirected);
  for (std::uint32_t i = 0; i < n; ++i) {
    a.add_node({NodeKind::user, node_name(i)});
    b.add_node({NodeKind::user, node_name(i)});
    both.add_node({NodeKind::user, node_name(i)});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      double r = rng.next_double();
      if (r < 0.25) {
        a.add_edge(i, j, 1.0 + rng.next_double());
        both.add_edge(i, j, a.weight_between(i, j));
      } else if (r < 0.5) {
        b.add_edge(i, j, 1.0 + rng.next_double());
        both.add_edge(i, j, b.weight_between(i, j));
      }
    }
  }
  ScoreMap sa = weighted_degree(a, DegreeDirection::total);
  ScoreMap sb = weighted_degree(b, DegreeDirection::total);
  ScoreMap sboth = weighted_degree(both, DegreeDirection::total);
  for (std::uint32_t i = 0; i < n; ++i)
    CHECK(sboth.values[i] == doctest::Approx(sa.values[i] + sb.values[i]).epsilon(1e-15));
}

TEST_CASE("eigenvector centrality hand values") {
  SUBCASE("two nodes, one edge: both exactly 1") {
    ScoreMap s = eigenvector_centrality(make_undirected(2, {{0, 1, 1.0}}));
    CHECK(s.converged);
    CHECK(s.values[0] == 1.0);
    CHECK(s.values[1] == 1.0);
  }
  SUBCASE("star K1,3: center 1, leaves 1/sqrt(3)") {
    ScoreMap s = eigenvector_centrality(star_graph(3));
    REQUIRE(s.converged);
    CHECK(s.values[0] == 1.0);
    for (int leaf = 1; leaf <= 3; ++leaf)
      CHECK(s.values[leaf] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
    CHECK(s.spectral_estimate == doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
  }
  SUBCASE("empty graph throws") {
    CHECK_THROWS_AS(eigenvector_centrality(make_undirected(0, {})), Error);
  }
  SUBCASE("hitting max_iter reports converged = false, scores still normalized") {
    ScoreMap s = eigenvector_centrality(star_graph(4), 1e-12, 2);
    CHECK_FALSE(s.converged);
    CHECK(s.iterations == 2);
    double max_v = 0.0;
    for (double v : s.values) max_v = std::max(max_v, v);
    CHECK(max_v == 1.0);
  }
  SUBCASE("edgeless graph: everyone scores 1 immediately") {
    ScoreMap s = eigenvector_centrality(make_undirected(3, {}));
    CHECK(s.converged);
    for (double v : s.values) CHECK(v == 1.0);
    CHECK(s.spectral_estimate == 0.0);
  }
}

TEST_CASE("eigenvector centrality on connected fixtures: max 1 and small residual") {
  Rng rng(23);
  const double tol = 1e-9;
  for (int round = 0; round < 60; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng.next_below(60));
    WeightedGraph g = random_connected_graph(rng, n, 0.1);
    ScoreMap s = eigenvector_centrality(g, tol, 20000);
    REQUIRE(s.converged);
    double max_v = 0.0;
    for (double v : s.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      max_v = std::max(max_v, v);
    }
    CHECK(max_v == 1.0);
    CHECK(eigen_residual(g, s) <= 10.0 * tol);
  }
}

TEST_CASE("eigenvector centrality is scale-invariant") {
  Rng rng(31);
  WeightedGraph g = random_connected_graph(rng, 24, 0.15);
  WeightedGraph scaled(Directedness::undirected);
  for (std::uint32_t i = 0; i < g.node_count(); ++i) scaled.add_node(g.node(i));
  for (std::uint32_t i = 0; i < g.node_count(); ++i)
    for (const Edge& e : g.out_edges(i))
      if (e.target > i) scaled.add_edge(i, e.target, e.weight * 37.5);

  ScoreMap s1 = eigenvector_centrality(g);
  ScoreMap s2 = eigenvector_centrality(scaled);
  auto order1 = ranked_nodes(g, s1);
  auto order2 = ranked_nodes(scaled, s2);
  CHECK(order1 == order2);
  for (std::size_t i = 0; i < s1.values.size(); ++i)
    CHECK(s1.values[i] == doctest::Approx(s2.values[i]).epsilon(1e-7));
}

TEST_CASE("eigenvector centrality on a directed bipartite graph converges") {
  // user->post edges only; the undirected view gives posts nonzero reach
  PageDataset ds = minimal_dataset();
  ds.users.push_back({"u2", false});
  ds.posts.push_back({"p2", PostType::photo, 1423000000, "", std::nullopt});
  ds.events.push_back({"u1", "p2", EventKind::like, 1});
  ds.events.push_back({"u2", "p1", EventKind::like, 2});
  EngagementGraph g = build_engagement_graph(ds);
  ScoreMap s = eigenvector_centrality(g.graph);
  CHECK(s.converged);
  double max_v = 0.0;
  for (double v : s.values) max_v = std::max(max_v, v);
  CHECK(max_v == 1.0);
}

TEST_CASE("pagerank hand values") {
  SUBCASE("directed 5-cycle is uniform") {
    WeightedGraph g = make_directed(
        5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 0, 1.0}});
    ScoreMap s = pagerank(g);
    for (double v : s.values) CHECK(v == doctest::Approx(0.2).epsilon(1e-9));
  }
  SUBCASE("two nodes, a->b, damping 0.85: exact fixed point 20/57, 37/57") {
    // x_a = 0.075 + 0.425 x_b, x_b = 0.075 + 0.85 x_a + 0.425 x_b with the
    // dangling node b redistributing uniformly; solving gives x_a = 20/57.
    WeightedGraph g = make_directed(2, {{0, 1, 1.0}});
    ScoreMap s = pagerank(g, 0.85, 1e-12, 100000);
    CHECK(s.values[0] == doctest::Approx(20.0 / 57.0).epsilon(1e-9));
    CHECK(s.values[1] == doctest::Approx(37.0 / 57.0).epsilon(1e-9));
  }
  SUBCASE("uniform on complete graphs") {
    ScoreMap s = pagerank(complete_graph(6));
    for (double v : s.values) CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  }
  SUBCASE("invalid damping") {
    WeightedGraph g = make_directed(2, {{0, 1, 1.0}});
    CHECK_THROWS_AS(pagerank(g, 0.0), Error);
    CHECK_THROWS_AS(pagerank(g, 1.0), Error);
    CHECK_THROWS_AS(pagerank(g, 1.5), Error);
  }
  SUBCASE("empty graph") {
    CHECK_THROWS_AS(pagerank(make_directed(0, {})), Error);
  }
}

TEST_CASE("pagerank sums to one on random fixtures") {
  Rng rng(41);
  for (int round = 0; round < 30; ++round) {
    const auto n = static_cast<std::uint32_t>(1 + rng.next_below(40));
    WeightedGraph g = random_graph(rng, n, 0.15, Directedness::directed);
    ScoreMap s = pagerank(g);
    double sum = 0.0;
    for (double v : s.values) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("eigenvector and pagerank match dense oracles on small graphs") {
  Rng rng(55);
  int tested = 0;
  for (int round = 0; round < 120; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng.next_below(7));
    const bool directed = rng.next_below(2) == 0;
    WeightedGraph g = random_graph(
        rng, n, 0.35, directed ? Directedness::directed : Directedness::undirected);

    ScoreMap eig = eigenvector_centrality(g, 1e-12, 200000);
    auto eig_oracle = oracle_eigenvector(dense_undirected(g));
    for (std::size_t i = 0; i < eig.values.size(); ++i)
      CHECK(std::fabs(eig.values[i] - eig_oracle[i]) <= 1e-6);

    ScoreMap pr = pagerank(g, 0.85, 1e-13, 1000000);
    auto pr_oracle = oracle_pagerank(dense_adjacency(g), 0.85);
    for (std::size_t i = 0; i < pr.values.size(); ++i)
      CHECK(std::fabs(pr.values[i] - pr_oracle[i]) <= 1e-6);
    ++tested;
  }
  CHECK(tested == 120);
}

TEST_CASE("topology summary") {
  SUBCASE("K4") {
    TopologySummary t = topology_summary(complete_graph(4));
    CHECK(t.n_nodes == 4);
    CHECK(t.n_edges == 6);
    CHECK(t.density == 1.0);
    REQUIRE(t.avg_path_length.has_value());
    CHECK(*t.avg_path_length == 1.0);
    CHECK(t.n_components == 1);
    CHECK(t.largest_component_fraction == 1.0);
  }
  SUBCASE("two disjoint edges") {
    WeightedGraph g = make_undirected(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    TopologySummary t = topology_summary(g);
    CHECK(t.n_components == 2);
    CHECK(t.largest_component_fraction == 0.5);
  }
  SUBCASE("empty graph throws") {
    CHECK_THROWS_AS(topology_summary(make_undirected(0, {})), Error);
  }
}

TEST_CASE("score CSV export is ranked and deterministic") {
  WeightedGraph g = make_undirected(4, {{0, 1, 3.0}, {2, 3, 3.0}, {0, 2, 1.0}});
  ScoreMap s = weighted_degree(g, DegreeDirection::total);
  std::ostringstream a, b;
  write_scores_csv(g, s, a);
  write_scores_csv(g, s, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("node_id,kind,score\r\n", 0) == 0);
  // ties (n000 and n002 both 4) resolve by ascending id
  auto pos0 = a.str().find("n000");
  auto pos2 = a.str().find("n002");
  CHECK(pos0 < pos2);
}

TEST_CASE("topology summary json is stable") {
  TopologySummary t = topology_summary(complete_graph(3));
  CHECK(topology_summary_json(t) == topology_summary_json(t));
  CHECK(topology_summary_json(t).find("\"density\": 1.0") != std::string::npos);
}
