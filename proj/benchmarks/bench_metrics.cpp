#include <benchmark/benchmark.h>

#include "brandgraph/graph.hpp"
#include "brandgraph/metrics.hpp"
#include "brandgraph/synth.hpp"

using namespace brandgraph;

namespace {

EngagementGraph scale_graph(std::size_t n_users) {
  ScaleSpec spec;
  spec.n_posts = 200;
  spec.n_users = n_users;
  spec.n_pairs = n_users * 3;
  spec.total_engagements = n_users * 3 + n_users / 10;
  spec.seed = 42;
  return build_engagement_graph(synth_scale(spec));
}

}  // namespace

static void BM_eigenvector(benchmark::State& state) {
  EngagementGraph g = scale_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    ScoreMap s = eigenvector_centrality(g.graph);
    benchmark::DoNotOptimize(s.values.data());
  }
}
BENCHMARK(BM_eigenvector)->Arg(1000)->Arg(10000);

static void BM_pagerank(benchmark::State& state) {
  EngagementGraph g = scale_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    ScoreMap s = pagerank(g.graph);
    benchmark::DoNotOptimize(s.values.data());
  }
}
BENCHMARK(BM_pagerank)->Arg(1000)->Arg(10000);

static void BM_topology_summary(benchmark::State& state) {
  EngagementGraph g = scale_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    TopologySummary t = topology_summary(g.graph);
    benchmark::DoNotOptimize(&t);
  }
}
BENCHMARK(BM_topology_summary)->Arg(1000)->Arg(10000);
