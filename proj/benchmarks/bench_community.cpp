#include <benchmark/benchmark.h>

#include "brandgraph/community.hpp"
#include "brandgraph/synth.hpp"

using namespace brandgraph;

static void BM_louvain_planted(benchmark::State& state) {
  PlantedSpec spec;
  spec.n_blocks = static_cast<std::size_t>(state.range(0));
  spec.posts_per_block = 10;
  spec.users_per_block = 40;
  spec.seed = 7;
  EngagementGraph g = build_engagement_graph(synth_planted(spec).dataset);
  for (auto _ : state) {
    CommunityPartition p = louvain(g.graph, 1.0, 7);
    benchmark::DoNotOptimize(p.q);
  }
}
BENCHMARK(BM_louvain_planted)->Arg(4)->Arg(12);

static void BM_modularity(benchmark::State& state) {
  PlantedSpec spec;
  spec.n_blocks = 8;
  spec.posts_per_block = 10;
  spec.users_per_block = 40;
  spec.seed = 7;
  EngagementGraph g = build_engagement_graph(synth_planted(spec).dataset);
  CommunityPartition p = louvain(g.graph, 1.0, 7);
  for (auto _ : state) {
    double q = modularity(g.graph, p);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_modularity);

static void BM_projection(benchmark::State& state) {
  PlantedSpec spec;
  spec.n_blocks = 4;
  spec.posts_per_block = 10;
  spec.users_per_block = static_cast<std::size_t>(state.range(0));
  spec.seed = 9;
  PlantedResult planted = synth_planted(spec);
  EngagementGraph g = build_engagement_graph(planted.dataset);
  for (auto _ : state) {
    UserGraph ug = project_user_user(g, false, planted.dataset);
    benchmark::DoNotOptimize(ug.graph.node_count());
  }
}
BENCHMARK(BM_projection)->Arg(25)->Arg(100);
