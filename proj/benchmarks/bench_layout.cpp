#include <benchmark/benchmark.h>

#include "brandgraph/layout.hpp"
#include "brandgraph/synth.hpp"

using namespace brandgraph;

namespace {

EngagementGraph layout_graph(std::size_t n_users) {
  ScaleSpec spec;
  spec.n_posts = 50;
  spec.n_users = n_users;
  spec.n_pairs = n_users * 2;
  spec.total_engagements = n_users * 2;
  spec.seed = 3;
  return build_engagement_graph(synth_scale(spec));
}

}  // namespace

static void BM_forceatlas2_exact(benchmark::State& state) {
  EngagementGraph g = layout_graph(static_cast<std::size_t>(state.range(0)));
  LayoutParams params;
  params.iterations = 50;
  for (auto _ : state) {
    LayoutResult r = forceatlas2(g.graph, params);
    benchmark::DoNotOptimize(r.positions.data());
  }
}
BENCHMARK(BM_forceatlas2_exact)->Arg(200)->Arg(1000);

static void BM_forceatlas2_grid(benchmark::State& state) {
  EngagementGraph g = layout_graph(static_cast<std::size_t>(state.range(0)));
  LayoutParams params;
  params.iterations = 50;
  params.approximate_repulsion = true;
  for (auto _ : state) {
    LayoutResult r = forceatlas2(g.graph, params);
    benchmark::DoNotOptimize(r.positions.data());
  }
}
BENCHMARK(BM_forceatlas2_grid)->Arg(1000)->Arg(5000);
