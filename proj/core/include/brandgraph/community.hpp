#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "brandgraph/graph.hpp"
#include "brandgraph/metrics.hpp"

namespace brandgraph {

struct CommunityPartition {
  /// Node index -> community id, ids contiguous from 0.
  std::vector<std::uint32_t> assignment;
  double q = 0.0;
  std::uint32_t n_communities = 0;
  std::uint64_t seed = 0;
  double resolution = 1.0;
};

struct CommunityPostRank {
  std::string post_id;
  double score = 0.0;
};

struct CommunityStat {
  std::uint32_t id = 0;
  std::size_t n_nodes = 0;
  double pct_nodes = 0.0;
  std::size_t n_posts = 0;
  /// Community posts ranked by PageRank, descending, ties by post id.
  std::vector<CommunityPostRank> top_posts;
};

/// Per-community sizes and post rankings, ordered by node count
/// descending, community id ascending. pct_nodes sums to 100.
struct CommunityStats {
  std::vector<CommunityStat> communities;
};

/// Classic modularity of each completed local-move pass, flattened to the
/// input graph. Useful for checking the algorithm's monotonicity.
struct LouvainTrace {
  std::vector<double> pass_modularity;
};

/// Newman weighted modularity Q = (1/2m) sum_ij [A_ij - k_i k_j / 2m]
/// delta(c_i, c_j). Directed graphs are evaluated on their undirected
/// view. Throws PartitionMismatch or EmptyGraph.
double modularity(const WeightedGraph& g, const CommunityPartition& p);

/// Two-phase Louvain: seeded-shuffle local moves until no modularity gain
/// exceeds 1e-12, then graph aggregation, repeated until stable. Gain
/// ties break toward the lowest community id. Deterministic for a given
/// (graph, resolution, seed). The returned q is the classic modularity of
/// the final assignment recomputed on the input graph.
CommunityPartition louvain(const WeightedGraph& g, double resolution = 1.0,
                           std::uint64_t seed = 0, LouvainTrace* trace = nullptr);

/// Pagerank-ranked posts per community plus size statistics.
CommunityStats community_stats(const EngagementGraph& g, const CommunityPartition& p,
                               const ScoreMap& pagerank_scores);

/// CSV `node_id,kind,community` sorted by (kind, node id).
void write_partition_csv(const WeightedGraph& g, const CommunityPartition& p,
                         std::ostream& out);

std::string community_stats_json(const CommunityStats& stats);

/// Markdown table with columns Cluster_Id, Theme, Nb of posts, % Nodes.
/// Themes default to "-" when the map has no entry. max_rows == 0 emits
/// every community.
std::string community_stats_markdown(
    const CommunityStats& stats,
    const std::map<std::uint32_t, std::string>& themes = {},
    std::size_t max_rows = 0);

}  // namespace brandgraph
