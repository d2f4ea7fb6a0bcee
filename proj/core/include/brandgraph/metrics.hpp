#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "brandgraph/graph.hpp"

namespace brandgraph {

/// Per-node scores aligned with the graph's node indices, plus the
/// metadata needed to reproduce the run.
struct ScoreMap {
  std::string metric;
  std::string params;
  int iterations = 0;
  bool converged = true;
  /// Dominant-eigenvalue estimate from the last normalization step;
  /// only meaningful for eigenvector centrality.
  double spectral_estimate = 0.0;
  std::vector<double> values;
};

struct TopologySummary {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double density = 0.0;
  std::optional<double> avg_path_length;
  std::size_t n_components = 0;
  double largest_component_fraction = 0.0;
};

enum class DegreeDirection { in, out, total };

/// E / (N(N-1)) directed, E / (N(N-1)/2) undirected; weights ignored.
/// Throws DegenerateGraph for fewer than two nodes.
double density(const WeightedGraph& g);

/// Mean unweighted shortest-path length over ordered reachable pairs
/// inside the largest weakly connected component. nullopt when that
/// component has fewer than two nodes. Throws EmptyGraph.
std::optional<double> average_path_length(const WeightedGraph& g);

/// Sum of incident edge weights in the requested direction. Undirected
/// graphs return the total for every direction.
ScoreMap weighted_degree(const WeightedGraph& g, DegreeDirection direction);

/// Principal-eigenvector scores of the undirected view's weighted
/// adjacency, max-normalized so the top node scores exactly 1.
///
/// The power iteration multiplies by (A + I) rather than A: the identity
/// shift makes every eigenvalue magnitude strictly below the dominant
/// one, so the iteration also converges on bipartite graphs, whose
/// adjacency spectrum is symmetric. The fixed point is the same Perron
/// vector. Iteration starts from the uniform vector, renormalizes by the
/// maximum entry each step, and stops when no component changes by more
/// than tol.
ScoreMap eigenvector_centrality(const WeightedGraph& g, double tol = 1e-9,
                                int max_iter = 1000);

/// Damped random-walk stationary distribution with weight-proportional
/// transitions; dangling nodes redistribute uniformly. Scores sum to 1.
ScoreMap pagerank(const WeightedGraph& g, double damping = 0.85,
                  double tol = 1e-9, int max_iter = 1000);

TopologySummary topology_summary(const WeightedGraph& g);

/// Node indices ordered by descending score, ties broken by ascending
/// node id; the ordering used by every ranking and export.
std::vector<std::uint32_t> ranked_nodes(const WeightedGraph& g, const ScoreMap& s);

/// CSV `node_id,kind,score` in ranked order.
void write_scores_csv(const WeightedGraph& g, const ScoreMap& s, std::ostream& out);

std::string topology_summary_json(const TopologySummary& t);

}  // namespace brandgraph
