#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "brandgraph/community.hpp"
#include "brandgraph/graph.hpp"

namespace brandgraph {

struct LayoutParams {
  double scaling = 2.0;         // repulsion constant k_r
  double gravity = 1.0;
  int iterations = 1000;
  double jitter_tolerance = 1.0;
  bool linlog = false;
  /// Uniform-grid repulsion approximation: near cells are exact, far
  /// cells act through their mass centroid. Not bit-equal to the exact
  /// O(n^2) sum, but deterministic for a given input.
  bool approximate_repulsion = false;
  std::uint64_t seed = 0;
};

struct LayoutResult {
  /// (x, y) per graph node index.
  std::vector<std::array<double, 2>> positions;
  /// Largest node movement during the final iteration.
  double final_max_displacement = 0.0;
  int iterations_run = 0;
};

/// ForceAtlas2: linear edge attraction F_a = w * d (logarithmic under
/// linlog), degree-weighted pairwise repulsion F_r = k_r (deg_i + 1)
/// (deg_j + 1) / d, constant gravity (deg + 1) * g toward the origin and
/// the standard swinging/traction adaptive speed. Initial positions are
/// seeded uniform over a square; results are bitwise deterministic for a
/// given (graph, params).
LayoutResult forceatlas2(const WeightedGraph& g, const LayoutParams& params);

/// Same simulation from caller-supplied initial positions (one per node).
LayoutResult forceatlas2(const WeightedGraph& g, const LayoutParams& params,
                         std::vector<std::array<double, 2>> initial_positions);

/// SVG 1.1 document: nodes as circles sized by total weighted degree
/// (radius 2..20, linear), colored by community through a deterministic
/// hue-rotation palette, edges as lines with weight-proportional opacity,
/// viewBox fit to the positions with a 5% margin.
std::string svg_document(const WeightedGraph& g, const LayoutResult& layout,
                         const CommunityPartition* partition);

void render_svg(const WeightedGraph& g, const LayoutResult& layout,
                const CommunityPartition* partition,
                const std::filesystem::path& path);

/// CSV `node_id,x,y` in node order.
void write_positions_csv(const WeightedGraph& g, const LayoutResult& layout,
                         std::ostream& out);

}  // namespace brandgraph
