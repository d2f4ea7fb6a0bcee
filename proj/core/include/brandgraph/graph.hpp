#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "brandgraph/ingest.hpp"

namespace brandgraph {

enum class NodeKind { post, user };

std::string_view to_string(NodeKind k);

struct NodeId {
  NodeKind kind = NodeKind::post;
  std::string id;

  bool operator==(const NodeId&) const = default;
  auto operator<=>(const NodeId&) const = default;
};

struct NodeIdHash {
  std::size_t operator()(const NodeId& n) const {
    return std::hash<std::string>()(n.id) * 2 + static_cast<std::size_t>(n.kind);
  }
};

enum class Directedness { directed, undirected };

struct Edge {
  std::uint32_t target = 0;
  double weight = 0.0;
};

/// Weighted simple graph. Nodes keep their insertion order, which is the
/// deterministic node ordering every algorithm and export relies on.
/// Parallel edge insertions merge by summing weights; adjacency lists are
/// sorted by target index. Self-loops are rejected.
class WeightedGraph {
public:
  explicit WeightedGraph(Directedness d) : directedness_(d) {}

  /// Inserts (or finds) a node; returns its index.
  std::uint32_t add_node(const NodeId& id);

  /// Adds weight to the (src, dst) edge, inserting endpoints as needed.
  /// weight must be > 0.
  void add_edge(const NodeId& src, const NodeId& dst, double weight);
  void add_edge(std::uint32_t src, std::uint32_t dst, double weight);

  Directedness directedness() const { return directedness_; }
  bool directed() const { return directedness_ == Directedness::directed; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;
  double total_edge_weight() const;

  const NodeId& node(std::uint32_t i) const { return nodes_[i]; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::optional<std::uint32_t> find(const NodeId& id) const;

  /// Outgoing edges (directed) or all incident edges (undirected),
  /// sorted by target index.
  std::span<const Edge> out_edges(std::uint32_t i) const;
  /// Incoming edges; identical to out_edges on undirected graphs.
  std::span<const Edge> in_edges(std::uint32_t i) const;

  /// Weight of the (src, dst) edge, or 0 when absent.
  double weight_between(std::uint32_t src, std::uint32_t dst) const;

private:
  void finalize() const;

  Directedness directedness_;
  std::vector<NodeId> nodes_;
  std::unordered_map<NodeId, std::uint32_t, NodeIdHash> index_;
  // Edge lists accumulate unsorted; finalize() sorts and merges them.
  mutable std::vector<std::vector<Edge>> out_;
  mutable std::vector<std::vector<Edge>> in_;
  mutable bool dirty_ = false;
  mutable std::size_t edge_count_ = 0;
  mutable double total_weight_ = 0.0;
};

/// Directed bipartite user-to-post graph. Edge weight is the
/// kind-weighted sum of the user's engagement counts on the post.
struct EngagementGraph {
  WeightedGraph graph{Directedness::directed};
  std::map<EventKind, double> kind_weights;
};

/// Undirected user-to-user co-engagement projection.
struct UserGraph {
  WeightedGraph graph{Directedness::undirected};
};

std::map<EventKind, double> default_kind_weights();

/// One node per post and per engaging user; users with no events stay in
/// the roster only. Edges whose kind-weighted sum is zero are omitted.
EngagementGraph build_engagement_graph(
    const PageDataset& ds,
    std::map<EventKind, double> kind_weights = default_kind_weights());

/// Co-engagement projection: weight(u, v) = number of distinct posts both
/// engaged. With include_reply_edges, each comment_reply event by u on a
/// post the page owner also commented adds +1 to the (u, owner) edge;
/// thread structure is not modeled.
UserGraph project_user_user(const EngagementGraph& g, bool include_reply_edges,
                            const PageDataset& ds);

/// Undirected copy; opposite directed edges merge by summing weights.
/// Idempotent on undirected input.
WeightedGraph undirected_view(const WeightedGraph& g);

void write_graphml(const WeightedGraph& g, std::ostream& out);
void write_edge_list_tsv(const WeightedGraph& g, std::ostream& out);

}  // namespace brandgraph
