#include "brandgraph/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "brandgraph/error.hpp"
#include "brandgraph/text.hpp"

namespace brandgraph {

std::string_view to_string(NodeKind k) {
  return k == NodeKind::post ? "post" : "user";
}

std::uint32_t WeightedGraph::add_node(const NodeId& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  auto idx = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(id);
  index_.emplace(id, idx);
  out_.emplace_back();
  in_.emplace_back();
  return idx;
}

void WeightedGraph::add_edge(const NodeId& src, const NodeId& dst, double weight) {
  add_edge(add_node(src), add_node(dst), weight);
}

void WeightedGraph::add_edge(std::uint32_t src, std::uint32_t dst, double weight) {
  if (src >= nodes_.size() || dst >= nodes_.size())
    throw std::out_of_range("WeightedGraph::add_edge: node index out of range");
  if (src == dst)
    throw std::invalid_argument("WeightedGraph::add_edge: self-loops are not allowed");
  if (!(weight > 0.0))
    throw std::invalid_argument("WeightedGraph::add_edge: weight must be > 0");
  if (directed()) {
    out_[src].push_back({dst, weight});
    in_[dst].push_back({src, weight});
  } else {
    out_[src].push_back({dst, weight});
    out_[dst].push_back({src, weight});
  }
  dirty_ = true;
}

void WeightedGraph::finalize() const {
  if (!dirty_) return;
  auto merge = [](std::vector<Edge>& edges) {
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.target < b.target; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < edges.size(); ++r) {
      if (w > 0 && edges[w - 1].target == edges[r].target) {
        edges[w - 1].weight += edges[r].weight;
      } else {
        edges[w++] = edges[r];
      }
    }
    edges.resize(w);
  };
  edge_count_ = 0;
  total_weight_ = 0.0;
  for (auto& e : out_) merge(e);
  for (auto& e : in_) merge(e);
  for (std::uint32_t i = 0; i < out_.size(); ++i) {
    for (const Edge& e : out_[i]) {
      if (directed() || e.target > i) {
        ++edge_count_;
        total_weight_ += e.weight;
      }
    }
  }
  dirty_ = false;
}

std::size_t WeightedGraph::edge_count() const {
  finalize();
  return edge_count_;
}

double WeightedGraph::total_edge_weight() const {
  finalize();
  return total_weight_;
}

std::optional<std::uint32_t> WeightedGraph::find(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const Edge> WeightedGraph::out_edges(std::uint32_t i) const {
  finalize();
  return out_[i];
}

std::span<const Edge> WeightedGraph::in_edges(std::uint32_t i) const {
  finalize();
  return directed() ? std::span<const Edge>(in_[i]) : std::span<const Edge>(out_[i]);
}

double WeightedGraph::weight_between(std::uint32_t src, std::uint32_t dst) const {
  auto edges = out_edges(src);
  auto it = std::lower_bound(edges.begin(), edges.end(), dst,
                             [](const Edge& e, std::uint32_t t) { return e.target < t; });
  if (it != edges.end() && it->target == dst) return it->weight;
  return 0.0;
}

std::map<EventKind, double> default_kind_weights() {
  return {{EventKind::like, 1.0},
          {EventKind::comment, 1.0},
          {EventKind::comment_reply, 1.0},
          {EventKind::share, 1.0}};
}

EngagementGraph build_engagement_graph(const PageDataset& ds,
                                       std::map<EventKind, double> kind_weights) {
  for (auto kind : {EventKind::like, EventKind::comment, EventKind::comment_reply,
                    EventKind::share}) {
    auto it = kind_weights.find(kind);
    if (it == kind_weights.end()) kind_weights.emplace(kind, 1.0);
    else if (it->second < 0.0)
      throw std::invalid_argument("kind weights must be >= 0");
  }

  EngagementGraph g;
  g.kind_weights = kind_weights;
  for (const auto& p : ds.posts) g.graph.add_node({NodeKind::post, p.post_id});

  // Engaging users become nodes in first-event order; per-pair weights
  // accumulate before insertion so zero-weight edges can be dropped.
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> weights;
  for (const auto& e : ds.events) {
    std::uint32_t u = g.graph.add_node({NodeKind::user, e.user_id});
    std::uint32_t p = *g.graph.find({NodeKind::post, e.post_id});
    weights[{u, p}] += kind_weights[e.kind] * static_cast<double>(e.count);
  }
  for (const auto& [pair, w] : weights) {
    if (w > 0.0) g.graph.add_edge(pair.first, pair.second, w);
  }
  return g;
}

UserGraph project_user_user(const EngagementGraph& g, bool include_reply_edges,
                            const PageDataset& ds) {
  const WeightedGraph& eg = g.graph;
  UserGraph result;

  std::vector<std::uint32_t> user_nodes;
  for (std::uint32_t i = 0; i < eg.node_count(); ++i) {
    if (eg.node(i).kind == NodeKind::user) {
      user_nodes.push_back(i);
      result.graph.add_node(eg.node(i));
    }
  }

  // Co-engagement: for each post, all pairs of engaging users share it.
  // Engagement is any event kind, independent of kind weights.
  std::unordered_map<std::string, std::vector<std::uint32_t>> post_engagers;
  for (const auto& e : ds.events) {
    auto idx = result.graph.find({NodeKind::user, e.user_id});
    auto& v = post_engagers[e.post_id];
    if (std::find(v.begin(), v.end(), *idx) == v.end()) v.push_back(*idx);
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> weights;
  for (const auto& p : ds.posts) {
    auto it = post_engagers.find(p.post_id);
    if (it == post_engagers.end()) continue;
    auto& users = it->second;
    std::sort(users.begin(), users.end());
    for (std::size_t a = 0; a < users.size(); ++a)
      for (std::size_t b = a + 1; b < users.size(); ++b)
        weights[{users[a], users[b]}] += 1.0;
  }

  if (include_reply_edges) {
    const UserRecord* owner = ds.page_owner();
    if (owner) {
      auto owner_idx = result.graph.find({NodeKind::user, owner->user_id});
      if (owner_idx) {
        std::set<std::string> owner_commented;
        for (const auto& e : ds.events)
          if (e.user_id == owner->user_id && e.kind == EventKind::comment)
            owner_commented.insert(e.post_id);
        for (const auto& e : ds.events) {
          if (e.kind != EventKind::comment_reply) continue;
          if (e.user_id == owner->user_id) continue;
          if (!owner_commented.count(e.post_id)) continue;
          auto u = result.graph.find({NodeKind::user, e.user_id});
          std::uint32_t a = std::min(*u, *owner_idx);
          std::uint32_t b = std::max(*u, *owner_idx);
          weights[{a, b}] += 1.0;
        }
      }
    }
  }

  for (const auto& [pair, w] : weights)
    result.graph.add_edge(pair.first, pair.second, w);
  return result;
}

WeightedGraph undirected_view(const WeightedGraph& g) {
  WeightedGraph u(Directedness::undirected);
  for (std::uint32_t i = 0; i < g.node_count(); ++i) u.add_node(g.node(i));
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    for (const Edge& e : g.out_edges(i)) {
      if (g.directed() || e.target > i) u.add_edge(i, e.target, e.weight);
    }
  }
  return u;
}

void write_graphml(const WeightedGraph& g, std::ostream& out) {
  auto xml_escape = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      switch (c) {
        case '&': r += "&amp;"; break;
        case '<': r += "&lt;"; break;
        case '>': r += "&gt;"; break;
        case '"': r += "&quot;"; break;
        default: r += c;
      }
    }
    return r;
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <graph edgedefault=\""
      << (g.directed() ? "directed" : "undirected") << "\">\n";
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    const NodeId& n = g.node(i);
    out << "    <node id=\"n" << i << "\">"
        << "<data key=\"label\">" << xml_escape(n.id) << "</data>"
        << "<data key=\"kind\">" << to_string(n.kind) << "</data>"
        << "</node>\n";
  }
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    for (const Edge& e : g.out_edges(i)) {
      if (!g.directed() && e.target < i) continue;
      out << "    <edge source=\"n" << i << "\" target=\"n" << e.target << "\">"
          << "<data key=\"weight\">" << format_double(e.weight) << "</data>"
          << "</edge>\n";
    }
  }
  out << "  </graph>\n</graphml>\n";
}

void write_edge_list_tsv(const WeightedGraph& g, std::ostream& out) {
  out << "src\tdst\tweight\n";
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    for (const Edge& e : g.out_edges(i)) {
      if (!g.directed() && e.target < i) continue;
      out << tsv_escape(g.node(i).id) << '\t' << tsv_escape(g.node(e.target).id)
          << '\t' << format_double(e.weight) << '\n';
    }
  }
}

}  // namespace brandgraph
