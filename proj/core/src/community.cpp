#include "brandgraph/community.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "brandgraph/error.hpp"
#include "brandgraph/rng.hpp"
#include "brandgraph/text.hpp"
#include "json.hpp"

namespace brandgraph {

namespace {

constexpr double kMinGain = 1e-12;

/// Working graph for one Louvain level. Undirected; aggregation folds
/// intra-community weight into self_weight, which counts once toward a
/// node's strength and once toward in-community weight.
struct LevelGraph {
  std::vector<std::vector<Edge>> adj;  // no self entries
  std::vector<double> self_weight;     // 2 * internal edge weight after aggregation
  std::vector<double> strength;        // k_i including self_weight
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph level_from(const WeightedGraph& g) {
  LevelGraph lg;
  const auto n = static_cast<std::uint32_t>(g.node_count());
  lg.adj.resize(n);
  lg.self_weight.assign(n, 0.0);
  lg.strength.assign(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (const Edge& e : g.out_edges(i)) {
      lg.adj[i].push_back(e);
      lg.strength[i] += e.weight;
    }
    lg.two_m += lg.strength[i];
  }
  return lg;
}

/// One local-move phase. Returns true if any node changed community.
bool local_move_pass_loop(const LevelGraph& lg, std::vector<std::uint32_t>& comm,
                          double resolution, Rng& rng,
                          const std::function<void()>& after_pass) {
  const auto n = static_cast<std::uint32_t>(lg.size());
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::vector<double> tot(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) tot[comm[i]] += lg.strength[i];

  // Scratch accumulator for neighbor-community weights.
  std::vector<double> neigh_w(n, 0.0);
  std::vector<std::uint32_t> touched;

  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t idx = 0; idx < n; ++idx) {
      const std::uint32_t i = order[idx];
      const std::uint32_t c_old = comm[i];

      touched.clear();
      for (const Edge& e : lg.adj[i]) {
        const std::uint32_t c = comm[e.target];
        if (neigh_w[c] == 0.0) touched.push_back(c);
        neigh_w[c] += e.weight;
      }
      if (neigh_w[c_old] == 0.0) touched.push_back(c_old);

      tot[c_old] -= lg.strength[i];

      // gain(c) = w(i,c) - resolution * k_i * tot(c) / 2m, evaluated with
      // i removed. Candidates scan in ascending community id so equal
      // gains resolve to the lowest id.
      std::sort(touched.begin(), touched.end());
      const double k_scaled = resolution * lg.strength[i] / lg.two_m;
      double best_gain = 0.0;
      std::uint32_t best_c = c_old;
      bool first = true;
      for (std::uint32_t c : touched) {
        const double gain = neigh_w[c] - k_scaled * tot[c];
        if (first || gain > best_gain) {
          best_gain = gain;
          best_c = c;
          first = false;
        }
      }
      const double gain_old = neigh_w[c_old] - k_scaled * tot[c_old];
      const double delta_q = (best_gain - gain_old) * (2.0 / lg.two_m);

      for (std::uint32_t c : touched) neigh_w[c] = 0.0;

      if (best_c != c_old && delta_q > kMinGain) {
        comm[i] = best_c;
        tot[best_c] += lg.strength[i];
        moved = true;
        any_move = true;
      } else {
        tot[c_old] += lg.strength[i];
      }
    }
    if (after_pass) after_pass();
  }
  return any_move;
}

/// Renumbers labels to contiguous ids ordered by first appearance.
std::uint32_t renumber(std::vector<std::uint32_t>& labels) {
  std::vector<std::uint32_t> remap(labels.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& l : labels) {
    if (remap[l] == UINT32_MAX) remap[l] = next++;
    l = remap[l];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm,
                     std::uint32_t n_comm) {
  LevelGraph agg;
  agg.adj.resize(n_comm);
  agg.self_weight.assign(n_comm, 0.0);
  agg.strength.assign(n_comm, 0.0);
  agg.two_m = lg.two_m;

  std::vector<double> acc(n_comm, 0.0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t c = 0; c < n_comm; ++c) agg.adj[c].reserve(4);

  // Group members by community, preserving node order.
  std::vector<std::vector<std::uint32_t>> members(n_comm);
  for (std::uint32_t i = 0; i < lg.size(); ++i) members[comm[i]].push_back(i);

  for (std::uint32_t c = 0; c < n_comm; ++c) {
    touched.clear();
    double self = 0.0;
    for (std::uint32_t i : members[c]) {
      self += lg.self_weight[i];
      for (const Edge& e : lg.adj[i]) {
        const std::uint32_t d = comm[e.target];
        if (d == c) {
          self += e.weight;  // every internal edge is visited twice
        } else {
          if (acc[d] == 0.0) touched.push_back(d);
          acc[d] += e.weight;
        }
      }
    }
    agg.self_weight[c] = self;
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t d : touched) {
      agg.adj[c].push_back({d, acc[d]});
      acc[d] = 0.0;
    }
    agg.strength[c] = self;
    for (const Edge& e : agg.adj[c]) agg.strength[c] += e.weight;
  }
  return agg;
}

}  // namespace

double modularity(const WeightedGraph& g, const CommunityPartition& p) {
  if (g.node_count() == 0) throw Error(ErrorCode::EmptyGraph, "modularity on empty graph");
  if (p.assignment.size() != g.node_count())
    throw Error(ErrorCode::PartitionMismatch,
                "partition covers " + std::to_string(p.assignment.size()) +
                    " nodes, graph has " + std::to_string(g.node_count()));

  const WeightedGraph view = g.directed() ? undirected_view(g) : WeightedGraph(g);
  const double m = view.total_edge_weight();
  if (m == 0.0) return 0.0;

  std::uint32_t n_comm = 0;
  for (auto c : p.assignment) n_comm = std::max(n_comm, c + 1);
  std::vector<double> internal(n_comm, 0.0);  // intra edge weight, each edge once
  std::vector<double> degree(n_comm, 0.0);    // summed node strengths

  for (std::uint32_t i = 0; i < view.node_count(); ++i) {
    for (const Edge& e : view.out_edges(i)) {
      degree[p.assignment[i]] += e.weight;
      if (e.target > i && p.assignment[e.target] == p.assignment[i])
        internal[p.assignment[i]] += e.weight;
    }
  }

  double q = 0.0;
  for (std::uint32_t c = 0; c < n_comm; ++c) {
    const double frac = degree[c] / (2.0 * m);
    q += internal[c] / m - frac * frac;
  }
  return q;
}

CommunityPartition louvain(const WeightedGraph& g, double resolution,
                           std::uint64_t seed, LouvainTrace* trace) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "louvain on empty graph");

  CommunityPartition part;
  part.seed = seed;
  part.resolution = resolution;

  const WeightedGraph view = g.directed() ? undirected_view(g) : WeightedGraph(g);
  LevelGraph level = level_from(view);

  // Original node -> community at the current level.
  std::vector<std::uint32_t> flat(n);
  std::iota(flat.begin(), flat.end(), 0);

  if (level.two_m == 0.0) {
    // Edgeless graph: every node is its own community.
    part.assignment = flat;
    part.n_communities = n;
    part.q = 0.0;
    return part;
  }

  Rng rng(seed);
  while (true) {
    std::vector<std::uint32_t> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0);

    auto record_pass = [&] {
      if (!trace) return;
      CommunityPartition snapshot;
      snapshot.assignment.resize(n);
      for (std::uint32_t i = 0; i < n; ++i) snapshot.assignment[i] = comm[flat[i]];
      renumber(snapshot.assignment);
      trace->pass_modularity.push_back(modularity(view, snapshot));
    };

    const bool improved =
        local_move_pass_loop(level, comm, resolution, rng, record_pass);
    if (!improved) break;

    const std::uint32_t n_comm = renumber(comm);
    for (auto& f : flat) f = comm[f];
    if (n_comm == level.size()) break;
    level = aggregate(level, comm, n_comm);
  }

  part.assignment = std::move(flat);
  part.n_communities = renumber(part.assignment);
  part.q = modularity(g, part);
  return part;
}

CommunityStats community_stats(const EngagementGraph& g, const CommunityPartition& p,
                               const ScoreMap& pagerank_scores) {
  const WeightedGraph& graph = g.graph;
  const auto n = graph.node_count();
  if (p.assignment.size() != n || pagerank_scores.values.size() != n)
    throw Error(ErrorCode::PartitionMismatch,
                "partition or score map does not cover the graph");

  std::uint32_t n_comm = 0;
  for (auto c : p.assignment) n_comm = std::max(n_comm, c + 1);

  CommunityStats stats;
  stats.communities.resize(n_comm);
  for (std::uint32_t c = 0; c < n_comm; ++c) stats.communities[c].id = c;

  for (std::uint32_t i = 0; i < n; ++i) {
    CommunityStat& cs = stats.communities[p.assignment[i]];
    ++cs.n_nodes;
    if (graph.node(i).kind == NodeKind::post) {
      ++cs.n_posts;
      cs.top_posts.push_back({graph.node(i).id, pagerank_scores.values[i]});
    }
  }
  for (auto& cs : stats.communities) {
    cs.pct_nodes = 100.0 * static_cast<double>(cs.n_nodes) / static_cast<double>(n);
    std::sort(cs.top_posts.begin(), cs.top_posts.end(),
              [](const CommunityPostRank& a, const CommunityPostRank& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.post_id < b.post_id;
              });
  }
  std::sort(stats.communities.begin(), stats.communities.end(),
            [](const CommunityStat& a, const CommunityStat& b) {
              if (a.n_nodes != b.n_nodes) return a.n_nodes > b.n_nodes;
              return a.id < b.id;
            });
  return stats;
}

void write_partition_csv(const WeightedGraph& g, const CommunityPartition& p,
                         std::ostream& out) {
  if (p.assignment.size() != g.node_count())
    throw Error(ErrorCode::PartitionMismatch, "partition does not cover the graph");
  std::vector<std::uint32_t> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (g.node(a).kind != g.node(b).kind)
      return g.node(a).kind == NodeKind::post;
    return g.node(a).id < g.node(b).id;
  });
  out << "node_id,kind,community\r\n";
  for (auto i : order) {
    out << csv_field(g.node(i).id) << ',' << to_string(g.node(i).kind) << ','
        << p.assignment[i] << "\r\n";
  }
}

std::string community_stats_json(const CommunityStats& stats) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : stats.communities) {
    nlohmann::json j;
    j["id"] = c.id;
    j["n_nodes"] = c.n_nodes;
    j["pct_nodes"] = c.pct_nodes;
    j["n_posts"] = c.n_posts;
    nlohmann::json posts = nlohmann::json::array();
    std::size_t limit = std::min<std::size_t>(c.top_posts.size(), 10);
    for (std::size_t i = 0; i < limit; ++i)
      posts.push_back({{"post_id", c.top_posts[i].post_id},
                       {"score", c.top_posts[i].score}});
    j["top_posts"] = std::move(posts);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::string community_stats_markdown(
    const CommunityStats& stats, const std::map<std::uint32_t, std::string>& themes,
    std::size_t max_rows) {
  std::string out;
  out += "| Cluster_Id | Theme | Nb of posts | % Nodes |\n";
  out += "| --- | --- | --- | --- |\n";
  std::size_t rows = stats.communities.size();
  if (max_rows > 0) rows = std::min(rows, max_rows);
  double pct_sum = 0.0;
  char buf[32];
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& c = stats.communities[i];
    auto theme = themes.find(c.id);
    std::snprintf(buf, sizeof buf, "%.2f", c.pct_nodes);
    out += "| " + std::to_string(c.id) + " | " +
           (theme == themes.end() ? std::string("-") : theme->second) + " | " +
           std::to_string(c.n_posts) + " | " + buf + " |\n";
    pct_sum += c.pct_nodes;
  }
  std::snprintf(buf, sizeof buf, "%.2f", pct_sum);
  out += "| Total " + std::to_string(rows) + " largest clusters (% Nodes) |  |  | " +
         buf + " |\n";
  return out;
}

}  // namespace brandgraph
