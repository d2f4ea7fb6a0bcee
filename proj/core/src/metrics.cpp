#include "brandgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "brandgraph/error.hpp"
#include "brandgraph/text.hpp"
#include "json.hpp"

namespace brandgraph {

namespace {

/// Weakly connected component id per node, components numbered in order
/// of their smallest node index.
std::vector<std::uint32_t> weak_components(const WeightedGraph& g,
                                           std::size_t* n_components) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  std::vector<std::uint32_t> comp(n, UINT32_MAX);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] != UINT32_MAX) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      auto visit = [&](const Edge& e) {
        if (comp[e.target] == UINT32_MAX) {
          comp[e.target] = next;
          stack.push_back(e.target);
        }
      };
      for (const Edge& e : g.out_edges(v)) visit(e);
      if (g.directed())
        for (const Edge& e : g.in_edges(v)) visit(e);
    }
    ++next;
  }
  if (n_components) *n_components = next;
  return comp;
}

}  // namespace

double density(const WeightedGraph& g) {
  const auto n = g.node_count();
  if (n < 2)
    throw Error(ErrorCode::DegenerateGraph,
                "density requires at least two nodes, got " + std::to_string(n));
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  const double e = static_cast<double>(g.edge_count());
  return g.directed() ? e / pairs : e / (pairs / 2.0);
}

std::optional<double> average_path_length(const WeightedGraph& g) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "average_path_length on empty graph");

  std::size_t n_components = 0;
  auto comp = weak_components(g, &n_components);
  std::vector<std::size_t> sizes(n_components, 0);
  for (auto c : comp) ++sizes[c];
  // Largest component; ties resolve to the one appearing first.
  std::uint32_t largest = 0;
  for (std::uint32_t c = 1; c < n_components; ++c)
    if (sizes[c] > sizes[largest]) largest = c;
  if (sizes[largest] < 2) return std::nullopt;

  // BFS from every member over directed edges, restricted to the
  // component. Epoch stamps avoid clearing the distance array per source.
  std::vector<std::uint32_t> stamp(n, UINT32_MAX);
  std::vector<std::uint32_t> dist(n, 0);
  std::vector<std::uint32_t> queue(n);
  unsigned long long total = 0;
  unsigned long long pairs = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] != largest) continue;
    std::size_t head = 0, tail = 0;
    stamp[s] = s;
    dist[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      std::uint32_t v = queue[head++];
      for (const Edge& e : g.out_edges(v)) {
        if (stamp[e.target] != s) {
          stamp[e.target] = s;
          dist[e.target] = dist[v] + 1;
          queue[tail++] = e.target;
        }
      }
    }
    for (std::size_t i = 1; i < tail; ++i) {
      total += dist[queue[i]];
      ++pairs;
    }
  }
  if (pairs == 0) return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(pairs);
}

ScoreMap weighted_degree(const WeightedGraph& g, DegreeDirection direction) {
  ScoreMap s;
  s.metric = "weighted_degree";
  s.params = direction == DegreeDirection::in    ? "direction=in"
             : direction == DegreeDirection::out ? "direction=out"
                                                 : "direction=total";
  s.values.assign(g.node_count(), 0.0);
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    double v = 0.0;
    if (!g.directed()) {
      for (const Edge& e : g.out_edges(i)) v += e.weight;
    } else {
      if (direction != DegreeDirection::in)
        for (const Edge& e : g.out_edges(i)) v += e.weight;
      if (direction != DegreeDirection::out)
        for (const Edge& e : g.in_edges(i)) v += e.weight;
    }
    s.values[i] = v;
  }
  return s;
}

ScoreMap eigenvector_centrality(const WeightedGraph& g, double tol, int max_iter) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "eigenvector_centrality on empty graph");

  const WeightedGraph view = g.directed() ? undirected_view(g) : WeightedGraph(g);
  ScoreMap s;
  s.metric = "eigenvector_centrality";
  s.params = "tol=" + format_double(tol) + ",max_iter=" + std::to_string(max_iter);

  std::vector<double> x(n, 1.0), next(n, 0.0);
  double norm = 1.0;
  s.converged = false;
  int iter = 0;
  while (iter < max_iter) {
    ++iter;
    for (std::uint32_t i = 0; i < n; ++i) {
      double acc = x[i];  // identity shift
      for (const Edge& e : view.out_edges(i)) acc += e.weight * x[e.target];
      next[i] = acc;
    }
    norm = 0.0;
    for (double v : next) norm = std::max(norm, std::fabs(v));
    double delta = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      next[i] /= norm;
      delta = std::max(delta, std::fabs(next[i] - x[i]));
    }
    x.swap(next);
    if (delta < tol) {
      s.converged = true;
      break;
    }
  }
  s.iterations = iter;
  s.spectral_estimate = norm - 1.0;  // undo the identity shift

  // Max-normalize so the top node scores exactly 1.
  double max_v = 0.0;
  for (double v : x) max_v = std::max(max_v, v);
  if (max_v > 0.0)
    for (double& v : x) v /= max_v;
  s.values = std::move(x);
  return s;
}

ScoreMap pagerank(const WeightedGraph& g, double damping, double tol, int max_iter) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "pagerank on empty graph");
  if (!(damping > 0.0 && damping < 1.0))
    throw Error(ErrorCode::InvalidDamping,
                "damping must be in (0, 1), got " + format_double(damping));

  ScoreMap s;
  s.metric = "pagerank";
  s.params = "damping=" + format_double(damping) + ",tol=" + format_double(tol) +
             ",max_iter=" + std::to_string(max_iter);

  std::vector<double> out_strength(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (const Edge& e : g.out_edges(i)) out_strength[i] += e.weight;

  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, inv_n), next(n, 0.0);
  s.converged = false;
  int iter = 0;
  while (iter < max_iter) {
    ++iter;
    double dangling = 0.0;
    for (std::uint32_t i = 0; i < n; ++i)
      if (out_strength[i] == 0.0) dangling += x[i];
    const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (out_strength[i] == 0.0) continue;
      const double share = damping * x[i] / out_strength[i];
      for (const Edge& e : g.out_edges(i)) next[e.target] += share * e.weight;
    }
    double delta = 0.0;
    for (std::uint32_t i = 0; i < n; ++i)
      delta = std::max(delta, std::fabs(next[i] - x[i]));
    x.swap(next);
    if (delta < tol) {
      s.converged = true;
      break;
    }
  }
  s.iterations = iter;

  // Guard against accumulated drift; the contract is sum == 1.
  double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (sum > 0.0)
    for (double& v : x) v /= sum;
  s.values = std::move(x);
  return s;
}

TopologySummary topology_summary(const WeightedGraph& g) {
  if (g.node_count() == 0)
    throw Error(ErrorCode::EmptyGraph, "topology_summary on empty graph");
  TopologySummary t;
  t.n_nodes = g.node_count();
  t.n_edges = g.edge_count();
  t.density = t.n_nodes >= 2 ? density(g) : 0.0;
  t.avg_path_length = average_path_length(g);
  std::size_t n_components = 0;
  auto comp = weak_components(g, &n_components);
  t.n_components = n_components;
  std::vector<std::size_t> sizes(n_components, 0);
  for (auto c : comp) ++sizes[c];
  std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
  t.largest_component_fraction =
      static_cast<double>(largest) / static_cast<double>(t.n_nodes);
  return t;
}

std::vector<std::uint32_t> ranked_nodes(const WeightedGraph& g, const ScoreMap& s) {
  std::vector<std::uint32_t> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (s.values[a] != s.values[b]) return s.values[a] > s.values[b];
    return g.node(a).id < g.node(b).id;
  });
  return order;
}

void write_scores_csv(const WeightedGraph& g, const ScoreMap& s, std::ostream& out) {
  out << "node_id,kind,score\r\n";
  for (std::uint32_t i : ranked_nodes(g, s)) {
    const NodeId& n = g.node(i);
    out << csv_field(n.id) << ',' << to_string(n.kind) << ','
        << format_score(s.values[i]) << "\r\n";
  }
}

std::string topology_summary_json(const TopologySummary& t) {
  nlohmann::json j;
  j["n_nodes"] = t.n_nodes;
  j["n_edges"] = t.n_edges;
  j["density"] = t.density;
  if (t.avg_path_length)
    j["avg_path_length"] = *t.avg_path_length;
  else
    j["avg_path_length"] = nullptr;
  j["n_components"] = t.n_components;
  j["largest_component_fraction"] = t.largest_component_fraction;
  return j.dump(2);
}

}  // namespace brandgraph
