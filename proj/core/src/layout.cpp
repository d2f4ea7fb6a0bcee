#include "brandgraph/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "brandgraph/error.hpp"
#include "brandgraph/rng.hpp"
#include "brandgraph/text.hpp"

namespace brandgraph {

namespace {

constexpr double kSpeedConstant = 0.1;   // FA2 k_s
constexpr double kMaxDisplacement = 10.0;

struct Vec {
  double x = 0.0, y = 0.0;
};

std::vector<double> node_masses(const WeightedGraph& g) {
  std::vector<double> mass(g.node_count());
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    std::size_t deg = g.out_edges(i).size();
    if (g.directed()) deg += g.in_edges(i).size();
    mass[i] = static_cast<double>(deg) + 1.0;
  }
  return mass;
}

void exact_repulsion(const std::vector<std::array<double, 2>>& pos,
                     const std::vector<double>& mass, double k_r,
                     std::vector<Vec>& force) {
  const std::size_t n = pos.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pos[i][0] - pos[j][0];
      const double dy = pos[i][1] - pos[j][1];
      const double d2 = dx * dx + dy * dy;
      if (d2 == 0.0) continue;  // coincident nodes exert no repulsion
      const double f = k_r * mass[i] * mass[j] / d2;
      force[i].x += dx * f;
      force[i].y += dy * f;
      force[j].x -= dx * f;
      force[j].y -= dy * f;
    }
  }
}

/// Uniform-grid approximation: cells within one ring are summed exactly,
/// farther cells act as a point mass at their centroid.
void grid_repulsion(const std::vector<std::array<double, 2>>& pos,
                    const std::vector<double>& mass, double k_r,
                    std::vector<Vec>& force) {
  const std::size_t n = pos.size();
  double min_x = pos[0][0], max_x = pos[0][0];
  double min_y = pos[0][1], max_y = pos[0][1];
  for (const auto& p : pos) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double span_x = std::max(max_x - min_x, 1e-9);
  const double span_y = std::max(max_y - min_y, 1e-9);

  // Balance the 9-cell exact work against the far-cell sum.
  const auto side = static_cast<std::size_t>(
      std::clamp(std::pow(9.0 * static_cast<double>(n), 0.25), 3.0, 64.0));
  auto cell_of = [&](const std::array<double, 2>& p) {
    auto cx = static_cast<std::size_t>((p[0] - min_x) / span_x * static_cast<double>(side));
    auto cy = static_cast<std::size_t>((p[1] - min_y) / span_y * static_cast<double>(side));
    return std::min(cx, side - 1) * side + std::min(cy, side - 1);
  };

  const std::size_t n_cells = side * side;
  std::vector<std::vector<std::uint32_t>> cells(n_cells);
  for (std::uint32_t i = 0; i < n; ++i) cells[cell_of(pos[i])].push_back(i);

  std::vector<double> cell_mass(n_cells, 0.0);
  std::vector<Vec> centroid(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    for (std::uint32_t i : cells[c]) {
      cell_mass[c] += mass[i];
      centroid[c].x += mass[i] * pos[i][0];
      centroid[c].y += mass[i] * pos[i][1];
    }
    if (cell_mass[c] > 0.0) {
      centroid[c].x /= cell_mass[c];
      centroid[c].y /= cell_mass[c];
    }
  }

  for (std::uint32_t i = 0; i < n; ++i) {
    const std::size_t c = cell_of(pos[i]);
    const std::size_t cxi = c / side, cyi = c % side;
    for (std::size_t cx = 0; cx < side; ++cx) {
      for (std::size_t cy = 0; cy < side; ++cy) {
        const std::size_t cell = cx * side + cy;
        const bool near = (cx + 1 >= cxi && cx <= cxi + 1) &&
                          (cy + 1 >= cyi && cy <= cyi + 1);
        if (near) {
          for (std::uint32_t j : cells[cell]) {
            if (j == i) continue;
            const double dx = pos[i][0] - pos[j][0];
            const double dy = pos[i][1] - pos[j][1];
            const double d2 = dx * dx + dy * dy;
            if (d2 == 0.0) continue;
            const double f = k_r * mass[i] * mass[j] / d2;
            force[i].x += dx * f;
            force[i].y += dy * f;
          }
        } else if (cell_mass[cell] > 0.0) {
          const double dx = pos[i][0] - centroid[cell].x;
          const double dy = pos[i][1] - centroid[cell].y;
          const double d2 = dx * dx + dy * dy;
          if (d2 == 0.0) continue;
          const double f = k_r * mass[i] * cell_mass[cell] / d2;
          force[i].x += dx * f;
          force[i].y += dy * f;
        }
      }
    }
  }
}

/// Deterministic palette: golden-angle hue rotation per community id.
std::string community_color(std::uint32_t community) {
  const double hue = std::fmod(static_cast<double>(community) * 137.508, 360.0);
  const double s = 0.62, v = 0.85;
  const double c = v * s;
  const double hp = hue / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, gg = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; gg = x; break;
    case 1: r = x; gg = c; break;
    case 2: gg = c; b = x; break;
    case 3: gg = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<unsigned>(std::lround((r + m) * 255.0)),
                static_cast<unsigned>(std::lround((gg + m) * 255.0)),
                static_cast<unsigned>(std::lround((b + m) * 255.0)));
  return buf;
}

std::string fmt3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

LayoutResult forceatlas2(const WeightedGraph& g, const LayoutParams& params) {
  if (g.node_count() == 0) throw Error(ErrorCode::EmptyGraph, "forceatlas2 on empty graph");
  Rng rng(params.seed);
  std::vector<std::array<double, 2>> init(g.node_count());
  for (auto& p : init) {
    p[0] = rng.next_double() * 200.0 - 100.0;
    p[1] = rng.next_double() * 200.0 - 100.0;
  }
  return forceatlas2(g, params, std::move(init));
}

LayoutResult forceatlas2(const WeightedGraph& g, const LayoutParams& params,
                         std::vector<std::array<double, 2>> initial_positions) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "forceatlas2 on empty graph");
  if (initial_positions.size() != n)
    throw std::invalid_argument("forceatlas2: one initial position per node required");

  const std::vector<double> mass = node_masses(g);
  std::vector<std::array<double, 2>> pos = std::move(initial_positions);
  std::vector<Vec> force(n), prev_force(n);
  double global_speed = 1.0;

  LayoutResult result;
  result.iterations_run = params.iterations;

  for (int iter = 0; iter < params.iterations; ++iter) {
    std::fill(force.begin(), force.end(), Vec{});

    if (params.approximate_repulsion)
      grid_repulsion(pos, mass, params.scaling, force);
    else
      exact_repulsion(pos, mass, params.scaling, force);

    // Attraction along edges, each undirected pair once.
    for (std::uint32_t u = 0; u < n; ++u) {
      for (const Edge& e : g.out_edges(u)) {
        if (!g.directed() && e.target < u) continue;
        const std::uint32_t v = e.target;
        const double dx = pos[v][0] - pos[u][0];
        const double dy = pos[v][1] - pos[u][1];
        double factor = e.weight;
        if (params.linlog) {
          const double d = std::sqrt(dx * dx + dy * dy);
          if (d > 0.0) factor = e.weight * std::log1p(d) / d;
        }
        force[u].x += dx * factor;
        force[u].y += dy * factor;
        force[v].x -= dx * factor;
        force[v].y -= dy * factor;
      }
    }

    if (params.gravity > 0.0) {
      for (std::uint32_t i = 0; i < n; ++i) {
        const double d = std::hypot(pos[i][0], pos[i][1]);
        if (d == 0.0) continue;
        const double f = params.gravity * mass[i] / d;
        force[i].x -= pos[i][0] * f;
        force[i].y -= pos[i][1] * f;
      }
    }

    // Adaptive speed from swinging vs traction.
    double total_swinging = 0.0, total_traction = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double sx = force[i].x - prev_force[i].x;
      const double sy = force[i].y - prev_force[i].y;
      const double tx = force[i].x + prev_force[i].x;
      const double ty = force[i].y + prev_force[i].y;
      total_swinging += mass[i] * std::hypot(sx, sy);
      total_traction += 0.5 * mass[i] * std::hypot(tx, ty);
    }
    if (total_swinging > 0.0) {
      const double target = params.jitter_tolerance * total_traction / total_swinging;
      global_speed = std::min(target, 1.5 * global_speed);
    }

    double max_disp = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double fmag = std::hypot(force[i].x, force[i].y);
      if (fmag == 0.0) continue;
      const double swinging = std::hypot(force[i].x - prev_force[i].x,
                                         force[i].y - prev_force[i].y);
      double speed = kSpeedConstant * global_speed /
                     (1.0 + global_speed * std::sqrt(swinging));
      speed = std::min(speed, kMaxDisplacement / fmag);
      pos[i][0] += force[i].x * speed;
      pos[i][1] += force[i].y * speed;
      max_disp = std::max(max_disp, fmag * speed);
    }
    prev_force = force;
    result.final_max_displacement = max_disp;
  }

  result.positions = std::move(pos);
  return result;
}

std::string svg_document(const WeightedGraph& g, const LayoutResult& layout,
                         const CommunityPartition* partition) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  if (layout.positions.size() != n)
    throw std::invalid_argument("svg_document: layout does not cover the graph");
  if (partition && partition->assignment.size() != n)
    throw Error(ErrorCode::PartitionMismatch, "partition does not cover the graph");

  double min_x = layout.positions[0][0], max_x = min_x;
  double min_y = layout.positions[0][1], max_y = min_y;
  for (const auto& p : layout.positions) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  double width = max_x - min_x, height = max_y - min_y;
  if (width <= 0.0) width = 1.0;
  if (height <= 0.0) height = 1.0;
  const double margin_x = width * 0.05, margin_y = height * 0.05;

  const ScoreMap degrees = weighted_degree(g, DegreeDirection::total);
  double min_deg = degrees.values.empty() ? 0.0 : degrees.values[0];
  double max_deg = min_deg;
  for (double d : degrees.values) {
    min_deg = std::min(min_deg, d);
    max_deg = std::max(max_deg, d);
  }
  auto radius = [&](std::uint32_t i) {
    if (max_deg <= min_deg) return 2.0;
    return 2.0 + 18.0 * (degrees.values[i] - min_deg) / (max_deg - min_deg);
  };

  double max_w = 0.0;
  for (std::uint32_t i = 0; i < n; ++i)
    for (const Edge& e : g.out_edges(i)) max_w = std::max(max_w, e.weight);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
  out += fmt3(min_x - margin_x) + " " + fmt3(min_y - margin_y) + " " +
         fmt3(width + 2.0 * margin_x) + " " + fmt3(height + 2.0 * margin_y);
  out += "\">\n";

  for (std::uint32_t i = 0; i < n; ++i) {
    for (const Edge& e : g.out_edges(i)) {
      if (!g.directed() && e.target < i) continue;
      const double opacity = max_w > 0.0 ? e.weight / max_w : 1.0;
      out += "  <line x1=\"" + fmt3(layout.positions[i][0]) + "\" y1=\"" +
             fmt3(layout.positions[i][1]) + "\" x2=\"" +
             fmt3(layout.positions[e.target][0]) + "\" y2=\"" +
             fmt3(layout.positions[e.target][1]) +
             "\" stroke=\"#888888\" stroke-opacity=\"" + fmt3(opacity) +
             "\" stroke-width=\"1\"/>\n";
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::string fill =
        partition ? community_color(partition->assignment[i]) : "#4878a8";
    out += "  <circle cx=\"" + fmt3(layout.positions[i][0]) + "\" cy=\"" +
           fmt3(layout.positions[i][1]) + "\" r=\"" + fmt3(radius(i)) +
           "\" fill=\"" + fill + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

void render_svg(const WeightedGraph& g, const LayoutResult& layout,
                const CommunityPartition* partition,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << svg_document(g, layout, partition);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_positions_csv(const WeightedGraph& g, const LayoutResult& layout,
                         std::ostream& out) {
  out << "node_id,x,y\r\n";
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    out << csv_field(g.node(i).id) << ',' << fmt3(layout.positions[i][0]) << ','
        << fmt3(layout.positions[i][1]) << "\r\n";
  }
}

}  // namespace brandgraph
