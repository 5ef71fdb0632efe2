#include "torsionlab/analysis/nodal_line.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include <Eigen/Dense>

#include "torsionlab/errors.hpp"
#include "torsionlab/fem/flux.hpp"
#include "torsionlab/fem/gradient.hpp"

namespace torsionlab::analysis {

namespace {

std::uint64_t key_of(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32) | lo;
}

std::vector<Vec2> domain_corners(const geometry::DomainSpec &spec) {
  if (const auto *t = std::get_if<geometry::TriangleSpec>(&spec)) return {t->A, t->B, t->C};
  if (const auto *r = std::get_if<geometry::RectangleSpec>(&spec))
    return {{0.0, -r->eps}, {1.0, -r->eps}, {1.0, r->eps}, {0.0, r->eps}};
  return {};
}

/// The unique straight side parallel to `dir`, or -1.
int parallel_side(const geometry::Mesh &mesh, const Vec2 &dir) {
  const auto *t = std::get_if<geometry::TriangleSpec>(&mesh.spec);
  if (!t) return -1;
  const Vec2 v[3] = {t->A, t->B, t->C};
  int found = -1;
  for (int k = 0; k < 3; ++k) {
    const Vec2 e = normalized(v[(k + 1) % 3] - v[k]);
    if (std::abs(cross(e, dir)) < 1e-9) {
      if (found >= 0) return -1;
      found = k;
    }
  }
  return found;
}

PathEnd classify(const geometry::Mesh &mesh, const std::vector<Vec2> &corners, const Vec2 &p) {
  PathEnd end;
  end.point = p;
  for (std::size_t k = 0; k < corners.size(); ++k) {
    if (distance(p, corners[k]) < 3.0 * mesh.h) {
      end.kind = PathEnd::Kind::vertex;
      end.vertex = static_cast<int>(k);
      return end;
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t side = 0; side < mesh.sides.size(); ++side) {
    const auto pr = geometry::project_to_side(mesh, static_cast<int>(side), p);
    if (pr.distance < best) {
      best = pr.distance;
      end.kind = PathEnd::Kind::side;
      end.side = static_cast<int>(side);
      end.s = pr.s;
    }
  }
  return end;
}

}  // namespace

std::vector<NodalPath> trace_nodal_line(const fem::TorsionSolution &solution, const Vec2 &direction) {
  const auto &m = *solution.mesh;
  const Vec2 dir = normalized(direction);
  const auto grads = fem::vertex_gradients(solution);

  std::vector<double> q(m.nodes.size(), 0.0);
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (m.is_vertex[i]) q[i] = dot(dir, grads[i]);

  if (const int ps = parallel_side(m, dir); ps >= 0) {
    // The derivative vanishes identically on that side; divide by the distance to it,
    // and use its limit, (dir . t) d(dudn)/ds, on the side itself.
    const auto &chain = m.sides[ps].edges;
    const Vec2 p0 = m.nodes[m.edge_nodes(m.boundary_edges[chain.front()])[0]];
    const Vec2 p1 = m.nodes[m.edge_nodes(m.boundary_edges[chain.back()])[2]];
    const Vec2 t = normalized(p1 - p0);
    const Vec2 inward = perp(t);
    const double sign = dot(dir, t);
    const auto flux = fem::boundary_flux(solution);
    const double len = m.sides[ps].length;
    std::unordered_map<int, double> s_of;
    for (int idx : chain) {
      const auto &e = m.boundary_edges[idx];
      const auto ids = m.edge_nodes(e);
      s_of[ids[0]] = e.s0;
      s_of[ids[2]] = e.s1;
    }
    const double scale = len;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
      if (!m.is_vertex[i]) continue;
      const double dist = dot(m.nodes[i] - p0, inward);
      auto it = s_of.find(static_cast<int>(i));
      if (it != s_of.end()) {
        const double s = it->second, ds = 0.25 * m.h;
        const double a = std::max(0.0, s - ds), b = std::min(len, s + ds);
        q[i] = sign * (flux.at_s(ps, b) - flux.at_s(ps, a)) / (b - a);
      } else if (dist > 1e-12 * scale) {
        q[i] /= dist;
      }
    }
  }

  // One segment per element whose vertex values change sign.
  std::unordered_map<std::uint64_t, Vec2> crossing;
  std::unordered_map<std::uint64_t, std::vector<int>> segments_at;
  struct Segment {
    std::uint64_t a, b;
    int element;
  };
  std::vector<Segment> segments;
  for (std::size_t el = 0; el < m.elements.size(); ++el) {
    const auto &e = m.elements[el];
    std::uint64_t keys[2];
    int found = 0;
    for (int k = 0; k < 3 && found < 2; ++k) {
      const int i = e[k], j = e[(k + 1) % 3];
      const bool pi = q[i] >= 0.0, pj = q[j] >= 0.0;
      if (pi == pj) continue;
      const std::uint64_t key = key_of(i, j);
      if (!crossing.contains(key)) {
        const double t = q[i] / (q[i] - q[j]);
        crossing[key] = lerp(m.nodes[i], m.nodes[j], t);
      }
      keys[found++] = key;
    }
    if (found != 2) continue;
    segments_at[keys[0]].push_back(static_cast<int>(segments.size()));
    segments_at[keys[1]].push_back(static_cast<int>(segments.size()));
    segments.push_back({keys[0], keys[1], static_cast<int>(el)});
  }

  const auto corners = domain_corners(m.spec);
  std::vector<bool> used(segments.size(), false);
  std::vector<NodalPath> paths;

  auto walk = [&](std::uint64_t start_key, int first_segment) {
    NodalPath path;
    std::uint64_t key = start_key;
    int seg = first_segment;
    path.points.push_back(crossing[key]);
    while (seg >= 0 && !used[seg]) {
      used[seg] = true;
      const auto &sg = segments[seg];
      key = sg.a == key ? sg.b : sg.a;
      path.points.push_back(crossing[key]);
      path.elements.push_back(sg.element);
      int next = -1;
      for (int cand : segments_at[key])
        if (!used[cand]) next = cand;
      seg = next;
    }
    return std::make_pair(path, key);
  };

  // Open paths first, in a deterministic order of their start edges.
  std::vector<std::uint64_t> ends;
  for (const auto &[key, segs] : segments_at)
    if (segs.size() == 1) ends.push_back(key);
  std::ranges::sort(ends);
  for (auto key : ends) {
    const int seg = segments_at[key].front();
    if (used[seg]) continue;
    auto [path, last] = walk(key, seg);
    path.start = classify(m, corners, path.points.front());
    path.end = classify(m, corners, path.points.back());
    // Prefer paths that start on a side and end at a corner.
    if (path.start.kind == PathEnd::Kind::vertex && path.end.kind != PathEnd::Kind::vertex) {
      std::ranges::reverse(path.points);
      std::ranges::reverse(path.elements);
      std::swap(path.start, path.end);
    }
    paths.push_back(std::move(path));
  }
  for (std::size_t seg = 0; seg < segments.size(); ++seg) {
    if (used[seg]) continue;
    auto [path, last] = walk(segments[seg].a, static_cast<int>(seg));
    path.closed = true;
    path.start.point = path.points.front();
    path.end.point = path.points.back();
    paths.push_back(std::move(path));
  }
  return paths;
}

double nodal_tangent_angle_at_boundary(const NodalPath &path, const geometry::Mesh &mesh, int side) {
  if (path.points.size() < 5) throw AnalysisError("nodal path shorter than 5 points");
  std::vector<Vec2> pts;
  Vec2 end_point;
  if (path.start.kind == PathEnd::Kind::side && path.start.side == side) {
    pts.assign(path.points.begin(), path.points.begin() + 5);
    end_point = path.points.front();
  } else if (path.end.kind == PathEnd::Kind::side && path.end.side == side) {
    pts.assign(path.points.end() - 5, path.points.end());
    end_point = path.points.back();
  } else {
    throw AnalysisError("nodal path does not end on side " + std::to_string(side));
  }
  Vec2 mean;
  for (const auto &p : pts) mean += p / 5.0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto &p : pts) {
    const Eigen::Vector2d d(p.x - mean.x, p.y - mean.y);
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  const Eigen::Vector2d v = es.eigenvectors().col(1);
  const Vec2 tangent{v[0], v[1]};
  const auto pr = geometry::project_to_side(mesh, side, end_point);
  const Vec2 normal = perp(pr.tangent);
  const double c = std::clamp(std::abs(dot(normalized(tangent), normal)), 0.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

double max_deviation_from_line(const NodalPath &path, const Vec2 &p, const Vec2 &q) {
  const Vec2 d = normalized(q - p);
  double dev = 0.0;
  for (const auto &x : path.points) dev = std::max(dev, std::abs(cross(d, x - p)));
  return dev;
}

void write_paths_csv(std::ostream &os, const std::vector<NodalPath> &paths) {
  const auto prec = os.precision(17);
  os << "path_id,k,x,y\n";
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t k = 0; k < paths[i].points.size(); ++k)
      os << i << ',' << k << ',' << paths[i].points[k].x << ',' << paths[i].points[k].y << '\n';
  os.precision(prec);
}

}  // namespace torsionlab::analysis
