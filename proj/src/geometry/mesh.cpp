#include "torsionlab/geometry/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "torsionlab/errors.hpp"

namespace torsionlab::geometry {

namespace {

using std::numbers::pi;

/// Index on the doubled lattice: even coordinates are vertices, odd ones midnodes.
struct LIdx {
  int i = 0;
  int j = 0;
  auto operator<=>(const LIdx &) const = default;
};

LIdx mid(LIdx a, LIdx b) { return {(a.i + b.i) / 2, (a.j + b.j) / 2}; }

using LElement = std::array<LIdx, 6>;

struct Lattice {
  std::function<Vec2(LIdx)> point;
  std::function<LIdx(LIdx)> canonical = [](LIdx l) { return l; };
  /// Side id for the midnode of a boundary edge.
  std::function<int(LIdx)> side_of;
  std::vector<bool> side_closed;
};

/// Quad cells (ci, cj) of an ni x nj vertex grid, each split in two. `slash(ci, cj)`
/// picks the diagonal from the lower-left to the upper-right corner. Cells whose
/// corners collapse under `canonical` become single triangles or vanish.
std::vector<LElement> quad_elements(int ni, int nj, const std::function<bool(int, int)> &slash,
                                    const std::function<LIdx(LIdx)> &canonical) {
  std::vector<LElement> out;
  out.reserve(2 * static_cast<std::size_t>(ni) * nj);
  for (int ci = 0; ci < ni; ++ci) {
    for (int cj = 0; cj < nj; ++cj) {
      const std::array<LIdx, 4> c{LIdx{2 * ci, 2 * cj}, LIdx{2 * ci + 2, 2 * cj},
                                  LIdx{2 * ci + 2, 2 * cj + 2}, LIdx{2 * ci, 2 * cj + 2}};
      std::array<LIdx, 4> m{};
      for (int k = 0; k < 4; ++k) m[k] = mid(c[k], c[(k + 1) % 4]);
      const LIdx centre{2 * ci + 1, 2 * cj + 1};

      std::vector<std::pair<LIdx, LIdx>> poly;  // corner, midnode of its outgoing side
      for (int k = 0; k < 4; ++k)
        if (canonical(c[k]) != canonical(c[(k + 1) % 4])) poly.emplace_back(c[k], m[k]);

      if (poly.size() == 3) {
        out.push_back({poly[0].first, poly[1].first, poly[2].first, poly[0].second,
                       poly[1].second, poly[2].second});
      } else if (poly.size() == 4) {
        if (slash(ci, cj)) {
          out.push_back({c[0], c[1], c[2], m[0], m[1], centre});
          out.push_back({c[0], c[2], c[3], centre, m[2], m[3]});
        } else {
          out.push_back({c[0], c[1], c[3], m[0], centre, m[3]});
          out.push_back({c[1], c[2], c[3], m[1], m[2], centre});
        }
      }
    }
  }
  return out;
}

/// Diagonals mirrored across both centre lines of the grid.
std::function<bool(int, int)> mirrored_slash(int ni, int nj) {
  return [ni, nj](int ci, int cj) { return (2 * ci < ni) == (2 * cj < nj); };
}

Element flipped(const Element &e) { return {e[0], e[2], e[1], e[5], e[4], e[3]}; }
LElement flipped(const LElement &e) { return {e[0], e[2], e[1], e[5], e[4], e[3]}; }

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32) | lo;
}

Mesh finish(const DomainSpec &spec, double h, const Lattice &lat, std::vector<LElement> lelems) {
  Mesh mesh;
  mesh.spec = spec;
  mesh.h = h;

  std::map<LIdx, int> ids;
  auto node_of = [&](LIdx l) {
    const LIdx c = lat.canonical(l);
    auto [it, inserted] = ids.try_emplace(c, static_cast<int>(mesh.nodes.size()));
    if (inserted) mesh.nodes.push_back(lat.point(c));
    return it->second;
  };

  mesh.elements.reserve(lelems.size());
  for (auto &le : lelems) {
    Element e;
    for (int k = 0; k < 6; ++k) e[k] = node_of(le[k]);
    const Vec2 &p0 = mesh.nodes[e[0]], &p1 = mesh.nodes[e[1]], &p2 = mesh.nodes[e[2]];
    const double signed_area = cross(p1 - p0, p2 - p0);
    if (signed_area == 0.0) throw MeshError("degenerate element in lattice mesh");
    if (signed_area < 0.0) {
      e = flipped(e);
      le = flipped(le);
    }
    mesh.elements.push_back(e);
  }

  const std::size_t nn = mesh.nodes.size();
  mesh.on_boundary.assign(nn, false);
  mesh.is_vertex.assign(nn, false);
  for (const auto &e : mesh.elements)
    for (int k = 0; k < 3; ++k) mesh.is_vertex[e[k]] = true;

  std::unordered_map<std::uint64_t, int> edge_count;
  for (const auto &e : mesh.elements)
    for (int k = 0; k < 3; ++k) ++edge_count[edge_key(e[k], e[(k + 1) % 3])];

  const int n_sides = static_cast<int>(lat.side_closed.size());
  std::vector<std::vector<BoundaryEdge>> per_side(n_sides);
  for (std::size_t el = 0; el < mesh.elements.size(); ++el) {
    const auto &e = mesh.elements[el];
    for (int k = 0; k < 3; ++k) {
      const int c = edge_count[edge_key(e[k], e[(k + 1) % 3])];
      if (c > 2) throw MeshError("non-conforming mesh: edge shared by more than two elements");
      if (c != 1) continue;
      const int side = lat.side_of(lelems[el][3 + k]);
      if (side < 0 || side >= n_sides) throw MeshError("boundary edge without a side tag");
      per_side[side].push_back({static_cast<int>(el), k, side, 0.0, 0.0});
      mesh.on_boundary[e[k]] = mesh.on_boundary[e[(k + 1) % 3]] = mesh.on_boundary[e[3 + k]] = true;
    }
  }

  mesh.sides.resize(n_sides);
  for (int side = 0; side < n_sides; ++side) {
    auto &edges = per_side[side];
    if (edges.empty()) throw MeshError("boundary side without edges");
    std::unordered_map<int, int> by_start;
    std::unordered_map<int, int> end_count;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto nodes = mesh.edge_nodes(edges[k]);
      by_start[nodes[0]] = static_cast<int>(k);
      ++end_count[nodes[2]];
    }
    int first = -1;
    if (lat.side_closed[side]) {
      // Start closed loops at the rightmost vertex, nearest the x-axis on ties.
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const Vec2 p = mesh.nodes[mesh.edge_nodes(edges[k])[0]];
        if (first < 0) {
          first = static_cast<int>(k);
          continue;
        }
        const Vec2 q = mesh.nodes[mesh.edge_nodes(edges[first])[0]];
        if (p.x > q.x + 1e-12 || (std::abs(p.x - q.x) <= 1e-12 && std::abs(p.y) < std::abs(q.y)))
          first = static_cast<int>(k);
      }
    } else {
      for (std::size_t k = 0; k < edges.size(); ++k)
        if (!end_count.contains(mesh.edge_nodes(edges[k])[0])) first = static_cast<int>(k);
    }
    if (first < 0) throw MeshError("boundary side has no chain start");

    std::vector<BoundaryEdge> chain;
    std::vector<bool> used(edges.size(), false);
    double s = 0.0;
    for (int k = first; k >= 0 && !used[k];) {
      used[k] = true;
      auto e = edges[k];
      const auto nodes = mesh.edge_nodes(e);
      e.s0 = s;
      s += edge_length(mesh.nodes[nodes[0]], mesh.nodes[nodes[1]], mesh.nodes[nodes[2]]);
      e.s1 = s;
      chain.push_back(e);
      auto it = by_start.find(nodes[2]);
      k = it == by_start.end() ? -1 : it->second;
    }
    if (chain.size() != edges.size()) throw MeshError("boundary side is not a single chain");

    auto &bs = mesh.sides[side];
    bs.closed = lat.side_closed[side];
    bs.length = s;
    for (auto &e : chain) {
      bs.edges.push_back(static_cast<int>(mesh.boundary_edges.size()));
      mesh.boundary_edges.push_back(e);
    }
  }
  return mesh;
}

int even_at_least(double v, int floor_value) {
  int n = std::max(floor_value, static_cast<int>(std::ceil(v - 1e-9)));
  return n + (n % 2);
}

Mesh narrow_mesh(const NarrowSpec &s, double h, const MeshOptions &opt) {
  double max_gap = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double x = s.a + (s.b - s.a) * k / 1000.0;
    max_gap = std::max(max_gap, s.f2(x) - s.f1(x));
  }
  const double fibers = s.eps * max_gap / h;
  if (fibers < 4.0)
    throw UnderResolvedError("mesh size " + std::to_string(h) +
                             " is too coarse for the narrow gap (fewer than 4 fibers)");
  const int ny = even_at_least(fibers, 8);
  const int nx = even_at_least((s.b - s.a) / (h * opt.x_stretch), 4);

  Lattice lat;
  lat.point = [&s, nx, ny](LIdx l) {
    const double x = s.a + (s.b - s.a) * l.i / (2.0 * nx);
    const double eta = l.j / (2.0 * ny);
    const double lo = s.f1(x), hi = s.f2(x);
    return Vec2{x, s.eps * (lo + (hi - lo) * eta)};
  };
  lat.canonical = [nx](LIdx l) {
    if (l.i == 0 || l.i == 2 * nx) return LIdx{l.i, 0};
    return l;
  };
  lat.side_of = [ny](LIdx l) { return l.j == 0 ? 0 : (l.j == 2 * ny ? 1 : -1); };
  lat.side_closed = {false, false};
  return finish(s, h, lat, quad_elements(nx, ny, mirrored_slash(nx, ny), lat.canonical));
}

Mesh rectangle_mesh(const RectangleSpec &r, double h, const MeshOptions &opt) {
  const int ny = even_at_least(2.0 * r.eps / h, 4);
  const int nx = even_at_least(1.0 / (h * opt.x_stretch), 4);
  Lattice lat;
  lat.point = [&r, nx, ny](LIdx l) {
    return Vec2{l.i / (2.0 * nx), -r.eps + 2.0 * r.eps * l.j / (2.0 * ny)};
  };
  lat.side_of = [nx, ny](LIdx l) {
    if (l.j == 0) return 0;
    if (l.i == 2 * nx) return 1;
    if (l.j == 2 * ny) return 2;
    if (l.i == 0) return 3;
    return -1;
  };
  lat.side_closed = {false, false, false, false};
  return finish(r, h, lat, quad_elements(nx, ny, mirrored_slash(nx, ny), lat.canonical));
}

/// Polar-type lattice: i runs radially (ni cells), j around (nt cells, periodic).
std::vector<LElement> polar_elements(int ni, int nt, const std::function<LIdx(LIdx)> &canonical) {
  return quad_elements(ni, nt, [nt](int, int cj) { return ((4 * cj) / nt) % 2 == 0; }, canonical);
}

int angular_cells(double radius, double h) {
  return 4 * std::max(2, static_cast<int>(std::ceil(2.0 * pi * radius / (4.0 * h) - 1e-9)));
}

Mesh ellipse_mesh(const EllipseSpec &e, double h) {
  const int nt = angular_cells(std::max(e.a_semi, e.b_semi), h);
  const int nr = std::max(8, static_cast<int>(std::ceil(std::max(e.a_semi, e.b_semi) / h - 1e-9)));
  Lattice lat;
  lat.point = [&e, nr, nt](LIdx l) {
    const double r = l.i / (2.0 * nr);
    const double th = 2.0 * pi * l.j / (2.0 * nt);
    return Vec2{e.a_semi * r * std::cos(th), e.b_semi * r * std::sin(th)};
  };
  lat.canonical = [nt](LIdx l) {
    if (l.i == 0) return LIdx{0, 0};
    return LIdx{l.i, l.j % (2 * nt)};
  };
  lat.side_of = [nr](LIdx l) { return l.i == 2 * nr ? 0 : -1; };
  lat.side_closed = {true};
  return finish(e, h, lat, polar_elements(nr, nt, lat.canonical));
}

Mesh annulus_mesh(const AnnulusSpec &a, double h) {
  const int nt = angular_cells(a.rho1, h);
  const int nr = std::max(4, static_cast<int>(std::ceil((a.rho1 - a.rho2) / h - 1e-9)));
  Lattice lat;
  lat.point = [&a, nr, nt](LIdx l) {
    const double r = l.i / (2.0 * nr);
    const double th = 2.0 * pi * l.j / (2.0 * nt);
    const Vec2 dir{std::cos(th), std::sin(th)};
    const Vec2 inner = Vec2{a.offset, 0.0} + a.rho2 * dir;
    return lerp(inner, a.rho1 * dir, r);
  };
  lat.canonical = [nt](LIdx l) { return LIdx{l.i, l.j % (2 * nt)}; };
  lat.side_of = [nr](LIdx l) { return l.i == 2 * nr ? 0 : (l.i == 0 ? 1 : -1); };
  lat.side_closed = {true, true};
  return finish(a, h, lat, polar_elements(nr, nt, lat.canonical));
}

}  // namespace

std::array<int, 3> Mesh::edge_nodes(const BoundaryEdge &e) const {
  const auto &el = elements[e.element];
  return {el[e.local_edge], el[3 + e.local_edge], el[(e.local_edge + 1) % 3]};
}

Vec2 Mesh::edge_point(const BoundaryEdge &e, double xi) const {
  const auto n = edge_nodes(e);
  const double w0 = (1.0 - xi) * (1.0 - 2.0 * xi), wm = 4.0 * xi * (1.0 - xi), w1 = xi * (2.0 * xi - 1.0);
  return w0 * nodes[n[0]] + wm * nodes[n[1]] + w1 * nodes[n[2]];
}

double edge_length(const Vec2 &p0, const Vec2 &pm, const Vec2 &p1) {
  // 5-point Gauss-Legendre on [0, 1].
  static constexpr double xg[] = {0.04691007703066800, 0.23076534494715845, 0.5,
                                  0.76923465505284155, 0.95308992296933200};
  static constexpr double wg[] = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                                  0.23931433524968324, 0.11846344252809454};
  double len = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double xi = xg[k];
    const Vec2 d = (4.0 * xi - 3.0) * p0 + (4.0 - 8.0 * xi) * pm + (4.0 * xi - 1.0) * p1;
    len += wg[k] * norm(d);
  }
  return len;
}

SideProjection project_to_side(const Mesh &mesh, int side, const Vec2 &q) {
  SideProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int idx : mesh.sides.at(side).edges) {
    const auto &e = mesh.boundary_edges[idx];
    const auto n = mesh.edge_nodes(e);
    const Vec2 p0 = mesh.nodes[n[0]], pm = mesh.nodes[n[1]], p1 = mesh.nodes[n[2]];
    auto tangent = [&](double xi) {
      return (4.0 * xi - 3.0) * p0 + (4.0 - 8.0 * xi) * pm + (4.0 * xi - 1.0) * p1;
    };
    // Coarse scan, then Newton on the squared distance.
    double xi = 0.0, bd = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 8; ++k) {
      const double d = distance(mesh.edge_point(e, k / 8.0), q);
      if (d < bd) bd = d, xi = k / 8.0;
    }
    const Vec2 dd = 4.0 * p0 - 8.0 * pm + 4.0 * p1;
    for (int it = 0; it < 20; ++it) {
      const Vec2 r = mesh.edge_point(e, xi) - q;
      const Vec2 t = tangent(xi);
      const double hess = dot(t, t) + dot(r, dd);
      if (!(hess > 0.0)) break;
      const double next = std::clamp(xi - dot(r, t) / hess, 0.0, 1.0);
      const bool done = std::abs(next - xi) < 1e-15;
      xi = next;
      if (done) break;
    }
    const Vec2 pt = mesh.edge_point(e, xi);
    const double d = distance(pt, q);
    if (d < best.distance) {
      best.distance = d;
      best.s = e.s0 + xi * (e.s1 - e.s0);
      best.point = pt;
      best.tangent = normalized(tangent(xi));
    }
  }
  return best;
}

int triangle_subdivisions(const TriangleSpec &spec, double h) {
  const double size = std::sqrt(std::abs(cross(spec.B - spec.A, spec.C - spec.A)));
  int n = 1;
  while (size / n > h * (1.0 + 1e-12)) n *= 2;
  return n;
}

Mesh triangle_mesh(const TriangleSpec &spec, int n) {
  validate(spec);
  if (n < 1) throw MeshError("triangle mesh needs at least one subdivision");
  Lattice lat;
  lat.point = [&spec, n](LIdx l) {
    return spec.A + (l.i / (2.0 * n)) * (spec.B - spec.A) + (l.j / (2.0 * n)) * (spec.C - spec.A);
  };
  lat.side_of = [n](LIdx l) {
    if (l.j == 0) return 0;
    if (l.i + l.j == 2 * n) return 1;
    if (l.i == 0) return 2;
    return -1;
  };
  lat.side_closed = {false, false, false};
  std::vector<LElement> elems;
  elems.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; i + j < n; ++j) {
      const LIdx a{2 * i, 2 * j}, b{2 * i + 2, 2 * j}, c{2 * i, 2 * j + 2};
      elems.push_back({a, b, c, mid(a, b), mid(b, c), mid(c, a)});
      if (i + j < n - 1) {
        const LIdx d{2 * i + 2, 2 * j + 2};
        elems.push_back({b, d, c, mid(b, d), mid(d, c), mid(c, b)});
      }
    }
  }
  const double size = std::sqrt(std::abs(cross(spec.B - spec.A, spec.C - spec.A)));
  return finish(spec, size / n, lat, std::move(elems));
}

Mesh build_mesh(const DomainSpec &spec, double h, const MeshOptions &options) {
  validate(spec);
  if (!(h > 0.0) || !(h < diameter(spec)))
    throw MeshError("mesh size must satisfy 0 < h < domain diameter");
  if (!(options.x_stretch > 0.0)) throw MeshError("x_stretch must be positive");
  switch (spec.index()) {
    case 0: {
      const auto &t = std::get<TriangleSpec>(spec);
      return triangle_mesh(t, triangle_subdivisions(t, h));
    }
    case 1: return narrow_mesh(std::get<NarrowSpec>(spec), h, options);
    case 2: return rectangle_mesh(std::get<RectangleSpec>(spec), h, options);
    case 3: return ellipse_mesh(std::get<EllipseSpec>(spec), h);
    default: return annulus_mesh(std::get<AnnulusSpec>(spec), h);
  }
}

void write_mesh(std::ostream &os, const Mesh &mesh) {
  const auto old_precision = os.precision(17);
  os << mesh.nodes.size() << ' ' << mesh.elements.size() << ' ' << mesh.boundary_edges.size() << '\n';
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
    os << i << ' ' << mesh.nodes[i].x << ' ' << mesh.nodes[i].y << '\n';
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    os << i;
    for (int n : mesh.elements[i]) os << ' ' << n;
    os << '\n';
  }
  for (const auto &e : mesh.boundary_edges)
    os << e.element << ' ' << e.local_edge << ' ' << e.side << ' ' << e.s0 << ' ' << e.s1 << '\n';
  os.precision(old_precision);
}

}  // namespace torsionlab::geometry
