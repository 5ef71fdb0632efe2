#include "torsionlab/fem/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "torsionlab/errors.hpp"
#include "torsionlab/fem/element.hpp"

namespace torsionlab::fem {

namespace {

// 5-point Gauss-Legendre on [0, 1].
constexpr double kXg[] = {0.04691007703066800, 0.23076534494715845, 0.5, 0.76923465505284155,
                          0.95308992296933200};
constexpr double kWg[] = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                          0.23931433524968324, 0.11846344252809454};

Vec2 edge_tangent(const std::array<Vec2, 3> &p, double xi) {
  return (4.0 * xi - 3.0) * p[0] + (4.0 - 8.0 * xi) * p[1] + (4.0 * xi - 1.0) * p[2];
}

std::array<Vec2, 3> edge_points(const geometry::Mesh &m, const geometry::BoundaryEdge &e) {
  const auto n = m.edge_nodes(e);
  return {m.nodes[n[0]], m.nodes[n[1]], m.nodes[n[2]]};
}

}  // namespace

BoundaryFlux boundary_flux(const TorsionSolution &solution) {
  const auto &m = *solution.mesh;
  const int n = static_cast<int>(m.nodes.size());
  std::vector<int> bindex(n, -1);
  std::vector<int> bnodes;
  for (int i = 0; i < n; ++i)
    if (m.on_boundary[i]) {
      bindex[i] = static_cast<int>(bnodes.size());
      bnodes.push_back(i);
    }
  const int nb = static_cast<int>(bnodes.size());

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(m.boundary_edges.size() * 9);
  for (const auto &e : m.boundary_edges) {
    const auto p = edge_points(m, e);
    const auto ids = m.edge_nodes(e);
    double me[3][3] = {};
    for (int g = 0; g < 5; ++g) {
      const auto w = edge_shape(kXg[g]);
      const double jac = norm(edge_tangent(p, kXg[g]));
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) me[a][b] += kWg[g] * jac * w[a] * w[b];
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) trip.emplace_back(bindex[ids[a]], bindex[ids[b]], me[a][b]);
  }
  Eigen::SparseMatrix<double> mass(nb, nb);
  mass.setFromTriplets(trip.begin(), trip.end());

  Eigen::VectorXd r(nb);
  for (int k = 0; k < nb; ++k) r[k] = solution.node_residual[bnodes[k]];

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(mass);
  if (ldlt.info() != Eigen::Success) throw AssemblyError("singular boundary mass matrix");
  const Eigen::VectorXd g = ldlt.solve(r);

  BoundaryFlux flux;
  flux.mesh = solution.mesh;
  flux.dudn.assign(n, 0.0);
  // The residual yields the outward derivative; report the inward one.
  for (int k = 0; k < nb; ++k) flux.dudn[bnodes[k]] = -g[k];

  static const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  for (const auto &side : m.sides) {
    const int ne = static_cast<int>(side.edges.size());
    std::vector<double> gs, gv;  // Gauss-point arc lengths and values, chain order
    gs.reserve(2 * ne);
    gv.reserve(2 * ne);
    for (int idx : side.edges) {
      const auto &e = m.boundary_edges[idx];
      const auto ids = m.edge_nodes(e);
      for (double xi : gp) {
        const auto w = edge_shape(xi);
        gs.push_back(e.s0 + xi * (e.s1 - e.s0));
        gv.push_back(w[0] * flux.dudn[ids[0]] + w[1] * flux.dudn[ids[1]] + w[2] * flux.dudn[ids[2]]);
      }
    }
    auto gauss = [&](int j, double &s_out) {
      // Wrap around closed sides, shifting arc length to stay monotone.
      const int n = 2 * ne;
      const int w = ((j % n) + n) % n;
      s_out = gs[w] + std::floor(static_cast<double>(j) / n) * side.length;
      return gv[w];
    };
    const int nodes = 2 * ne + (side.closed ? 0 : 1);
    std::vector<double> values(nodes);
    for (int k = 0; k < nodes; ++k) {
      const int edge = k / 2;
      const double s0 = k / 2 < ne ? m.boundary_edges[side.edges[edge]].s0 : side.length;
      const double s_node =
          (k % 2 == 0) ? s0 : 0.5 * (s0 + m.boundary_edges[side.edges[edge]].s1);
      // Gauss points of two edges on each side of a vertex, of the edge and its
      // neighbours for a midnode.
      int lo = (k % 2 == 0) ? 2 * (edge - 2) : 2 * (edge - 1);
      int count = (k % 2 == 0) ? 8 : 6;
      if (!side.closed) {
        count = std::min(count, 2 * ne);
        lo = std::clamp(lo, 0, 2 * ne - count);
      }
      Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
      Eigen::Vector3d atb = Eigen::Vector3d::Zero();
      for (int j = lo; j < lo + count; ++j) {
        double sj = 0.0;
        const double v = gauss(j, sj);
        const Eigen::Vector3d row(1.0, sj - s_node, (sj - s_node) * (sj - s_node));
        ata += row * row.transpose();
        atb += v * row;
      }
      values[k] = ata.ldlt().solve(atb)[0];
    }
    flux.side_values.push_back(std::move(values));
  }
  return flux;
}

double BoundaryFlux::at_s(int side, double s) const {
  const auto &m = *mesh;
  const auto &chain = m.sides.at(side).edges;
  s = std::clamp(s, 0.0, m.sides[side].length);
  auto it = std::upper_bound(chain.begin(), chain.end(), s,
                             [&](double v, int e) { return v < m.boundary_edges[e].s0; });
  const int idx = it == chain.begin() ? chain.front() : *(it - 1);
  const auto &e = m.boundary_edges[idx];
  const double xi = std::clamp((s - e.s0) / (e.s1 - e.s0), 0.0, 1.0);
  const auto w = edge_shape(xi);
  const auto &vals = side_values.at(side);
  const int k = 2 * static_cast<int>(std::distance(chain.begin(), it == chain.begin() ? it : it - 1));
  const double v2 = k + 2 < static_cast<int>(vals.size()) ? vals[k + 2] : vals[0];
  return w[0] * vals[k] + w[1] * vals[k + 1] + w[2] * v2;
}

double BoundaryFlux::project(int side, const Vec2 &p) const {
  return geometry::project_to_side(*mesh, side, p).s;
}

double BoundaryFlux::at(int side, const Vec2 &p) const { return at_s(side, project(side, p)); }

Vec2 BoundaryFlux::point_at(int side, double s) const {
  const auto &m = *mesh;
  const auto &chain = m.sides.at(side).edges;
  s = std::clamp(s, 0.0, m.sides[side].length);
  auto it = std::upper_bound(chain.begin(), chain.end(), s,
                             [&](double v, int e) { return v < m.boundary_edges[e].s0; });
  const int idx = it == chain.begin() ? chain.front() : *(it - 1);
  const auto &e = m.boundary_edges[idx];
  return m.edge_point(e, std::clamp((s - e.s0) / (e.s1 - e.s0), 0.0, 1.0));
}

double BoundaryFlux::total() const {
  const auto &m = *mesh;
  double sum = 0.0;
  for (const auto &e : m.boundary_edges) {
    const auto p = edge_points(m, e);
    const auto ids = m.edge_nodes(e);
    for (int g = 0; g < 5; ++g) {
      const auto w = edge_shape(kXg[g]);
      const double v = w[0] * dudn[ids[0]] + w[1] * dudn[ids[1]] + w[2] * dudn[ids[2]];
      sum += kWg[g] * norm(edge_tangent(p, kXg[g])) * v;
    }
  }
  return sum;
}

void write_solution_csv(std::ostream &os, const TorsionSolution &solution) {
  const auto &m = *solution.mesh;
  const auto prec = os.precision(17);
  os << "node_id,x,y,u\n";
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    os << i << ',' << m.nodes[i].x << ',' << m.nodes[i].y << ',' << solution.nodal_values[static_cast<int>(i)]
       << '\n';
  os.precision(prec);
}

void write_flux_csv(std::ostream &os, const BoundaryFlux &flux) {
  const auto &m = *flux.mesh;
  const auto prec = os.precision(17);
  os << "side_id,s,x,y,dudn\n";
  for (std::size_t side = 0; side < m.sides.size(); ++side) {
    const auto &chain = m.sides[side].edges;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const auto &e = m.boundary_edges[chain[k]];
      const auto ids = m.edge_nodes(e);
      const double ss[3] = {e.s0, 0.5 * (e.s0 + e.s1), e.s1};
      const int count = (k + 1 == chain.size() && !m.sides[side].closed) ? 3 : 2;
      for (int a = 0; a < count; ++a) {
        const Vec2 &p = m.nodes[ids[a]];
        os << side << ',' << ss[a] << ',' << p.x << ',' << p.y << ',' << flux.side_values[side][2 * k + a]
           << '\n';
      }
    }
  }
  os.precision(prec);
}

}  // namespace torsionlab::fem
