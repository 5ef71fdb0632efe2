#include "torsionlab/fem/gradient.hpp"

#include <cmath>
#include <unordered_map>

#include "torsionlab/errors.hpp"
#include "torsionlab/fem/element.hpp"

namespace torsionlab::fem {

namespace {

constexpr double kInsideTol = 1e-10;

bool inside_reference(double xi, double eta, double tol) {
  return xi >= -tol && eta >= -tol && xi + eta <= 1.0 + tol;
}

}  // namespace

PointLocator::PointLocator(std::shared_ptr<const geometry::Mesh> mesh) : mesh_(std::move(mesh)) {
  const auto &m = *mesh_;
  neighbours_.assign(m.elements.size(), {-1, -1, -1});
  std::unordered_map<std::uint64_t, std::pair<int, int>> open;
  open.reserve(m.elements.size() * 2);
  for (std::size_t el = 0; el < m.elements.size(); ++el) {
    const auto &e = m.elements[el];
    for (int k = 0; k < 3; ++k) {
      const auto a = static_cast<std::uint64_t>(std::min(e[k], e[(k + 1) % 3]));
      const auto b = static_cast<std::uint64_t>(std::max(e[k], e[(k + 1) % 3]));
      const auto key = (b << 32) | a;
      auto it = open.find(key);
      if (it == open.end()) {
        open.emplace(key, std::make_pair(static_cast<int>(el), k));
      } else {
        neighbours_[el][k] = it->second.first;
        neighbours_[it->second.first][it->second.second] = static_cast<int>(el);
        open.erase(it);
      }
    }
  }
}

bool PointLocator::inverse_map(int element, const Vec2 &p, Location &loc) const {
  const auto nodes = element_nodes(*mesh_, element);
  // Straight-sided guess from the vertices, then Newton on the isoparametric map.
  const Vec2 e1 = nodes[1] - nodes[0], e2 = nodes[2] - nodes[0], d = p - nodes[0];
  const double det = cross(e1, e2);
  double xi = cross(d, e2) / det, eta = cross(e1, d) / det;
  for (int it = 0; it < 25; ++it) {
    const auto dn = shape_gradient(xi, eta);
    const Vec2 x = map_position(nodes, xi, eta);
    double j00 = 0, j01 = 0, j10 = 0, j11 = 0;
    for (int k = 0; k < 6; ++k) {
      j00 += nodes[k].x * dn[k].x;
      j01 += nodes[k].x * dn[k].y;
      j10 += nodes[k].y * dn[k].x;
      j11 += nodes[k].y * dn[k].y;
    }
    const Vec2 r = p - x;
    const double jd = j00 * j11 - j01 * j10;
    const double dxi = (j11 * r.x - j01 * r.y) / jd;
    const double deta = (-j10 * r.x + j00 * r.y) / jd;
    xi += dxi;
    eta += deta;
    if (std::abs(dxi) + std::abs(deta) < 1e-15) break;
    if (std::abs(xi) > 10.0 || std::abs(eta) > 10.0) break;
  }
  loc = {element, xi, eta};
  return inside_reference(xi, eta, kInsideTol);
}

std::optional<Location> PointLocator::locate(const Vec2 &p) {
  const auto &m = *mesh_;
  Location loc;
  int cur = last_;
  for (std::size_t step = 0; step < m.elements.size(); ++step) {
    const auto &e = m.elements[cur];
    const Vec2 a = m.nodes[e[0]], b = m.nodes[e[1]], c = m.nodes[e[2]];
    const double det = cross(b - a, c - a);
    const double l1 = cross(p - a, c - a) / det, l2 = cross(b - a, p - a) / det;
    const double bary[3] = {1.0 - l1 - l2, l1, l2};
    // Edge k is opposite vertex (k+2)%3.
    int worst = -1;
    double worst_v = -1e-9;
    for (int k = 0; k < 3; ++k) {
      const double v = bary[(k + 2) % 3];
      if (v < worst_v) worst_v = v, worst = k;
    }
    if (worst < 0 || neighbours_[cur][worst] < 0) {
      if (inverse_map(cur, p, loc)) {
        last_ = cur;
        return loc;
      }
      // Curved element: the point may sit in a neighbour even though the vertex
      // triangle claims it.
      for (int k = 0; k < 3; ++k) {
        const int nb = neighbours_[cur][k];
        if (nb >= 0 && inverse_map(nb, p, loc)) {
          last_ = nb;
          return loc;
        }
      }
      break;
    }
    cur = neighbours_[cur][worst];
  }
  for (std::size_t el = 0; el < m.elements.size(); ++el) {
    const auto &e = m.elements[el];
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (int k = 0; k < 6; ++k) {
      const Vec2 q = m.nodes[e[k]];
      xmin = std::min(xmin, q.x), xmax = std::max(xmax, q.x);
      ymin = std::min(ymin, q.y), ymax = std::max(ymax, q.y);
    }
    const double pad = 0.25 * std::max(xmax - xmin, ymax - ymin);
    if (p.x < xmin - pad || p.x > xmax + pad || p.y < ymin - pad || p.y > ymax + pad) continue;
    if (inverse_map(static_cast<int>(el), p, loc)) {
      last_ = static_cast<int>(el);
      return loc;
    }
  }
  return std::nullopt;
}

ValueAndGradient evaluate(const TorsionSolution &solution, const Location &loc) {
  const auto &m = *solution.mesh;
  const auto nodes = element_nodes(m, loc.element);
  const auto mp = map_point(nodes, loc.xi, loc.eta);
  const auto phi = shape(loc.xi, loc.eta);
  const auto &e = m.elements[loc.element];
  ValueAndGradient out;
  for (int k = 0; k < 6; ++k) {
    const double u = solution.nodal_values[e[k]];
    out.value += u * phi[k];
    out.gradient += u * mp.grad[k];
  }
  return out;
}

Vec2 gradient_at(const TorsionSolution &solution, const Vec2 &p) {
  PointLocator locator(solution.mesh);
  auto loc = locator.locate(p);
  if (!loc) throw OutsideDomainError("point outside the meshed domain");
  return evaluate(solution, *loc).gradient;
}

double value_at(const TorsionSolution &solution, const Vec2 &p) {
  PointLocator locator(solution.mesh);
  auto loc = locator.locate(p);
  if (!loc) throw OutsideDomainError("point outside the meshed domain");
  return evaluate(solution, *loc).value;
}

std::vector<Vec2> vertex_gradients(const TorsionSolution &solution) {
  const auto &m = *solution.mesh;
  std::vector<Vec2> sum(m.nodes.size());
  std::vector<int> count(m.nodes.size(), 0);
  static constexpr double ref[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (std::size_t el = 0; el < m.elements.size(); ++el) {
    const auto nodes = element_nodes(m, static_cast<int>(el));
    const auto &e = m.elements[el];
    for (int v = 0; v < 3; ++v) {
      const auto mp = map_point(nodes, ref[v][0], ref[v][1]);
      Vec2 g;
      for (int k = 0; k < 6; ++k) g += solution.nodal_values[e[k]] * mp.grad[k];
      sum[e[v]] += g;
      ++count[e[v]];
    }
  }
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (count[i] > 0) sum[i] *= 1.0 / count[i];
  return sum;
}

}  // namespace torsionlab::fem
