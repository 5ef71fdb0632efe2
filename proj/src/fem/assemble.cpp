#include "torsionlab/fem/assemble.hpp"

#include "torsionlab/errors.hpp"
#include "torsionlab/fem/element.hpp"

namespace torsionlab::fem {

LinearSystem assemble(std::shared_ptr<const geometry::Mesh> mesh, const ScalarField &rhs,
                      std::string rhs_tag, const ScalarField &dirichlet) {
  const auto &m = *mesh;
  const int n = static_cast<int>(m.nodes.size());
  LinearSystem sys;
  sys.mesh = mesh;
  sys.rhs_tag = std::move(rhs_tag);
  sys.free_index.assign(n, -1);
  std::vector<int> constrained_index(n, -1);
  for (int i = 0; i < n; ++i) {
    if (m.on_boundary[i]) {
      constrained_index[i] = static_cast<int>(sys.constrained_nodes.size());
      sys.constrained_nodes.push_back(i);
    } else {
      sys.free_index[i] = static_cast<int>(sys.free_nodes.size());
      sys.free_nodes.push_back(i);
    }
  }
  const int nf = static_cast<int>(sys.free_nodes.size());
  const int nc = static_cast<int>(sys.constrained_nodes.size());

  sys.dirichlet_values = Eigen::VectorXd::Zero(nc);
  if (dirichlet)
    for (int c = 0; c < nc; ++c) sys.dirichlet_values[c] = dirichlet(m.nodes[sys.constrained_nodes[c]]);

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> kff, kc;
  kff.reserve(m.elements.size() * 36);
  kc.reserve(static_cast<std::size_t>(nc) * 24);
  Eigen::VectorXd load_all = Eigen::VectorXd::Zero(n);

  const auto &quad = triangle_quadrature();
  for (std::size_t el = 0; el < m.elements.size(); ++el) {
    const auto nodes = element_nodes(m, static_cast<int>(el));
    double ke[6][6] = {};
    double fe[6] = {};
    for (const auto &q : quad) {
      const auto mp = map_point(nodes, q.xi, q.eta);
      if (!(mp.det > 0.0))
        throw AssemblyError("non-positive Jacobian in element " + std::to_string(el));
      const double w = q.weight * mp.det;
      const auto phi = shape(q.xi, q.eta);
      const double f = rhs(mp.x);
      for (int a = 0; a < 6; ++a) {
        fe[a] += w * f * phi[a];
        for (int b = 0; b < 6; ++b) ke[a][b] += w * dot(mp.grad[a], mp.grad[b]);
      }
    }
    const auto &e = m.elements[el];
    for (int a = 0; a < 6; ++a) {
      load_all[e[a]] += fe[a];
      const int fa = sys.free_index[e[a]];
      const int ca = constrained_index[e[a]];
      for (int b = 0; b < 6; ++b) {
        const int fb = sys.free_index[e[b]];
        if (fa >= 0 && fb >= 0) kff.emplace_back(fa, fb, ke[a][b]);
        if (ca >= 0) kc.emplace_back(ca, e[b], ke[a][b]);
        if (fa >= 0 && fb < 0 && dirichlet)
          load_all[e[a]] -= ke[a][b] * sys.dirichlet_values[constrained_index[e[b]]];
      }
    }
  }

  sys.stiffness.resize(nf, nf);
  sys.stiffness.setFromTriplets(kff.begin(), kff.end());
  sys.constrained_rows.resize(nc, n);
  sys.constrained_rows.setFromTriplets(kc.begin(), kc.end());
  sys.load.resize(nf);
  for (int i = 0; i < nf; ++i) sys.load[i] = load_all[sys.free_nodes[i]];
  sys.constrained_load.resize(nc);
  for (int c = 0; c < nc; ++c) sys.constrained_load[c] = load_all[sys.constrained_nodes[c]];
  return sys;
}

}  // namespace torsionlab::fem
