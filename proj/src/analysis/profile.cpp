#include "torsionlab/analysis/profile.hpp"

#include <ostream>

namespace torsionlab::analysis {

BoundaryProfile boundary_profile(const fem::TorsionSolution &solution) {
  BoundaryProfile profile;
  profile.flux = fem::boundary_flux(solution);
  const auto &m = *solution.mesh;
  profile.h = m.h;
  for (std::size_t side = 0; side < m.sides.size(); ++side) {
    const auto &bs = m.sides[side];
    SideProfile sp;
    sp.side = static_cast<int>(side);
    sp.closed = bs.closed;
    sp.length = bs.length;
    const auto &vals = profile.flux.side_values[side];
    auto push = [&](int node, double s) {
      const double g = vals[sp.samples.size()];
      sp.samples.push_back({s, m.nodes[node], g, g * g});
    };
    for (std::size_t k = 0; k < bs.edges.size(); ++k) {
      const auto &e = m.boundary_edges[bs.edges[k]];
      const auto ids = m.edge_nodes(e);
      push(ids[0], e.s0);
      push(ids[1], 0.5 * (e.s0 + e.s1));
      if (k + 1 == bs.edges.size() && !bs.closed) push(ids[2], e.s1);
    }
    profile.sides.push_back(std::move(sp));
  }
  return profile;
}

void write_profile_csv(std::ostream &os, const BoundaryProfile &profile) {
  const auto prec = os.precision(17);
  os << "side,s,x,y,dudn,gradsq\n";
  for (const auto &sp : profile.sides)
    for (const auto &p : sp.samples)
      os << sp.side << ',' << p.s << ',' << p.point.x << ',' << p.point.y << ',' << p.dudn << ','
         << p.grad_sq << '\n';
  os.precision(prec);
}

const char *to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::max: return "max";
    case CriticalKind::min: return "min";
    default: return "flat";
  }
}

}  // namespace torsionlab::analysis
