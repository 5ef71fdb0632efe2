#include "torsionlab/experiments/common.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace torsionlab::experiments {

bool Report::all_claims_hold() const {
  return std::ranges::all_of(claims, [](const Claim &c) { return c.holds; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json claim_map = nlohmann::json::object();
  for (const auto &c : claims) claim_map[c.name] = c.holds;
  return {{"experiment", experiment}, {"data", data}, {"claims", claim_map},
          {"all_claims_hold", all_claims_hold()}};
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

fem::TorsionSolution solve_domain(const geometry::DomainSpec &spec, double h,
                                  const geometry::MeshOptions &options) {
  auto mesh = std::make_shared<const geometry::Mesh>(geometry::build_mesh(spec, h, options));
  return fem::solve_torsion(mesh);
}

double log_log_slope(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace torsionlab::experiments
