#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsionlab/fem/solve.hpp"
#include "torsionlab/geometry/mesh.hpp"

namespace torsionlab::experiments {

/// Named true/false statement checked by an experiment.
struct Claim {
  std::string name;
  bool holds = false;
};

/// Serializable outcome of one experiment: data, claims and CSV tables.
struct Report {
  std::string experiment;
  nlohmann::json data;
  std::vector<Claim> claims;
  /// Table name -> CSV text. The empty name is the main table.
  std::map<std::string, std::string> tables;

  bool all_claims_hold() const;
  /// {"experiment", "data", "claims": {name: bool}, "all_claims_hold"}.
  nlohmann::json to_json() const;
};

/// Runs fn(0..n-1) on up to `jobs` threads; results keep index order.
template <class T>
std::vector<T> parallel_map(int n, int jobs, const std::function<T(int)> &fn);

/// Worker count from a --jobs style request; 0 means hardware concurrency.
int resolve_jobs(int jobs);

/// Mesh and solve the torsion problem on a domain.
fem::TorsionSolution solve_domain(const geometry::DomainSpec &spec, double h,
                                  const geometry::MeshOptions &options = {});

/// Least-squares slope of log|y| against log x.
double log_log_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace torsionlab::experiments

#include "torsionlab/experiments/parallel_impl.hpp"
