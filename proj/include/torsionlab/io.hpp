#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsionlab/experiments/common.hpp"
#include "torsionlab/geometry/domain.hpp"

namespace torsionlab {

/// Everything that determines an experiment's output. Unset fields take the
/// experiment's defaults.
struct RunConfig {
  std::string experiment;
  std::optional<geometry::DomainSpec> spec;
  std::optional<std::vector<double>> f1, f2;  // narrow profile coefficients
  std::optional<std::vector<double>> eps_list;
  std::optional<std::vector<double>> t_list;
  std::optional<double> h;
  std::optional<std::string> family;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> n_angles;
  std::optional<int> fibers;
  std::optional<int> n_terms;
  /// Not part of the hash: they do not change results.
  std::string output_dir = ".";
  int jobs = 0;
  int verbosity = 0;

  bool operator==(const RunConfig &) const;
};

nlohmann::json to_json(const RunConfig &config);
/// Throws Error on unknown keys or mistyped values.
RunConfig config_from_json(const nlohmann::json &j);

/// FNV-1a of the result-relevant part of the config, as 16 hex digits.
std::string config_hash(const RunConfig &config);

/// Writes <dir>/<experiment>_<hash>.json and one CSV per table; returns the JSON path.
std::filesystem::path write_report(const experiments::Report &report, const RunConfig &config);

}  // namespace torsionlab
