#include "torsionlab/io.hpp"

#include <cstdio>
#include <fstream>

#include "torsionlab/errors.hpp"

namespace torsionlab {

namespace {

nlohmann::json hashed_part(const RunConfig &c) {
  nlohmann::json j = nlohmann::json::object();
  j["experiment"] = c.experiment;
  if (c.spec) j["spec"] = geometry::to_json(*c.spec);
  if (c.f1) j["f1"] = *c.f1;
  if (c.f2) j["f2"] = *c.f2;
  if (c.eps_list) j["eps_list"] = *c.eps_list;
  if (c.t_list) j["t_list"] = *c.t_list;
  if (c.h) j["h"] = *c.h;
  if (c.family) j["family"] = *c.family;
  if (c.seed) j["seed"] = *c.seed;
  if (c.n) j["n"] = *c.n;
  if (c.n_angles) j["n_angles"] = *c.n_angles;
  if (c.fibers) j["fibers"] = *c.fibers;
  if (c.n_terms) j["n_terms"] = *c.n_terms;
  return j;
}

template <class T>
void read(const nlohmann::json &j, const char *key, std::optional<T> &out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

bool RunConfig::operator==(const RunConfig &o) const {
  return to_json(*this) == to_json(o);
}

nlohmann::json to_json(const RunConfig &config) {
  nlohmann::json j = hashed_part(config);
  j["output_dir"] = config.output_dir;
  j["jobs"] = config.jobs;
  j["verbosity"] = config.verbosity;
  return j;
}

RunConfig config_from_json(const nlohmann::json &j) {
  static const char *kKeys[] = {"experiment", "spec", "f1", "f2", "eps_list", "t_list", "h", "family", "seed",
                                "n", "n_angles", "fibers", "n_terms", "output_dir", "jobs", "verbosity"};
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const auto &[key, value] : j.items()) {
    if (std::ranges::find_if(kKeys, [&](const char *k) { return key == k; }) == std::end(kKeys))
      throw Error("unknown config field '" + key + "'");
  }
  RunConfig c;
  std::optional<std::string> experiment, output_dir;
  std::optional<int> jobs, verbosity;
  read(j, "experiment", experiment);
  read(j, "f1", c.f1);
  read(j, "f2", c.f2);
  read(j, "eps_list", c.eps_list);
  read(j, "t_list", c.t_list);
  read(j, "h", c.h);
  read(j, "family", c.family);
  read(j, "seed", c.seed);
  read(j, "n", c.n);
  read(j, "n_angles", c.n_angles);
  read(j, "fibers", c.fibers);
  read(j, "n_terms", c.n_terms);
  read(j, "output_dir", output_dir);
  read(j, "jobs", jobs);
  read(j, "verbosity", verbosity);
  if (j.contains("spec")) c.spec = geometry::spec_from_json(j.at("spec"));
  c.experiment = experiment.value_or("");
  c.output_dir = output_dir.value_or(".");
  c.jobs = jobs.value_or(0);
  c.verbosity = verbosity.value_or(0);
  return c;
}

std::string config_hash(const RunConfig &config) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : hashed_part(config).dump()) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::filesystem::path write_report(const experiments::Report &report, const RunConfig &config) {
  namespace fs = std::filesystem;
  const fs::path dir = config.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  const std::string stem = report.experiment + "_" + config_hash(config);

  auto write = [](const fs::path &path, const std::string &text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    os << text;
    if (!os) throw Error("write failed for " + path.string());
  };
  nlohmann::json j = report.to_json();
  j["config"] = to_json(config);
  j["config"].erase("output_dir");
  j["config"].erase("jobs");
  j["config"].erase("verbosity");
  j["config_hash"] = config_hash(config);
  const fs::path json_path = dir / (stem + ".json");
  write(json_path, j.dump(2) + "\n");
  for (const auto &[name, csv] : report.tables)
    write(dir / (stem + (name.empty() ? "" : "_" + name) + ".csv"), csv);
  return json_path;
}

}  // namespace torsionlab
