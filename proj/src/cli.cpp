#include "torsionlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "torsionlab/analysis/profile.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/experiments/annulus.hpp"
#include "torsionlab/experiments/endpoints.hpp"
#include "torsionlab/experiments/narrow.hpp"
#include "torsionlab/experiments/triangles.hpp"
#include "torsionlab/experiments/validate.hpp"
#include "torsionlab/fem/flux.hpp"
#include "torsionlab/geometry/landmarks.hpp"

namespace torsionlab::cli {

namespace {

using experiments::Report;

const std::vector<double> kEpsDefault{0.2, 0.1, 0.05};

nlohmann::json read_json_file(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

const geometry::DomainSpec &require_spec(const RunConfig &c) {
  if (!c.spec) throw Error(c.experiment + " needs a domain spec (--spec or \"spec\" in the config)");
  return *c.spec;
}

exact::Family parse_family(const std::string &name) {
  if (name == "stretch") return exact::Family::stretch;
  if (name == "tilt") return exact::Family::tilt;
  throw Error("unknown family '" + name + "'");
}

Report solve_report(const RunConfig &c, bool fail_only) {
  const auto &spec = require_spec(c);
  const double h = c.h.value_or(0.02);
  const auto sol = experiments::solve_domain(spec, h);
  const auto profile = analysis::boundary_profile(sol);
  Report r;
  r.experiment = fail_only ? "failpoint" : "solve";
  r.data = {{"spec", geometry::to_json(spec)},
            {"h", h},
            {"nodes", sol.mesh->nodes.size()},
            {"elements", sol.mesh->elements.size()},
            {"iterations", sol.iterations},
            {"solver_residual", sol.residual},
            {"total_flux", profile.flux.total()},
            {"area", geometry::area(spec)}};

  std::optional<geometry::TriangleLandmarks> lm;
  if (const auto *tri = std::get_if<geometry::TriangleSpec>(&spec))
    lm = geometry::triangle_landmarks(tri->A, tri->B, tri->C);
  const auto fp = analysis::fail_point(profile, lm);
  auto point_json = [](const analysis::CriticalPoint &p) {
    return nlohmann::json{{"side", p.side},
                          {"s", p.s},
                          {"point", {p.point.x, p.point.y}},
                          {"grad_sq", p.grad_sq},
                          {"kind", analysis::to_string(p.kind)}};
  };
  r.data["fail_point"] = point_json(fp.global);
  nlohmann::json sides = nlohmann::json::array(), crit = nlohmann::json::array();
  for (const auto &p : fp.per_side) sides.push_back(point_json(p));
  for (std::size_t s = 0; s < profile.sides.size(); ++s)
    for (const auto &p : analysis::locate_critical_points(profile, static_cast<int>(s))) crit.push_back(point_json(p));
  r.data["per_side"] = sides;
  r.data["critical_points"] = crit;
  if (fp.landmarks_check) {
    const auto &lc = *fp.landmarks_check;
    r.data["landmarks"] = {{"is_on_longest_side", lc.is_on_longest_side},
                           {"between_F_and_M", lc.between_F_and_M},
                           {"distance_to_F", lc.distance_to_F},
                           {"distance_to_M", lc.distance_to_M},
                           {"slack", lc.slack}};
    r.claims.push_back({"on_longest_side", lc.is_on_longest_side});
    r.claims.push_back({"between_F_and_M", lc.between_F_and_M});
  }

  std::ostringstream prof;
  prof.precision(17);
  analysis::write_profile_csv(prof, profile);
  r.tables[""] = prof.str();
  if (!fail_only) {
    std::ostringstream sol_csv, flux_csv;
    sol_csv.precision(17);
    flux_csv.precision(17);
    fem::write_solution_csv(sol_csv, sol);
    fem::write_flux_csv(flux_csv, profile.flux);
    r.tables["solution"] = sol_csv.str();
    r.tables["flux"] = flux_csv.str();
  }
  return r;
}

}  // namespace

Report run_experiment(const RunConfig &c) {
  using namespace experiments;
  const std::string &e = c.experiment;
  if (e == "solve") return solve_report(c, false);
  if (e == "failpoint") return solve_report(c, true);
  if (e == "validate") return validate_oracles();
  if (e == "narrow-sweep" || e == "narrow-compare") {
    const bool sweep = e == "narrow-sweep";
    const PolyBoundaryFn f1(c.f1.value_or(sweep ? std::vector<double>{-1.0, 0.0, 1.0}
                                                : std::vector<double>{-0.5, 0.0, 0.5}));
    const PolyBoundaryFn f2(c.f2.value_or(std::vector<double>{1.0, 0.0, -1.0}));
    NarrowOptions opts;
    opts.fibers = c.fibers.value_or(opts.fibers);
    opts.jobs = c.jobs;
    if (sweep) return narrow_sweep(f1, f2, c.eps_list.value_or(kEpsDefault), opts).report();
    const auto eps = c.eps_list.value_or(std::vector<double>{0.05});
    if (eps.size() != 1) throw Error("narrow-compare takes a single eps");
    return narrow_side_comparison(f1, f2, eps.front(), opts).report();
  }
  if (e == "endpoints") return endpoint_exclusion_check(c.eps_list.value_or(kEpsDefault), c.h.value_or(0.02), c.jobs).report();
  if (e == "triangle-family")
    return triangle_family(parse_family(c.family.value_or("stretch")),
                           c.t_list.value_or(std::vector<double>{0.04, 0.08}), c.h.value_or(0.008), c.jobs)
        .report();
  if (e == "w2-bound") return w2_bound_experiment(c.h.value_or(0.005)).report();
  if (e == "annulus") {
    geometry::AnnulusSpec spec{1.0, 0.3, 0.2};
    if (c.spec) {
      const auto *a = std::get_if<geometry::AnnulusSpec>(&*c.spec);
      if (!a) throw Error("annulus needs an annulus spec");
      spec = *a;
    }
    return annulus_experiment(spec, c.n_angles.value_or(129), c.h.value_or(0.02), c.jobs).report();
  }
  if (e == "suite")
    return random_triangle_suite(c.n.value_or(20), c.seed.value_or(7), c.h.value_or(0.01), c.jobs).report();
  throw Error("unknown experiment '" + e + "'");
}

int exit_code(const Report &report) { return report.all_claims_hold() ? 0 : 2; }

int run(int argc, char **argv) {
  CLI::App app{"Torsion-function fail points: FEM solves and numerical experiments"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  struct Values {
    std::string config_path, spec_path, family, output_dir;
    std::vector<double> eps, t, f1, f2;
    double h = 0.0;
    std::uint64_t seed = 0;
    int n = 0, jobs = 0, n_angles = 0, fibers = 0, verbosity = 0;
  };
  struct Flags {
    CLI::Option *config, *spec, *h, *t, *eps, *family, *seed, *n, *jobs, *out, *n_angles, *fibers, *f1, *f2;
  };
  // std::map keeps the bound addresses stable.
  std::map<std::string, Values> values;
  std::map<std::string, Flags> flags;
  const char *names[] = {"solve", "failpoint", "narrow-sweep", "narrow-compare", "endpoints", "triangle-family",
                         "w2-bound", "annulus", "suite", "validate"};
  for (const char *name : names) {
    auto *sub = app.add_subcommand(name);
    Values &v = values[name];
    Flags f;
    f.config = sub->add_option("--config", v.config_path, "JSON run config")->check(CLI::ExistingFile);
    f.spec = sub->add_option("--spec", v.spec_path, "JSON domain spec")->check(CLI::ExistingFile);
    f.h = sub->add_option("--h", v.h, "mesh size")->check(CLI::PositiveNumber);
    f.t = sub->add_option("--t", v.t, "t values")->delimiter(',');
    f.eps = sub->add_option("--eps", v.eps, "eps values")->delimiter(',');
    f.family = sub->add_option("--family", v.family, "stretch or tilt")->check(CLI::IsMember({"stretch", "tilt"}));
    f.seed = sub->add_option("--seed", v.seed, "suite seed");
    f.n = sub->add_option("--n", v.n, "suite size")->check(CLI::PositiveNumber);
    f.jobs = sub->add_option("--jobs", v.jobs, "worker cap, 0 for all cores")->check(CLI::NonNegativeNumber);
    f.out = sub->add_option("-o,--output", v.output_dir, "output directory");
    f.n_angles = sub->add_option("--angles", v.n_angles, "annulus profile samples");
    f.fibers = sub->add_option("--fibers", v.fibers, "narrow mesh fibers across the gap");
    f.f1 = sub->add_option("--f1", v.f1, "lower profile coefficients")->delimiter(',');
    f.f2 = sub->add_option("--f2", v.f2, "upper profile coefficients")->delimiter(',');
    sub->add_flag("-v,--verbose", v.verbosity, "print claims to stderr");
    flags[name] = f;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const Flags &f = flags.at(name);
    const Values &v = values.at(name);
    RunConfig c = f.config->count() ? config_from_json(read_json_file(v.config_path)) : RunConfig{};
    if (!c.experiment.empty() && c.experiment != name)
      throw Error("config is for '" + c.experiment + "', not '" + name + "'");
    c.experiment = name;
    if (f.spec->count()) c.spec = geometry::spec_from_json(read_json_file(v.spec_path));
    if (f.h->count()) c.h = v.h;
    if (f.t->count()) c.t_list = v.t;
    if (f.eps->count()) c.eps_list = v.eps;
    if (f.family->count()) c.family = v.family;
    if (f.seed->count()) c.seed = v.seed;
    if (f.n->count()) c.n = v.n;
    if (f.jobs->count()) c.jobs = v.jobs;
    if (f.out->count()) c.output_dir = v.output_dir;
    if (f.n_angles->count()) c.n_angles = v.n_angles;
    if (f.fibers->count()) c.fibers = v.fibers;
    if (f.f1->count()) c.f1 = v.f1;
    if (f.f2->count()) c.f2 = v.f2;
    if (v.verbosity) c.verbosity = v.verbosity;

    const auto report = run_experiment(c);
    const auto path = write_report(report, c);
    std::cout << path.string() << '\n';
    if (c.verbosity > 0)
      for (const auto &claim : report.claims)
        std::cerr << (claim.holds ? "PASS " : "FAIL ") << claim.name << '\n';
    return exit_code(report);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace torsionlab::cli
