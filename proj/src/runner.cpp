#include "ahmass/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include "ahmass/constraints.hpp"
#include "ahmass/errors.hpp"
#include "ahmass/families.hpp"
#include "ahmass/gluing.hpp"
#include "ahmass/hyperbolic.hpp"
#include "ahmass/lorentz.hpp"
#include "ahmass/mass.hpp"
#include "ahmass/rng.hpp"

namespace ahmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Stopwatch {
 public:
  void report(const std::string& label) {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - t0_).count();
    std::fprintf(stderr, "[timing] %s: %.1f ms\n", label.c_str(), ms);
    t0_ = now;
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

Json json_vec(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json load_raw(const RunOptions& opt) {
  Json raw = Json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + opt.config_path);
    try {
      raw = Json::parse(in);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!raw.is_object()) throw ConfigError("config root must be a JSON object");
  }
  if (opt.dim > 0) raw["n"] = opt.dim;
  if (opt.seed_set) raw["seed"] = opt.seed;
  if (opt.tol > 0) raw["tolerance"] = opt.tol;
  return raw;
}

// Reads typed keys out of the raw config, writing resolved values into a
// canonical echo object; finish() rejects keys that were never read.
class ConfigReader {
 public:
  ConfigReader(std::string command, Json raw)
      : command_(std::move(command)), raw_(std::move(raw)) {}

  long integer(const char* key, long def, long lo, long hi) {
    const Json v = take(key);
    long x = def;
    if (!v.is_null()) {
      if (!v.is_number_integer() && !v.is_number_unsigned()) fail(key, "must be an integer");
      x = v.get<long>();
    }
    if (x < lo || x > hi) fail(key, "out of range");
    echo_[key] = x;
    return x;
  }

  double number(const char* key, double def, double lo, double hi) {
    const Json v = take(key);
    double x = def;
    if (!v.is_null()) {
      if (!v.is_number()) fail(key, "must be a number");
      x = v.get<double>();
    }
    if (!(x >= lo && x <= hi)) fail(key, "out of range");
    echo_[key] = x;
    return x;
  }

  std::uint64_t seed64(const char* key, std::uint64_t def) {
    const Json v = take(key);
    std::uint64_t x = def;
    if (!v.is_null()) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        fail(key, "must be a nonnegative integer");
      x = v.get<std::uint64_t>();
    }
    echo_[key] = x;
    return x;
  }

  std::string choice(const char* key, const char* def,
                     std::initializer_list<const char*> allowed) {
    const Json v = take(key);
    std::string x = def;
    if (!v.is_null()) {
      if (!v.is_string()) fail(key, "must be a string");
      x = v.get<std::string>();
    }
    bool ok = false;
    for (const char* a : allowed) ok = ok || x == a;
    if (!ok) fail(key, "is not one of the allowed names");
    echo_[key] = x;
    return x;
  }

  std::vector<double> vector(const char* key, const std::vector<double>& def,
                             std::size_t size) {
    const Json v = take(key);
    std::vector<double> x = def;
    if (!v.is_null()) {
      if (!v.is_array()) fail(key, "must be an array of numbers");
      x.clear();
      for (const auto& e : v) {
        if (!e.is_number()) fail(key, "must be an array of numbers");
        x.push_back(e.get<double>());
      }
    }
    if (x.size() != size) fail(key, "has the wrong length");
    echo_[key] = x;
    return x;
  }

  bool present(const char* key) const { return raw_.contains(key); }

  void reject(const char* key, const char* why) {
    if (raw_.contains(key)) fail(key, why);
  }

  Json finish() {
    for (const auto& item : raw_.items())
      if (!seen_.count(item.key()))
        throw ConfigError(command_ + ": unknown config key \"" + item.key() + "\"");
    return echo_;
  }

 private:
  Json take(const char* key) {
    seen_.insert(key);
    if (!raw_.contains(key)) return Json();
    return raw_.at(key);
  }

  [[noreturn]] void fail(const char* key, const char* what) {
    throw ConfigError(command_ + ": config key \"" + std::string(key) + "\" " + what);
  }

  std::string command_;
  Json raw_;
  Json echo_;
  std::set<std::string> seen_;
};

void write_report_file(const RunOptions& opt, const Json& report) {
  if (opt.out_dir.empty()) return;
  write_text_file((std::filesystem::path(opt.out_dir) / "report.json").string(),
                  report.dump(2) + "\n");
}

std::string csv_row(const std::vector<double>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += format_double(cells[i]);
  }
  row += '\n';
  return row;
}

// V + amp * z on the half-space chart; the verify command's deliberate
// corruption hook.
ScalarField with_linear_z(const ScalarField& V, double amp, int n) {
  auto value = [V, amp, n](const Eigen::VectorXd& x) {
    return V.value({Chart::HalfSpace, x}) + amp * x[n - 1];
  };
  auto jet = [V, amp, n](const Eigen::VectorXd& x) {
    ScalarJet j = V.jet({Chart::HalfSpace, x});
    j.v += amp * x[n - 1];
    j.g[n - 1] += amp;
    return j;
  };
  return ScalarField(Chart::HalfSpace, n, value, jet);
}

std::vector<ChartPoint> halfspace_samples(int n, int count, double zmin, double zmax,
                                          double wmax, DetRng& rng) {
  std::vector<ChartPoint> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd x(n);
    x.head(n - 1) =
        rng.unit_vector(n - 1) * (wmax * std::pow(rng.uniform01(), 1.0 / (n - 1)));
    x[n - 1] = rng.uniform(zmin, zmax);
    pts.push_back(make_halfspace(x));
  }
  return pts;
}

SphereQuadrature auto_quadrature(int sphere_dim, long level, long mc_samples,
                                 std::uint64_t seed) {
  if (sphere_dim <= 3) return sphere_quadrature(sphere_dim, static_cast<int>(level));
  return sphere_quadrature_mc(sphere_dim, static_cast<int>(mc_samples),
                              mix_seed(seed, 0x71756164ULL));
}

// ---------------------------------------------------------------- mass ----

struct MassCfg {
  Json echo;
  int n;
  std::string family, chart, hemisphere;
  double mass_parameter, amplitude, sigma, tolerance, decay_exponent;
  double aspect_constant;
  std::vector<double> aspect_linear;
  long quadrature_level, mc_samples, k_min, k_max;
  std::uint64_t seed;
};

MassCfg parse_mass(const RunOptions& opt) {
  ConfigReader r("mass", load_raw(opt));
  MassCfg c;
  c.n = static_cast<int>(r.integer("n", 3, 3, 12));
  c.family = r.choice("family", "hyperbolic",
                      {"hyperbolic", "schwarzschild-ads", "aspect", "perturbed"});
  c.seed = r.seed64("seed", 1);
  c.tolerance = r.number("tolerance", 1e-6, 1e-15, 1.0);
  if (c.family == "aspect") {
    c.aspect_constant = r.number("aspect_constant", 1.0, -1e6, 1e6);
    c.aspect_linear =
        r.vector("aspect_linear", std::vector<double>(c.n, 0.0), c.n);
  } else {
    c.chart = r.choice("chart", "ball", {"ball", "polar"});
    c.k_min = r.integer("radius_k_min", 3, 0, 20);
    c.k_max = r.integer("radius_k_max", 8, c.k_min + 1, 30);
    c.decay_exponent = r.number("decay_exponent", 1.5, 0.1, 10.0);
    c.hemisphere = r.choice("hemisphere", "full", {"full", "upper", "lower"});
  }
  if (c.family == "schwarzschild-ads")
    c.mass_parameter = r.number("mass_parameter", 1.0, -100.0, 100.0);
  if (c.family == "perturbed") {
    c.amplitude = r.number("amplitude", 1e-3, -1.0, 1.0);
    c.sigma = r.number("sigma", static_cast<double>(c.n), 0.5, 20.0);
  }
  c.quadrature_level = r.integer("quadrature_level", 16, 4, 128);
  c.mc_samples = r.integer("mc_samples", 20000, 100, 1000000);
  c.echo = r.finish();
  return c;
}

RunResult run_mass(const RunOptions& opt) {
  Stopwatch watch;
  const MassCfg c = parse_mass(opt);
  Json report;
  report["command"] = "mass";
  report["config"] = c.echo;
  Json results;

  const SphereQuadrature quad =
      auto_quadrature(c.n - 1, c.quadrature_level, c.mc_samples, c.seed);

  RunResult run;
  if (c.family == "aspect") {
    const double a = c.aspect_constant;
    const Eigen::VectorXd lin =
        Eigen::Map<const Eigen::VectorXd>(c.aspect_linear.data(), c.n);
    const EnergyMomentum m = momentum_from_aspect(
        [&](const Eigen::VectorXd& u) { return a + lin.dot(u); }, quad);
    results["value"] = json_vec(m.m);
    results["causal_class"] = causal_name(causal_character(m));
    results["error_estimate"] = json_vec(Eigen::VectorXd::Zero(c.n + 1));
    results["diverged"] = false;
    results["note"] = "moment map; no radial extrapolation";
    run.exit_code = 0;
  } else {
    MetricField g;
    const Chart chart = c.chart == "ball" ? Chart::Ball : Chart::Polar;
    if (c.family == "hyperbolic") {
      g = hyperbolic_metric(chart, c.n);
    } else if (c.family == "schwarzschild-ads") {
      g = schwarzschild_ads(c.mass_parameter, chart, c.n);
    } else {
      if (chart != Chart::Ball)
        throw ConfigError("mass: the perturbed family is registered on the ball chart");
      g = perturbed_hyperbolic(c.n, c.amplitude, c.sigma, c.seed);
    }
    const RadiusSchedule sched = RadiusSchedule::dyadic(
        static_cast<int>(c.k_min), static_cast<int>(c.k_max), c.decay_exponent);
    const Hemisphere half = c.hemisphere == "full"
                                ? Hemisphere::Full
                                : (c.hemisphere == "upper" ? Hemisphere::Upper
                                                           : Hemisphere::Lower);
    const MassResult res = energy_momentum(g, quad, sched, half);

    results["value"] = json_vec(res.value.m);
    results["causal_class"] = causal_name(causal_character(res.value));
    results["error_estimate"] = json_vec(res.error_estimate);
    results["mc_standard_error"] = res.mc_standard_error;
    results["diverged"] = res.diverged;
    results["note"] = res.note;
    results["radii"] = res.radii;
    Json raws = Json::array(), extr = Json::array();
    for (const auto& v : res.integrals) raws.push_back(json_vec(v));
    for (const auto& v : res.extrapolants) extr.push_back(json_vec(v));
    results["integrals"] = raws;
    results["extrapolants"] = extr;

    const double err = res.error_estimate.cwiseAbs().maxCoeff();
    const bool pass = !res.diverged && err <= c.tolerance;
    run.exit_code = res.diverged ? 4 : (pass ? 0 : 2);

    if (!opt.out_dir.empty()) {
      std::string csv = "r";
      for (int i = 0; i <= c.n; ++i) csv += ",I_" + std::to_string(i);
      for (int i = 0; i <= c.n; ++i) csv += ",E_" + std::to_string(i);
      csv += '\n';
      for (std::size_t k = 0; k < res.radii.size(); ++k) {
        std::vector<double> cells{res.radii[k]};
        for (int i = 0; i <= c.n; ++i) cells.push_back(res.integrals[k][i]);
        for (int i = 0; i <= c.n; ++i) cells.push_back(res.extrapolants[k][i]);
        csv += csv_row(cells);
      }
      write_text_file(
          (std::filesystem::path(opt.out_dir) / "convergence.csv").string(), csv);
    }
  }

  report["results"] = results;
  report["pass"] = run.exit_code == 0;
  report["exit_code"] = run.exit_code;
  run.report = report;
  write_report_file(opt, report);
  watch.report("mass total");
  return run;
}

// -------------------------------------------------------------- verify ----

struct VerifyCfg {
  Json echo;
  int n;
  long samples, graph_count, graph_samples, quadrature_level, mc_samples;
  double z_min, z_max, w_max;
  double tol_kid_analytic, tol_kid_fd, tol_killing, tol_lorentz, tol_addition;
  double tol_cap, tol_graph, tol_hyperboloid, tol_mass;
  double corrupt_kid_amplitude;
  std::uint64_t seed;
};

VerifyCfg parse_verify(const RunOptions& opt) {
  ConfigReader r("verify", load_raw(opt));
  r.reject("tolerance",
           "is ambiguous here; verify uses per-suite tol_* keys");
  VerifyCfg c;
  c.n = static_cast<int>(r.integer("n", 3, 3, 12));
  c.seed = r.seed64("seed", 1);
  c.samples = r.integer("samples", 200, 1, 100000);
  c.z_min = r.number("z_min", 0.1, 1e-6, 1e6);
  c.z_max = r.number("z_max", 10.0, c.z_min, 1e6);
  c.w_max = r.number("w_max", 10.0, 1e-6, 1e6);
  c.tol_kid_analytic = r.number("tol_kid_analytic", 1e-10, 1e-16, 1.0);
  c.tol_kid_fd = r.number("tol_kid_fd", 1e-6, 1e-16, 1.0);
  c.tol_killing = r.number("tol_killing", 1e-10, 1e-16, 1.0);
  c.tol_lorentz = r.number("tol_lorentz", 1e-12, 1e-16, 1.0);
  c.tol_addition = r.number("tol_addition", 1e-10, 1e-16, 1.0);
  c.tol_cap = r.number("tol_cap", 1e-10, 1e-16, 1.0);
  c.graph_count = r.integer("graph_count", 10, 0, 1000);
  c.graph_samples = r.integer("graph_samples", 5, 1, 1000);
  c.tol_graph = r.number("tol_graph", 1e-5, 1e-16, 1.0);
  c.tol_hyperboloid = r.number("tol_hyperboloid", 1e-6, 1e-16, 1.0);
  c.tol_mass = r.number("tol_mass", 1e-6, 1e-16, 1.0);
  c.quadrature_level = r.integer("quadrature_level", 16, 4, 128);
  c.mc_samples = r.integer("mc_samples", 4000, 100, 1000000);
  c.corrupt_kid_amplitude = r.number("corrupt_kid_amplitude", 0.0, -1.0, 1.0);
  c.echo = r.finish();
  return c;
}

RunResult run_verify(const RunOptions& opt) {
  Stopwatch watch;
  const VerifyCfg c = parse_verify(opt);
  const int n = c.n;
  Json report;
  report["command"] = "verify";
  report["config"] = c.echo;

  Json suites = Json::array();
  Json violations = Json::array();
  auto record = [&](const std::string& name, double worst, double tol) {
    const bool pass = worst <= tol;
    Json item;
    item["name"] = name;
    item["worst"] = worst;
    item["tolerance"] = tol;
    item["pass"] = pass;
    suites.push_back(item);
    if (!pass) violations.push_back(name);
    watch.report("verify " + name);
  };

  DetRng rng(mix_seed(c.seed, 0x76657269ULL));
  const std::vector<ChartPoint> pts =
      halfspace_samples(n, static_cast<int>(c.samples), c.z_min, c.z_max, c.w_max, rng);

  const MetricField b = hyperbolic_metric(Chart::HalfSpace, n);
  std::vector<ScalarField> kids;
  for (int mu = 0; mu <= n; ++mu) {
    ScalarField V = static_kid(mu, Chart::HalfSpace, n);
    if (c.corrupt_kid_amplitude != 0.0)
      V = with_linear_z(V, c.corrupt_kid_amplitude, n);
    kids.push_back(std::move(V));
  }

  {
    double worst = 0;
    for (const auto& V : kids)
      for (const auto& p : pts) worst = std::max(worst, kid_residual_norm(b, V, p));
    record("kid-analytic", worst, c.tol_kid_analytic);
  }
  {
    const MetricField b_fd = b.without_jets();
    double worst = 0;
    for (const auto& V : kids)
      for (const auto& p : pts) worst = std::max(worst, kid_residual_norm(b_fd, V, p));
    record("kid-fd", worst, c.tol_kid_fd);
  }
  {
    double worst = 0;
    for (const auto& Y : killing_basis(n))
      for (const auto& p : pts) worst = std::max(worst, killing_residual_norm(b, Y, p));
    record("killing", worst, c.tol_killing);
  }

  const std::vector<double> vs{0.0, 0.6, std::cos(0.1), std::cos(0.001)};
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 0);
  {
    double worst = 0;
    for (double v : vs) {
      const LorentzMatrix L = boost(e1, v);
      const double g2 = L.gamma() * L.gamma();
      worst = std::max(worst, lorentz_defect(L) / g2);
      if (!is_proper_orthochronous(L)) worst = std::max(worst, 1.0);
    }
    record("lorentz-defect", worst, c.tol_lorentz);
  }
  {
    double worst = 0;
    for (double v : vs) {
      const LorentzMatrix L = boost(e1, v);
      const double g2 = L.gamma() * L.gamma();
      const Eigen::MatrixXd A = conjugate_boost(L, rotation_pi(n, 0, 1)).M;
      const Eigen::MatrixXd B = conjugated_half_turn_closed_form(n, v, L.gamma());
      worst = std::max(worst, (A - B).cwiseAbs().maxCoeff() / g2);
    }
    record("lorentz-conjugation", worst, c.tol_lorentz);
  }
  {
    double worst = 0;
    for (double v1 : vs)
      for (double v2 : vs) {
        const LorentzMatrix C12 = compose(boost(e1, v1), boost(e1, v2));
        const double w = (v1 + v2) / (1.0 + v1 * v2);
        worst = std::max(worst, std::abs(-C12.M(0, 1) / C12.M(0, 0) - w));
      }
    record("velocity-addition", worst, c.tol_addition);
  }
  {
    const Eigen::VectorXd axis = Eigen::VectorXd::Unit(n, n - 1);
    double worst = 0;
    for (double eps : {0.3, 0.1, 0.03}) {
      const auto [v, gamma] = cap_velocity(eps);
      const LorentzMatrix L = boost(axis, v, gamma);
      for (int k = 0; k < 8; ++k) {
        const Eigen::VectorXd m = rng.unit_vector(n - 1);
        Eigen::VectorXd x(n);
        x.head(n - 1) = std::sin(eps) * m;
        x[n - 1] = std::cos(eps);
        const Eigen::VectorXd y = act_on_sphere(L, x / x.norm());
        worst = std::max(worst, std::abs(y[n - 1]));
        worst = std::max(worst, std::abs(y.norm() - 1.0));
      }
    }
    record("cap-law", worst, c.tol_cap);
  }
  {
    double worst = 0;
    for (long k = 0; k < c.graph_count; ++k) {
      const GraphHypersurface h = random_spacelike_graph(n, mix_seed(c.seed, 1000 + k));
      const InitialDataSet data = graph_initial_data(h);
      for (long j = 0; j < c.graph_samples; ++j) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
        worst = std::max(worst, constraint_residual(data, make_euclidean(x)));
      }
    }
    record("graphs-vacuum", worst, c.tol_graph);
  }
  {
    const GraphHypersurface h = hyperboloid_graph(n);
    double worst = 0;
    for (int j = 0; j < 5; ++j) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.5, 1.5);
      const GraphPointData gd = graph_data(h, make_euclidean(x));
      worst = std::max(worst, (gd.K + gd.g).cwiseAbs().maxCoeff());
    }
    record("hyperboloid", worst, c.tol_hyperboloid);
  }
  {
    const SphereQuadrature quad =
        auto_quadrature(n - 1, c.quadrature_level, c.mc_samples, c.seed);
    const MassResult res = energy_momentum(hyperbolic_metric(Chart::Ball, n), quad,
                                           RadiusSchedule::dyadic());
    double worst = res.value.m.cwiseAbs().maxCoeff();
    if (res.diverged) worst = std::max(worst, 1.0);
    record("mass-zero", worst, std::max(c.tol_mass, 4.0 * res.mc_standard_error));
  }

  Json results;
  results["suites"] = suites;
  results["violations"] = violations;
  report["results"] = results;
  const bool pass = violations.empty();
  report["pass"] = pass;
  report["exit_code"] = pass ? 0 : 2;
  write_report_file(opt, report);

  RunResult run;
  run.exit_code = pass ? 0 : 2;
  run.report = report;
  return run;
}

// ---------------------------------------------------------------- glue ----

struct GlueCfg {
  Json echo;
  int n;
  std::vector<double> base;
  double C, rho_decay, eta;
  long k_min, k_max;
  std::uint64_t seed;
};

GlueCfg parse_glue(const RunOptions& opt) {
  ConfigReader r("glue", load_raw(opt));
  r.reject("tolerance", "is not used; the scan reports classifications");
  GlueCfg c;
  c.n = static_cast<int>(r.integer("n", 5, 3, 12));
  c.seed = r.seed64("seed", 1);
  std::vector<double> def_base(c.n + 1, 0.0);
  def_base[0] = -1.0;
  def_base[1] = 2.0;
  c.base = r.vector("base", def_base, c.n + 1);
  c.C = r.number("C", 1.0, 0.0, 1e6);
  c.rho_decay = r.number("rho_decay", 0.5 * c.n - 0.1, -10.0, 10.0);
  c.eta = r.number("eta", 0.1, 0.0, 10.0);
  c.k_min = r.integer("grid_k_min", 0, 0, 40);
  c.k_max = r.integer("grid_k_max", 20, c.k_min, 40);
  c.echo = r.finish();
  return c;
}

RunResult run_glue(const RunOptions& opt) {
  Stopwatch watch;
  const GlueCfg c = parse_glue(opt);
  Json report;
  report["command"] = "glue";
  report["config"] = c.echo;

  const EnergyMomentum base(
      Eigen::Map<const Eigen::VectorXd>(c.base.data(), c.n + 1));
  const MomentumFamily fam = power_family(base, c.C, c.rho_decay, c.eta, c.seed);
  std::vector<double> grid;
  for (long k = c.k_min; k <= c.k_max; ++k) grid.push_back(std::ldexp(kPi / 4.0, -static_cast<int>(k)));
  const GluingScenario s = make_scenario(fam, fam, grid);

  const ThresholdScan scan = epsilon_threshold(s);
  const double c_eff = effective_constant(s);
  const bool strict_o = fam.realized_decay() > 0.5 * c.n;

  Json results;
  results["found"] = scan.found;
  results["eps0"] = scan.found ? Json(scan.eps0) : Json();
  results["margin"] = scan.found ? Json(scan.margin) : Json();
  results["effective_constant"] = c_eff;
  results["realized_decay"] = fam.realized_decay();
  results["strict_o"] = strict_o;
  results["diagnostics"] = scan.diagnostics;
  Json rows = Json::array();
  for (const auto& row : scan.rows) {
    Json j;
    j["eps"] = row.eps;
    j["v"] = row.v;
    j["gamma"] = row.gamma;
    j["m"] = json_vec(row.glued.m);
    j["q"] = row.q;
    j["star_norm"] = row.star_norm;
    j["bound"] = row.bound;
    j["class"] = causal_name(row.cls);
    rows.push_back(j);
  }
  results["rows"] = rows;
  report["results"] = results;

  const int exit_code = scan.found ? 0 : (strict_o ? 2 : 4);
  report["pass"] = scan.found;
  report["exit_code"] = exit_code;

  if (!opt.out_dir.empty()) {
    std::string csv = "eps,v,gamma";
    for (int i = 0; i <= c.n; ++i) csv += ",m_" + std::to_string(i);
    csv += ",q,star_norm,bound\n";
    for (const auto& row : scan.rows) {
      std::vector<double> cells{row.eps, row.v, row.gamma};
      for (int i = 0; i <= c.n; ++i) cells.push_back(row.glued.m[i]);
      cells.push_back(row.q);
      cells.push_back(row.star_norm);
      cells.push_back(row.bound);
      csv += csv_row(cells);
    }
    write_text_file((std::filesystem::path(opt.out_dir) / "scan.csv").string(), csv);
  }
  write_report_file(opt, report);
  watch.report("glue total");

  RunResult run;
  run.exit_code = exit_code;
  run.report = report;
  return run;
}

// --------------------------------------------------------- constraints ----

struct ConstraintsCfg {
  Json echo;
  int n;
  std::string source;
  long samples;
  double amplitude, sigma, tolerance, tol_shift;
  std::uint64_t seed;
};

ConstraintsCfg parse_constraints(const RunOptions& opt) {
  ConfigReader r("constraints", load_raw(opt));
  ConstraintsCfg c;
  c.n = static_cast<int>(r.integer("n", 3, 3, 12));
  c.source = r.choice("source", "hyperboloid", {"hyperboloid", "random-graph", "perturbed"});
  c.seed = r.seed64("seed", 1);
  c.samples = r.integer("samples", 20, 1, 100000);
  const double def_tol = c.source == "random-graph" ? 1e-5 : 1e-8;
  c.tolerance = r.number("tolerance", def_tol, 1e-16, 1.0);
  c.tol_shift = r.number("tol_shift", 1e-10, 1e-16, 1.0);
  if (c.source == "perturbed") {
    c.amplitude = r.number("amplitude", 1e-3, -1.0, 1.0);
    c.sigma = r.number("sigma", static_cast<double>(c.n), 0.5, 20.0);
  }
  c.echo = r.finish();
  return c;
}

RunResult run_constraints(const RunOptions& opt) {
  Stopwatch watch;
  const ConstraintsCfg c = parse_constraints(opt);
  const int n = c.n;
  Json report;
  report["command"] = "constraints";
  report["config"] = c.echo;

  DetRng rng(mix_seed(c.seed, 0x636f6e73ULL));
  InitialDataSet data = [&] {
    if (c.source == "hyperboloid") return graph_initial_data(hyperboloid_graph(n));
    if (c.source == "random-graph")
      return graph_initial_data(random_spacelike_graph(n, c.seed));
    return InitialDataSet{perturbed_hyperbolic(n, c.amplitude, c.sigma, c.seed),
                          zero_tensor(Chart::Ball, n), ah_lambda(n)};
  }();

  auto sample_point = [&]() {
    Eigen::VectorXd x(n);
    if (c.source == "perturbed") {
      x = rng.unit_vector(n) * (0.9 * std::pow(rng.uniform01(), 1.0 / n));
      return make_ball(x);
    }
    const double box = c.source == "hyperboloid" ? 2.0 : 1.0;
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-box, box);
    return make_euclidean(x);
  };

  const bool ah = c.source == "perturbed";
  const InitialDataSet shifted = ah ? ah_to_ae_shift(data) : data;

  double worst_rho = 0, worst_j = 0, worst_shift = 0;
  long dec_holds = 0;
  std::string csv = "";
  for (int i = 0; i < n; ++i) csv += "x_" + std::to_string(i + 1) + ",";
  csv += "rho,J_norm,dec\n";
  for (long k = 0; k < c.samples; ++k) {
    const ChartPoint p = sample_point();
    const ConstraintValues cv = constraint_operator(data, p);
    const double jn = cv.J.norm();
    worst_rho = std::max(worst_rho, std::abs(cv.rho));
    worst_j = std::max(worst_j, jn);
    const bool dec = dec_check(cv, data.g.value(p));
    dec_holds += dec ? 1 : 0;
    if (ah) {
      const ConstraintValues sv = constraint_operator(shifted, p);
      worst_shift = std::max(worst_shift, std::abs(sv.rho - cv.rho));
      worst_shift = std::max(worst_shift, (sv.J - cv.J).cwiseAbs().maxCoeff());
    }
    std::vector<double> cells;
    for (int i = 0; i < n; ++i) cells.push_back(p.x[i]);
    cells.push_back(cv.rho);
    cells.push_back(jn);
    cells.push_back(dec ? 1.0 : 0.0);
    csv += csv_row(cells);
  }

  Json results;
  results["worst_rho"] = worst_rho;
  results["worst_J_norm"] = worst_j;
  results["worst_residual"] = worst_rho + worst_j;
  results["dec_holds"] = dec_holds;
  results["samples"] = c.samples;
  results["shift_worst"] = ah ? Json(worst_shift) : Json();
  report["results"] = results;

  const bool pass = ah ? worst_shift <= c.tol_shift
                       : (worst_rho + worst_j) <= c.tolerance;
  report["pass"] = pass;
  report["exit_code"] = pass ? 0 : 2;

  if (!opt.out_dir.empty())
    write_text_file((std::filesystem::path(opt.out_dir) / "sweep.csv").string(), csv);
  write_report_file(opt, report);
  watch.report("constraints total");

  RunResult run;
  run.exit_code = pass ? 0 : 2;
  run.report = report;
  return run;
}

// ---------------------------------------------------------- boost-demo ----

struct BoostCfg {
  Json echo;
  int n;
  bool from_eps;
  double eps, v;
  std::vector<double> direction, momentum;
  double tolerance;
  std::uint64_t seed;
};

BoostCfg parse_boost(const RunOptions& opt) {
  ConfigReader r("boost-demo", load_raw(opt));
  BoostCfg c;
  c.n = static_cast<int>(r.integer("n", 3, 3, 12));
  c.seed = r.seed64("seed", 1);
  c.tolerance = r.number("tolerance", 1e-10, 1e-16, 1.0);
  if (r.present("v") && r.present("eps"))
    throw ConfigError("boost-demo: give either \"v\" or \"eps\", not both");
  c.from_eps = !r.present("v");
  c.v = r.number("v", 0.0, 0.0, 1.0 - 1e-15);
  c.eps = r.number("eps", 0.3, 1e-12, kPi / 2.0);
  std::vector<double> def_dir(c.n, 0.0);
  def_dir.back() = 1.0;
  c.direction = r.vector("direction", def_dir, c.n);
  std::vector<double> def_m(c.n + 1, 0.0);
  def_m[0] = -1.0;
  def_m.back() = 2.0;
  c.momentum = r.vector("momentum", def_m, c.n + 1);
  c.echo = r.finish();
  return c;
}

RunResult run_boost_demo(const RunOptions& opt) {
  Stopwatch watch;
  const BoostCfg c = parse_boost(opt);
  const int n = c.n;
  Json report;
  report["command"] = "boost-demo";
  report["config"] = c.echo;

  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(c.direction.data(), n);
  if (d.norm() == 0) throw ConfigError("boost-demo: direction must be nonzero");
  d /= d.norm();

  double v = c.v, gamma = 0;
  if (c.from_eps) {
    std::tie(v, gamma) = cap_velocity(c.eps);
  } else {
    gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
  }
  const LorentzMatrix L = boost(d, v, gamma);
  const LorentzMatrix R = rotation_pi_about(d);
  const LorentzMatrix conj = conjugate_boost(L, R);
  const double g2 = gamma * gamma;

  const EnergyMomentum m(Eigen::Map<const Eigen::VectorXd>(c.momentum.data(), n + 1));
  const EnergyMomentum bm = act_on_momentum(L, m);

  double worst = lorentz_defect(L) / g2;
  worst = std::max(worst, lorentz_defect(conj) / (g2 * g2));
  const double q_drift = std::abs(bm.q() - m.q()) / (1.0 + std::abs(m.q()));
  worst = std::max(worst, q_drift / g2);

  Json results;
  results["v"] = v;
  results["gamma"] = gamma;
  results["defect"] = lorentz_defect(L);
  results["proper_orthochronous"] = is_proper_orthochronous(L);
  results["momentum_in"] = json_vec(m.m);
  results["momentum_out"] = json_vec(bm.m);
  results["class_in"] = causal_name(causal_character(m));
  results["class_out"] = causal_name(causal_character(bm));
  results["q_in"] = m.q();
  results["q_out"] = bm.q();

  if (c.from_eps) {
    DetRng rng(mix_seed(c.seed, 0x626f6f73ULL));
    // orthonormal completion of d: project seeded directions
    double cap_worst = 0;
    for (int k = 0; k < 8; ++k) {
      Eigen::VectorXd t = rng.unit_vector(n);
      t -= t.dot(d) * d;
      if (t.norm() < 1e-3) { --k; continue; }
      t /= t.norm();
      Eigen::VectorXd x = std::sin(c.eps) * t + std::cos(c.eps) * d;
      const Eigen::VectorXd y = act_on_sphere(L, x / x.norm());
      cap_worst = std::max(cap_worst, std::abs(y.dot(d)));
      cap_worst = std::max(cap_worst, std::abs(y.norm() - 1.0));
    }
    results["cap_equator_worst"] = cap_worst;
    worst = std::max(worst, cap_worst);
  }

  report["results"] = results;
  const bool pass = worst <= c.tolerance;
  report["pass"] = pass;
  report["exit_code"] = pass ? 0 : 2;
  write_report_file(opt, report);
  watch.report("boost-demo total");

  RunResult run;
  run.exit_code = pass ? 0 : 2;
  run.report = report;
  return run;
}

}  // namespace

Json effective_config(const std::string& command, const RunOptions& opt) {
  if (command == "mass") return parse_mass(opt).echo;
  if (command == "verify") return parse_verify(opt).echo;
  if (command == "glue") return parse_glue(opt).echo;
  if (command == "constraints") return parse_constraints(opt).echo;
  if (command == "boost-demo") return parse_boost(opt).echo;
  throw ConfigError("unknown command: " + command);
}

RunResult cmd_mass(const RunOptions& opt) { return run_mass(opt); }
RunResult cmd_verify(const RunOptions& opt) { return run_verify(opt); }
RunResult cmd_glue(const RunOptions& opt) { return run_glue(opt); }
RunResult cmd_constraints(const RunOptions& opt) { return run_constraints(opt); }
RunResult cmd_boost_demo(const RunOptions& opt) { return run_boost_demo(opt); }

RunResult run_command(const std::string& command, const RunOptions& opt) {
  if (command == "mass") return cmd_mass(opt);
  if (command == "verify") return cmd_verify(opt);
  if (command == "glue") return cmd_glue(opt);
  if (command == "constraints") return cmd_constraints(opt);
  if (command == "boost-demo") return cmd_boost_demo(opt);
  throw ConfigError("unknown command: " + command);
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace ahmass
