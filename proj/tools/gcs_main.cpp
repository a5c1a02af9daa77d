// Command-line front end: builds coherent series for the monolayer and
// bilayer Landau problems and emits densities, currents, energies,
// uncertainties, fidelity traces, potential profiles, and raw
// coefficients as CSV/JSON.  All numeric output uses 17-significant-digit
// decimals and fixed summation order, so a given configuration always
// produces byte-identical files.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gcs/coherent.hpp"
#include "gcs/dynamics.hpp"
#include "gcs/errors.hpp"
#include "gcs/fields.hpp"
#include "gcs/format.hpp"
#include "gcs/ladder.hpp"
#include "gcs/observables.hpp"
#include "gcs/oscillator.hpp"
#include "gcs/spinors.hpp"

namespace {

using nlohmann::json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kind = "monolayer";
  double omega = 1.0;
  double k = 1.0;
  int branch = +1;
  double r = 1.0;
  double theta = 0.0;
  std::string definition = "BG";
  std::string f_table;  // two-column weight table; empty = harmonic weight
  double tol = 1e-12;
  double x_min = 0.0;
  double x_max = 0.0;
  int points = 1001;
  bool grid_set = false;
  double t_max = 25.0;
  int samples = 2001;
  double threshold = 0.8;
  double time_point = 0.0;
  std::string component = "both";
  int n_max = 10;
  int extremal = -1;  // negative: construction default
  double eps1 = 0.0;
  double eps2 = -1.0;  // negative: use omega
  double r_min = 0.0;
  double r_max = 5.0;
  int r_points = 0;  // > 0 selects sweep mode for energy/uncertainty
  std::string output;
  std::string config;
};

bool passed(const CLI::App* sub, const std::string& flag) {
  return sub != nullptr && sub->count(flag) > 0;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open config file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& error) {
    throw std::invalid_argument("config " + path +
                                " is not valid JSON: " + error.what());
  }
  return doc;
}

// Config file first, explicit flags on top.
void apply_config(Options& opt, const json& cfg, const CLI::App* sub) {
  auto take = [&](const char* key, const std::string& flag, auto& slot) {
    if (cfg.contains(key) && !passed(sub, flag)) {
      cfg.at(key).get_to(slot);
    }
  };
  take("kind", "--kind", opt.kind);
  take("omega", "--omega", opt.omega);
  take("k", "--k", opt.k);
  take("branch", "--branch", opt.branch);
  if (cfg.contains("alpha")) {
    const json& alpha = cfg.at("alpha");
    if (!alpha.is_object()) {
      throw std::invalid_argument(
          "config alpha must be an object {\"r\": ..., \"theta\": ...}");
    }
    if (alpha.contains("r") && !passed(sub, "--r")) {
      alpha.at("r").get_to(opt.r);
    }
    if (alpha.contains("theta") && !passed(sub, "--theta")) {
      alpha.at("theta").get_to(opt.theta);
    }
  }
  take("definition", "--definition", opt.definition);
  take("f_table", "--f-table", opt.f_table);
  take("tol", "--tol", opt.tol);
  if (cfg.contains("grid")) {
    const json& grid = cfg.at("grid");
    if (grid.contains("x_min") && !passed(sub, "--x-min")) {
      grid.at("x_min").get_to(opt.x_min);
      opt.grid_set = true;
    }
    if (grid.contains("x_max") && !passed(sub, "--x-max")) {
      grid.at("x_max").get_to(opt.x_max);
      opt.grid_set = true;
    }
    if (grid.contains("points") && !passed(sub, "--points")) {
      grid.at("points").get_to(opt.points);
    }
  }
  if (cfg.contains("time")) {
    const json& time = cfg.at("time");
    if (time.contains("t_max") && !passed(sub, "--t-max")) {
      time.at("t_max").get_to(opt.t_max);
    }
    if (time.contains("samples") && !passed(sub, "--samples")) {
      time.at("samples").get_to(opt.samples);
    }
  }
  take("threshold", "--threshold", opt.threshold);
  take("time_point", "--time", opt.time_point);
  take("component", "--component", opt.component);
  take("n_max", "--n-max", opt.n_max);
  take("extremal", "--extremal", opt.extremal);
  take("eps1", "--eps1", opt.eps1);
  take("eps2", "--eps2", opt.eps2);
  if (cfg.contains("sweep")) {
    const json& sweep = cfg.at("sweep");
    if (sweep.contains("r_min") && !passed(sub, "--r-min")) {
      sweep.at("r_min").get_to(opt.r_min);
    }
    if (sweep.contains("r_max") && !passed(sub, "--r-max")) {
      sweep.at("r_max").get_to(opt.r_max);
    }
    if (sweep.contains("points") && !passed(sub, "--r-points")) {
      sweep.at("points").get_to(opt.r_points);
    }
  }
  take("output", "--output", opt.output);
}

gcs::LayerKind parse_kind(const std::string& kind) {
  if (kind == "monolayer") return gcs::LayerKind::Monolayer;
  if (kind == "bilayer") return gcs::LayerKind::Bilayer;
  throw std::invalid_argument("unknown kind \"" + kind +
                              "\" (expected monolayer or bilayer)");
}

gcs::UnitSystem build_units(const Options& opt) {
  if (!(opt.omega > 0.0)) {
    throw std::invalid_argument("omega must be positive");
  }
  if (opt.branch != 1 && opt.branch != -1) {
    throw std::invalid_argument("branch must be +1 or -1");
  }
  gcs::UnitSystem units;
  units.omega = opt.omega;
  units.k = opt.k;
  units.branch = opt.branch;
  return units;
}

// Two-column weight table: integer level, then f at that level; levels
// must start at 1 and be contiguous.  Blank lines and '#' comments are
// skipped.  Beyond the table the last value extends; exact zeros inside
// the table are the declared roots.
gcs::LadderSpec spec_from_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open weight table " + path);
  std::vector<double> values;  // values[i] = f(i + 1)
  std::vector<int> roots;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string::size_type hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    int level = 0;
    double value = 0.0;
    if (!(row >> level)) continue;  // blank or comment-only line
    if (!(row >> value)) {
      std::ostringstream msg;
      msg << path << ":" << line_number << ": expected \"level value\"";
      throw std::invalid_argument(msg.str());
    }
    if (level != static_cast<int>(values.size()) + 1) {
      std::ostringstream msg;
      msg << path << ":" << line_number << ": levels must be contiguous from 1"
          << " (got " << level << ", expected " << values.size() + 1 << ")";
      throw std::invalid_argument(msg.str());
    }
    values.push_back(value);
    if (std::fabs(value) < gcs::kRootEpsilon) roots.push_back(level);
  }
  if (values.empty()) {
    throw std::invalid_argument("weight table " + path + " has no rows");
  }
  if (std::fabs(values.back()) < gcs::kRootEpsilon) {
    throw std::invalid_argument(
        "weight table " + path +
        " ends on a zero; the weight beyond the table would vanish "
        "identically");
  }
  auto f = [values](int n) -> double {
    if (n <= 0) return 0.0;
    if (n <= static_cast<int>(values.size())) return values[n - 1];
    return values.back();
  };
  return gcs::LadderSpec::oscillator_with_f(f, roots);
}

gcs::LadderSpec build_spec(const Options& opt) {
  if (opt.f_table.empty()) return gcs::LadderSpec::oscillator();
  return spec_from_table(opt.f_table);
}

gcs::CoherentSeries build_series(const Options& opt) {
  gcs::LadderSpec spec = build_spec(opt);
  gcs::LayerKind kind = parse_kind(opt.kind);
  std::complex<double> alpha = std::polar(opt.r, opt.theta);
  gcs::CoherentSeries series;
  if (opt.definition == "BG") {
    series = gcs::bgcs(spec, kind, alpha, opt.tol);
  } else if (opt.definition == "GP") {
    std::optional<int> extremal;
    if (opt.extremal >= 0) extremal = opt.extremal;
    series = gcs::gpcs(spec, kind, alpha, opt.tol, extremal);
  } else if (opt.definition == "MU") {
    series = gcs::mucs(spec, kind, alpha, opt.tol);
  } else {
    throw std::invalid_argument("unknown definition \"" + opt.definition +
                                "\" (expected BG, GP, or MU)");
  }
  if (opt.time_point != 0.0) series = gcs::evolve(series, opt.time_point);
  return series;
}

std::vector<double> build_grid(const Options& opt, const gcs::UnitSystem& units) {
  double lo = opt.x_min;
  double hi = opt.x_max;
  if (!opt.grid_set) {
    gcs::QuadratureRule rule = gcs::QuadratureRule::standard(units, opt.r);
    lo = rule.x_min;
    hi = rule.x_max;
  }
  if (!(hi > lo)) {
    throw std::invalid_argument("grid needs x_max > x_min");
  }
  if (opt.points < 2) {
    throw std::invalid_argument("grid needs at least 2 points");
  }
  std::vector<double> xs(opt.points);
  for (int i = 0; i < opt.points; ++i) {
    xs[i] = lo + (hi - lo) * i / (opt.points - 1);
  }
  return xs;
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open output file " + path);
  out << content;
  if (!out) throw IoFailure("failed writing output file " + path);
}

std::string sidecar_path(const std::string& output) {
  const std::string csv = ".csv";
  if (output.size() > csv.size() &&
      output.compare(output.size() - csv.size(), csv.size(), csv) == 0) {
    return output.substr(0, output.size() - csv.size()) + ".quasiperiods.json";
  }
  return output + ".quasiperiods.json";
}

// --- subcommand bodies ----------------------------------------------------

int run_spectrum(const Options& opt) {
  gcs::UnitSystem units = build_units(opt);
  gcs::LayerKind kind = parse_kind(opt.kind);
  if (opt.n_max < 0) throw std::invalid_argument("n-max must be >= 0");
  std::ostringstream out;
  out << "n,energy\n";
  for (int n = 0; n <= opt.n_max; ++n) {
    out << n << "," << gcs::format17(gcs::energy(kind, n, units)) << "\n";
  }
  write_text(opt.output, out.str());
  return 0;
}

int run_density(const Options& opt) {
  gcs::UnitSystem units = build_units(opt);
  gcs::CoherentSeries series = build_series(opt);
  std::vector<double> xs = build_grid(opt, units);
  gcs::DensityGrid grid = gcs::probability_density(series, xs, units);
  write_text(opt.output, gcs::density_to_csv(grid));
  return 0;
}

int run_current(const Options& opt) {
  gcs::UnitSystem units = build_units(opt);
  gcs::CoherentSeries series = build_series(opt);
  std::vector<double> xs = build_grid(opt, units);
  gcs::CurrentDensities currents = gcs::current_density(series, xs, units);
  if (opt.component == "x") {
    write_text(opt.output, gcs::density_to_csv(currents.jx));
  } else if (opt.component == "y") {
    write_text(opt.output, gcs::density_to_csv(currents.jy));
  } else if (opt.component == "both") {
    std::ostringstream out;
    out << "x,jx,jy\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << gcs::format17(xs[i]) << ","
          << gcs::format17(currents.jx.values[i]) << ","
          << gcs::format17(currents.jy.values[i]) << "\n";
    }
    write_text(opt.output, out.str());
  } else {
    throw std::invalid_argument("component must be x, y, or both");
  }
  return 0;
}

int run_energy(const Options& opt) {
  gcs::UnitSystem units = build_units(opt);
  std::ostringstream out;
  out << "r,energy\n";
  if (opt.r_points > 0) {
    if (opt.r_points < 2) {
      throw std::invalid_argument("sweep needs at least 2 points");
    }
    for (int i = 0; i < opt.r_points; ++i) {
      Options point = opt;
      point.r = opt.r_min + (opt.r_max - opt.r_min) * i / (opt.r_points - 1);
      gcs::CoherentSeries series = build_series(point);
      out << gcs::format17(point.r) << ","
          << gcs::format17(gcs::mean_energy(series, units)) << "\n";
    }
  } else {
    gcs::CoherentSeries series = build_series(opt);
    out << gcs::format17(opt.r) << ","
        << gcs::format17(gcs::mean_energy(series, units)) << "\n";
  }
  write_text(opt.output, out.str());
  return 0;
}

int run_uncertainty(const Options& opt) {
  build_units(opt);  // validate unit parameters
  std::ostringstream out;
  out << "r,sigma_z,sigma_p,product\n";
  auto emit = [&out](double r, const gcs::ZPMoments& moments) {
    out << gcs::format17(r) << "," << gcs::format17(moments.sigma_z()) << ","
        << gcs::format17(moments.sigma_p()) << ","
        << gcs::format17(moments.product()) << "\n";
  };
  if (opt.r_points > 0) {
    if (opt.r_points < 2) {
      throw std::invalid_argument("sweep needs at least 2 points");
    }
    for (int i = 0; i < opt.r_points; ++i) {
      Options point = opt;
      point.r = opt.r_min + (opt.r_max - opt.r_min) * i / (opt.r_points - 1);
      emit(point.r, gcs::zp_moments(build_series(point)));
    }
  } else {
    emit(opt.r, gcs::zp_moments(build_series(opt)));
  }
  write_text(opt.output, out.str());
  return 0;
}

int run_fidelity(const Options& opt) {
  build_units(opt);
  gcs::CoherentSeries series = build_series(opt);
  gcs::FidelityTrace trace =
      gcs::quasiperiod_scan(series, opt.t_max, opt.samples, opt.threshold);
  write_text(opt.output, gcs::trace_to_csv(trace));
  if (!opt.output.empty() && opt.output != "-") {
    write_text(sidecar_path(opt.output), gcs::quasiperiods_to_json(trace));
  }
  return 0;
}

int run_potentials(const Options& opt) {
  gcs::UnitSystem units = build_units(opt);
  gcs::LayerKind kind = parse_kind(opt.kind);
  std::vector<double> xs = build_grid(opt, units);
  gcs::MagneticProfile profile = units.constant_profile();
  std::ostringstream out;
  if (kind == gcs::LayerKind::Monolayer) {
    out << "x,w,v_minus,v_plus\n";
    for (double x : xs) {
      gcs::MonolayerFields fields = gcs::monolayer_fields(profile, x, units.k);
      out << gcs::format17(x) << "," << gcs::format17(fields.w) << ","
          << gcs::format17(fields.v_minus) << ","
          << gcs::format17(fields.v_plus) << "\n";
    }
  } else {
    double eps2 = opt.eps2 < 0.0 ? units.omega : opt.eps2;
    out << "x,eta,beta,gamma,v_minus,v_plus\n";
    for (double x : xs) {
      try {
        gcs::BilayerFields fields =
            gcs::bilayer_fields(profile, x, units.k, opt.eps1, eps2);
        out << gcs::format17(x) << "," << gcs::format17(fields.eta) << ","
            << gcs::format17(fields.beta) << ","
            << gcs::format17(fields.gamma) << ","
            << gcs::format17(fields.v_minus) << ","
            << gcs::format17(fields.v_plus) << "\n";
      } catch (const gcs::DegenerateEta&) {
        // the chain is singular where eta vanishes; skip that grid point
      }
    }
  }
  write_text(opt.output, out.str());
  return 0;
}

int run_coefficients(const Options& opt) {
  build_units(opt);
  gcs::CoherentSeries series = build_series(opt);
  write_text(opt.output, gcs::series_to_json(series));
  return 0;
}

int run_check(const Options& opt) {
  gcs::UnitSystem units = build_units(opt);
  gcs::LadderSpec spec = build_spec(opt);
  gcs::LayerKind kind = parse_kind(opt.kind);
  std::complex<double> alpha = std::polar(opt.r, opt.theta);
  std::ostringstream out;
  bool all_pass = true;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    out << (ok ? "PASS" : "FAIL") << " " << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
    all_pass = all_pass && ok;
  };

  gcs::CoherentSeries series = gcs::bgcs(spec, kind, alpha, opt.tol);
  double slack =
      10.0 * std::max(series.truncation.tail_bound, gcs::kTailFloor);

  {  // the down action reproduces alpha times the state on the support
    double worst = 0.0;
    for (int n = series.base_index; n < series.max_index(); ++n) {
      gcs::LadderTerm term =
          gcs::action_coefficient(spec, gcs::Direction::Down, n + 1);
      std::complex<double> image = term.coefficient * series.at(n + 1);
      worst = std::max(worst, std::abs(image - alpha * series.at(n)));
    }
    std::ostringstream detail;
    detail << "max deviation " << gcs::format17(worst) << ", allowed "
           << gcs::format17(slack);
    report("eigenvector-property", worst <= slack, detail.str());
  }

  if (spec.is_canonical_oscillator()) {
    gcs::CoherentSeries gp = gcs::gpcs(spec, kind, alpha, opt.tol);
    gcs::CoherentSeries mu = gcs::mucs(spec, kind, alpha, opt.tol);
    double worst = 0.0;
    bool aligned = gp.base_index == series.base_index &&
                   mu.base_index == series.base_index &&
                   gp.coefficients.size() == series.coefficients.size() &&
                   mu.coefficients.size() == series.coefficients.size();
    if (aligned) {
      for (std::size_t i = 0; i < series.coefficients.size(); ++i) {
        worst = std::max(worst, std::abs(series.coefficients[i] -
                                         gp.coefficients[i]));
        worst = std::max(worst, std::abs(series.coefficients[i] -
                                         mu.coefficients[i]));
      }
    }
    std::ostringstream detail;
    detail << "max coefficient deviation " << gcs::format17(worst);
    report("definitions-coincide", aligned && worst <= 1e-12, detail.str());
  } else {
    out << "SKIP definitions-coincide (deformed weight)\n";
  }

  {
    double deviation = std::fabs(series.norm_squared() - 1.0);
    report("unit-norm", deviation <= 1e-14,
           "|norm^2 - 1| = " + gcs::format17(deviation));
  }

  {
    gcs::QuadratureRule rule = gcs::QuadratureRule::standard(units, opt.r);
    std::vector<double> xs(rule.points);
    for (int i = 0; i < rule.points; ++i) {
      xs[i] =
          rule.x_min + (rule.x_max - rule.x_min) * i / (rule.points - 1);
    }
    gcs::DensityGrid grid = gcs::probability_density(series, xs, units);
    double h = (rule.x_max - rule.x_min) / (rule.points - 1);
    gcs::KahanSum total;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      double weight = (i == 0 || i + 1 == grid.values.size()) ? 0.5 : 1.0;
      total.add(weight * grid.values[i]);
    }
    double integral = total.value() * h;
    report("density-normalization", std::fabs(integral - 1.0) <= 1e-8,
           "integral = " + gcs::format17(integral));
  }

  {
    double f0 = gcs::fidelity(series, 0.0);
    report("fidelity-at-zero", f0 == 1.0, "F(0) = " + gcs::format17(f0));
  }

  {
    bool ok = true;
    std::string detail;
    try {
      double product = gcs::uncertainty_product(series);
      ok = product >= 0.5 - 1e-12;
      detail = "product = " + gcs::format17(product);
    } catch (const gcs::OracleMismatch& error) {
      ok = false;
      detail = error.what();
    }
    report("uncertainty-floor", ok, detail);
  }

  {
    gcs::QuadratureSpread spread = gcs::quadrature_spread(series, spec);
    bool ok = spread.commutator_half > 0.0 &&
              spread.dq * spread.dp >= spread.commutator_half - 1e-12;
    std::ostringstream detail;
    detail << "dQ dP = " << gcs::format17(spread.dq * spread.dp)
           << ", |<commutator>|/2 = "
           << gcs::format17(spread.commutator_half);
    report("quadrature-commutator", ok, detail.str());
  }

  write_text(opt.output, out.str());
  return all_pass ? 0 : 2;
}

int dispatch(const std::string& command, const Options& opt) {
  if (command == "spectrum") return run_spectrum(opt);
  if (command == "density") return run_density(opt);
  if (command == "current") return run_current(opt);
  if (command == "energy") return run_energy(opt);
  if (command == "uncertainty") return run_uncertainty(opt);
  if (command == "fidelity") return run_fidelity(opt);
  if (command == "potentials") return run_potentials(opt);
  if (command == "coefficients") return run_coefficients(opt);
  if (command == "check") return run_check(opt);
  throw std::invalid_argument("unknown command \"" + command + "\"");
}

// Register the options shared by every series-building subcommand.
void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--kind", opt.kind, "Layer kind: monolayer or bilayer");
  sub->add_option("--omega", opt.omega, "Cyclotron frequency (positive)");
  sub->add_option("--k", opt.k, "Wave number of the plane-wave factor");
  sub->add_option("--branch", opt.branch, "Energy branch: +1 or -1");
  sub->add_option("--r", opt.r, "Eigenvalue modulus |alpha|");
  sub->add_option("--theta", opt.theta, "Eigenvalue phase arg(alpha)");
  sub->add_option("--definition", opt.definition,
                  "Series definition: BG, GP, or MU");
  sub->add_option("--f-table", opt.f_table,
                  "Two-column weight table (level, f); default harmonic");
  sub->add_option("--tol", opt.tol, "Truncation tolerance on the tail");
  sub->add_option("--extremal", opt.extremal,
                  "GP only: annihilated level to displace (0 or a root)");
  sub->add_option("--output", opt.output, "Output file (default stdout)");
  sub->add_option("--config", opt.config,
                  "JSON config; explicit flags override its values");
}

void add_grid(CLI::App* sub, Options& opt) {
  auto* x_min = sub->add_option("--x-min", opt.x_min, "Grid start");
  auto* x_max = sub->add_option("--x-max", opt.x_max, "Grid end");
  sub->add_option("--points", opt.points, "Grid point count");
  auto mark = [&opt]() { opt.grid_set = true; };
  x_min->each([mark](const std::string&) { mark(); });
  x_max->each([mark](const std::string&) { mark(); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coherent states for Dirac electrons in graphene under a constant "
      "magnetic field"};
  app.require_subcommand(1);

  Options opt;
  std::string run_config;
  int exit_code = 0;

  auto wire = [&](CLI::App* sub, int (*body)(const Options&)) {
    sub->callback([&, sub, body]() {
      Options merged = opt;
      if (!merged.config.empty()) {
        apply_config(merged, load_json_file(merged.config), sub);
      }
      exit_code = body(merged);
    });
  };

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Landau level energies as CSV");
  add_common(spectrum, opt);
  spectrum->add_option("--n-max", opt.n_max, "Highest level to list");
  wire(spectrum, run_spectrum);

  CLI::App* density =
      app.add_subcommand("density", "Probability density on an x grid");
  add_common(density, opt);
  add_grid(density, opt);
  density->add_option("--time", opt.time_point,
                      "Evolve the series to this dimensionless time");
  wire(density, run_density);

  CLI::App* current =
      app.add_subcommand("current", "Current density components on an x grid");
  add_common(current, opt);
  add_grid(current, opt);
  current->add_option("--time", opt.time_point,
                      "Evolve the series to this dimensionless time");
  current->add_option("--component", opt.component,
                      "Component to emit: x, y, or both");
  wire(current, run_current);

  CLI::App* energy =
      app.add_subcommand("energy", "Mean energy, single point or r sweep");
  add_common(energy, opt);
  energy->add_option("--r-min", opt.r_min, "Sweep start");
  energy->add_option("--r-max", opt.r_max, "Sweep end");
  energy->add_option("--r-points", opt.r_points,
                     "Sweep point count (0 = single point at --r)");
  wire(energy, run_energy);

  CLI::App* uncertainty = app.add_subcommand(
      "uncertainty", "z/p_z spreads and their product, single point or sweep");
  add_common(uncertainty, opt);
  uncertainty->add_option("--r-min", opt.r_min, "Sweep start");
  uncertainty->add_option("--r-max", opt.r_max, "Sweep end");
  uncertainty->add_option("--r-points", opt.r_points,
                          "Sweep point count (0 = single point at --r)");
  wire(uncertainty, run_uncertainty);

  CLI::App* fidelity = app.add_subcommand(
      "fidelity", "Fidelity trace over time with quasiperiod detection");
  add_common(fidelity, opt);
  fidelity->add_option("--t-max", opt.t_max, "Trace end time");
  fidelity->add_option("--samples", opt.samples, "Trace sample count");
  fidelity->add_option("--threshold", opt.threshold,
                       "Quasiperiod detection floor on F");
  wire(fidelity, run_fidelity);

  CLI::App* potentials = app.add_subcommand(
      "potentials", "Superpotential/intertwining profiles and partner wells");
  add_common(potentials, opt);
  add_grid(potentials, opt);
  potentials->add_option("--eps1", opt.eps1,
                         "Bilayer factorization energy (first)");
  potentials->add_option("--eps2", opt.eps2,
                         "Bilayer factorization energy (second, default omega)");
  wire(potentials, run_potentials);

  CLI::App* coefficients = app.add_subcommand(
      "coefficients", "Series coefficients as round-trippable JSON");
  add_common(coefficients, opt);
  wire(coefficients, run_coefficients);

  CLI::App* check = app.add_subcommand(
      "check", "Internal consistency battery; exit 2 on any failure");
  add_common(check, opt);
  wire(check, run_check);

  CLI::App* run = app.add_subcommand(
      "run", "Execute the command named in a JSON config file");
  run->add_option("--config", run_config, "JSON config with a \"command\" key")
      ->required();
  run->callback([&]() {
    json cfg = load_json_file(run_config);
    if (!cfg.contains("command")) {
      throw std::invalid_argument("config is missing the \"command\" key");
    }
    Options merged;  // defaults, then config; no overriding flags here
    apply_config(merged, cfg, nullptr);
    exit_code = dispatch(cfg.at("command").get<std::string>(), merged);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    int code = app.exit(error);
    return code == 0 ? 0 : 1;
  } catch (const IoFailure& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (const gcs::OracleMismatch& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return exit_code;
}
