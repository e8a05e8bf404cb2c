#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "knot_energy/continuum_energy.hpp"
#include "knot_energy/curve.hpp"
#include "knot_energy/errors.hpp"
#include "knot_energy/harness.hpp"
#include "knot_energy/io.hpp"
#include "knot_energy/sampling.hpp"

namespace knot_energy::cli {

namespace {

struct Config {
  std::string curve;
  std::size_t m = 0;
  std::vector<std::size_t> m_list{64, 128, 256, 512};
  std::size_t N = 512;
  std::size_t diagonal_skip = 1;
  std::size_t seeds = 20;
  double margin = 0.5;
  double tol = 1e-10;
  std::string family = "inversive";
  std::string in;
  std::string out = "-";
  std::string format = "csv";
};

void warn(std::ostream& err, const std::string& message) { err << nlohmann::json{{"warning", message}}.dump() << '\n'; }

void emit(const Config& config, std::ostream& out, const std::function<void(std::ostream&, Format)>& write) {
  const Format format = parse_format(config.format);
  std::ostringstream buffer;
  write(buffer, format);
  if (config.out == "-") {
    out << buffer.str();
    return;
  }
  std::ofstream file(config.out);
  if (!file) throw InvalidArgument("cannot write '" + config.out + "'");
  file << buffer.str();
  if (!file) throw InvalidArgument("failed writing '" + config.out + "'");
}

ParametricCurve curve_from(const Config& config) {
  if (config.curve.empty()) throw InvalidArgument("--curve is required");
  return named_curve(CurveDescriptor::parse(config.curve));
}

QuadratureSpec quadrature_from(const Config& config) {
  QuadratureSpec spec{config.N, config.diagonal_skip};
  spec.validate();
  return spec;
}

void require_tol(const Config& config) {
  if (!(config.tol > 0.0)) throw InvalidArgument("--tol must be positive");
}

void cmd_sample(const Config& config, std::ostream& out) {
  require_tol(config);
  const EquilateralSample sample = sample_equilateral(curve_from(config), config.m, config.tol);
  emit(config, out, [&](std::ostream& os, Format f) { write_polygon(os, sample.polygon, f); });
}

void cmd_energy(const Config& config, std::ostream& out, std::ostream& err) {
  const ClosedPolygon polygon = read_polygon_file(config.in);
  const EnergyReport report = energy_report(polygon);
  if (report.equilateral_spread > spread_warning_threshold) {
    warn(err, "input polygon is not equilateral (spread " + format_double(report.equilateral_spread) + ")");
  }
  emit(config, out, [&](std::ostream& os, Format f) { write_energy_report(os, report, f); });
}

void cmd_continuum(const Config& config, std::ostream& out) {
  const ContinuumReport report = continuum_report(curve_from(config), quadrature_from(config));
  emit(config, out, [&](std::ostream& os, Format f) { write_continuum_report(os, report, f); });
}

void cmd_invariance(const Config& config, std::ostream& out, std::ostream& err) {
  MapFamily family{};
  if (config.family == "inversive") {
    family = MapFamily::inversive;
  } else if (config.family == "similarity") {
    family = MapFamily::similarity;
  } else {
    throw InvalidArgument("--family must be inversive or similarity");
  }
  require_tol(config);
  const ClosedPolygon polygon =
      config.in.empty() ? equilateral_sample(curve_from(config), config.m, config.tol) : read_polygon_file(config.in);
  const InvarianceResult result = invariance_trial(polygon, config.seeds, config.margin, family);
  for (const auto& s : result.skipped) warn(err, "seed " + std::to_string(s.seed) + " skipped: " + s.reason);
  emit(config, out, [&](std::ostream& os, Format f) { write_invariance(os, result, f); });
}

void cmd_converge(const Config& config, std::ostream& out, std::ostream& err) {
  require_tol(config);
  const SweepResult result = convergence_sweep(curve_from(config), config.m_list, quadrature_from(config), config.tol);
  for (const auto& w : result.warnings) warn(err, w);
  emit(config, out, [&](std::ostream& os, Format f) { write_sweep(os, result.rows, f); });
}

void cmd_control(const Config& config, std::ostream& out) {
  const ControlResult result = negative_control(config.m_list);
  emit(config, out, [&](std::ostream& os, Format f) { write_control(os, result, f); });
}

int report(std::ostream& err, const nlohmann::json& record, int code) {
  err << record.dump() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config config;
  CLI::App app{"Möbius-invariant discrete knot energies and their continuum counterparts", "knot_energy"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Output file, - for stdout");
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_curve = [&](CLI::App* sub) {
    sub->add_option("--curve", config.curve, "circle, trefoil, ellipse(a,b) or torus_knot(p,q,R,r); ':' may replace '('")
        ->required();
  };
  const auto add_quadrature = [&](CLI::App* sub) {
    sub->add_option("--N", config.N, "Quadrature grid size per axis (>= 16)");
    sub->add_option("--diagonal-skip", config.diagonal_skip, "Excised diagonal band half-width in cells");
  };

  auto* sample = app.add_subcommand("sample", "Write an equilateral polygon inscribed in a named curve");
  add_curve(sample);
  sample->add_option("--m", config.m, "Number of vertices (>= 4)")->required();
  sample->add_option("--tol", config.tol, "Equilateral spread tolerance");
  add_output(sample);

  auto* energy = app.add_subcommand("energy", "Discrete energies E, E1, E2 of a polygon file");
  energy->add_option("--in", config.in, "Polygon file (CSV or JSON)")->required();
  add_output(energy);

  auto* continuum = app.add_subcommand("continuum", "Continuum energies of a named curve by quadrature");
  add_curve(continuum);
  add_quadrature(continuum);
  add_output(continuum);

  auto* invariance = app.add_subcommand("invariance", "Energy deviations under seeded Möbius maps");
  invariance->add_option("--in", config.in, "Polygon file; overrides --curve and --m");
  invariance->add_option("--curve", config.curve, "Curve to sample when --in is absent")->default_str("trefoil");
  invariance->add_option("--m", config.m, "Vertices when sampling --curve")->default_str("128");
  invariance->add_option("--seeds", config.seeds, "Random maps (seeds 1..n); seed 0 is the identity");
  invariance->add_option("--margin", config.margin, "Inversion center distance in polygon diameters (>= 0.5)");
  invariance->add_option("--family", config.family, "inversive or similarity")
      ->check(CLI::IsMember({"inversive", "similarity"}));
  invariance->add_option("--tol", config.tol, "Equilateral spread tolerance when sampling");
  add_output(invariance);

  auto* converge = app.add_subcommand("converge", "Discrete energies against continuum references as m grows");
  converge->add_option("--curve", config.curve, "Named curve")->default_str("circle");
  converge->add_option("--m-list", config.m_list, "Strictly increasing vertex counts (>= 8)")->delimiter(',');
  add_quadrature(converge);
  converge->add_option("--tol", config.tol, "Equilateral spread tolerance");
  add_output(converge);

  auto* control = app.add_subcommand("control", "Unmodified against modified E2 on regular m-gons");
  control->add_option("--m-list", config.m_list, "Strictly increasing vertex counts (>= 4)")->delimiter(',');
  add_output(control);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    return report(err, {{"error", "invalid-argument"}, {"message", e.what()}, {"details", nlohmann::json::object()}},
                  exit_usage);
  }

  try {
    if (invariance->parsed()) {
      if (config.curve.empty()) config.curve = "trefoil";
      if (config.m == 0) config.m = 128;
      cmd_invariance(config, out, err);
    } else if (converge->parsed()) {
      if (config.curve.empty()) config.curve = "circle";
      cmd_converge(config, out, err);
    } else if (sample->parsed()) {
      cmd_sample(config, out);
    } else if (energy->parsed()) {
      cmd_energy(config, out, err);
    } else if (continuum->parsed()) {
      cmd_continuum(config, out);
    } else if (control->parsed()) {
      cmd_control(config, out);
    }
  } catch (const Error& e) {
    return report(err, e.to_json(), e.is_numeric() ? exit_numeric : exit_usage);
  } catch (const std::exception& e) {
    return report(err, {{"error", "internal"}, {"message", e.what()}, {"details", nlohmann::json::object()}}, 1);
  }
  return exit_ok;
}

}  // namespace knot_energy::cli
