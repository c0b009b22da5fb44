// Command-line front end: Wigner-angle queries, single-particle spin
// reports, (beta, gamma) grid scans with CSV/JSON emission, and the
// closed-form-vs-oracle consistency report.
//
// Exit codes: 0 success, 1 check failure (or unexpected internal error),
// 2 configuration error, 3 output I/O error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relspin/relspin.hpp"

namespace {

constexpr double limit_beta = 1.0 - 1e-9;  // the beta -> 1 probe

struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;
};

RangeSpec parse_range(const std::string& text, const char* what) {
  RangeSpec range;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &range.lo, &range.hi, &range.steps, &trailing) != 3)
    throw relspin::ConfigError(std::string(what) + ": expected lo:hi:n, got '" + text + "'");
  return range;
}

// Relative output paths land in RELSPIN_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path) {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* dir = std::getenv("RELSPIN_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return (std::filesystem::path(dir) / p).string();
}

void print_value(const char* key, double value) {
  std::printf("%-26s %s\n", key, relspin::format_full(value).c_str());
}

relspin::ParticleKinematics particle_from_options(const std::optional<double>& gamma,
                                                  const std::optional<double>& beta1) {
  if (gamma.has_value() && beta1.has_value())
    throw relspin::ConfigError("give either --gamma or --beta1, not both");
  if (beta1.has_value()) return relspin::particle_from_speed(*beta1);
  if (gamma.has_value()) return relspin::particle_from_gamma(*gamma);
  throw relspin::ConfigError("one of --gamma or --beta1 is required");
}

int run_wigner_angle(double beta, const std::optional<double>& gamma,
                     const std::optional<double>& beta1) {
  const relspin::BoostParameters boost(beta);
  const relspin::ParticleKinematics particle = particle_from_options(gamma, beta1);
  const relspin::WignerAngle angle = relspin::wigner_angle(boost, particle);
  const relspin::WignerAngle oracle = relspin::wigner_angle_oracle(boost, particle);
  print_value("beta", boost.beta());
  print_value("alpha", boost.alpha());
  print_value("gamma", particle.gamma());
  print_value("beta1", particle.beta1());
  print_value("delta", particle.delta());
  print_value("omega_rad", angle.omega);
  print_value("omega_oracle_rad", oracle.omega);
  print_value("oracle_abs_diff", std::abs(angle.omega - oracle.omega));
  print_value("sin_half_omega", std::sin(0.5 * angle.omega));
  print_value("asymptotic_sin_half_omega", relspin::asymptotic_half_angle(particle));
  return 0;
}

int run_single(double beta, const std::optional<double>& gamma,
               const std::optional<double>& beta1) {
  const relspin::BoostParameters boost(beta);
  const relspin::ParticleKinematics particle = particle_from_options(gamma, beta1);
  const relspin::SingleParticleReport report = relspin::single_particle_report(boost, particle);
  print_value("beta", boost.beta());
  print_value("gamma", particle.gamma());
  print_value("beta1", particle.beta1());
  print_value("omega_rad", report.omega);
  print_value("lab_pauli", report.lab_pauli);
  print_value("lab_pauli_oracle", report.oracle_lab_pauli);
  print_value("moving_pauli", report.moving_pauli);
  print_value("moving_pauli_oracle", report.oracle_moving_pauli);
  print_value("lab_czachor", report.lab_czachor);
  print_value("lab_czachor_oracle", report.oracle_lab_czachor);
  print_value("moving_czachor", report.moving_czachor);
  print_value("moving_czachor_oracle", report.oracle_moving_czachor);
  print_value("max_deviation", report.max_deviation());
  return 0;
}

std::array<double, 12> parse_quad_values(const std::string& text) {
  std::array<double, 12> values{};
  std::stringstream stream(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(stream, item, ',')) {
    if (i >= values.size()) throw relspin::ConfigError("--quad-values: expected 12 numbers");
    try {
      std::size_t used = 0;
      values[i] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw relspin::ConfigError("--quad-values: cannot parse '" + item + "'");
    }
    ++i;
  }
  if (i != values.size()) throw relspin::ConfigError("--quad-values: expected 12 numbers");
  return values;
}

int emit_or_print(const std::string& content, const std::string& output) {
  if (output.empty()) {
    std::fputs(content.c_str(), stdout);
    return 0;
  }
  relspin::write_file(resolve_output_path(output), content);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relativistic spin / CHSH simulation and closed-form audit"};
  app.set_version_flag("--version", "relspin 0.1.0");
  app.require_subcommand(1);

  // --- wigner-angle ---------------------------------------------------------
  auto* wigner_cmd = app.add_subcommand("wigner-angle", "Wigner angle plus its Lorentz-matrix oracle");
  double wa_beta = 0.0;
  std::optional<double> wa_gamma, wa_beta1;
  bool wa_limit = false;
  auto* wa_beta_opt = wigner_cmd->add_option("--beta", wa_beta, "boost speed in [0,1)");
  wigner_cmd->add_option("--gamma", wa_gamma, "particle energy factor (>= 1)");
  wigner_cmd->add_option("--beta1", wa_beta1, "particle lab speed in [0,1)");
  wigner_cmd->add_flag("--limit", wa_limit, "probe the beta -> 1 limit (beta = 1-1e-9)");

  // --- single ---------------------------------------------------------------
  auto* single_cmd = app.add_subcommand("single", "single-particle spin expectations, both families");
  double sg_beta = 0.0;
  std::optional<double> sg_gamma, sg_beta1;
  bool sg_limit = false;
  auto* sg_beta_opt = single_cmd->add_option("--beta", sg_beta, "boost speed in [0,1)");
  single_cmd->add_option("--gamma", sg_gamma, "particle energy factor (>= 1)");
  single_cmd->add_option("--beta1", sg_beta1, "particle lab speed in [0,1)");
  single_cmd->add_flag("--limit", sg_limit, "probe the beta -> 1 limit (beta = 1-1e-9)");

  // --- scan -----------------------------------------------------------------
  auto* scan_cmd = app.add_subcommand("scan", "grid sweep over (beta, gamma)");
  std::string scenario_name = "bell-phi";
  std::string family_name = "pauli";
  std::string quadruple_name = "standard";
  std::string quad_values_text;
  std::string beta_range_text, gamma_range_text, beta1_range_text;
  std::string format_name = "csv";
  std::string output_path;
  bool scan_check = false, scan_limit = false;
  scan_cmd->add_option("--scenario", scenario_name, "single | bell-phi | bell-psi")
      ->check(CLI::IsMember({"single", "bell-phi", "bell-psi"}));
  scan_cmd->add_option("--family", family_name, "pauli | czachor")
      ->check(CLI::IsMember({"pauli", "czachor"}));
  scan_cmd->add_option("--quadruple", quadruple_name, "standard | as-printed | custom")
      ->check(CLI::IsMember({"standard", "as-printed", "custom"}));
  scan_cmd->add_option("--quad-values", quad_values_text,
                       "12 comma-separated reals: a, a', b, b' (with --quadruple custom)");
  scan_cmd->add_option("--beta-range", beta_range_text, "boost speeds lo:hi:n");
  scan_cmd->add_option("--gamma-range", gamma_range_text, "energy factors lo:hi:n");
  scan_cmd->add_option("--beta1-range", beta1_range_text, "particle lab speeds lo:hi:n");
  scan_cmd->add_option("--format", format_name, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_option("--output", output_path, "output file (stdout when omitted)");
  scan_cmd->add_flag("--check", scan_check, "exit 1 if any invariant or consistency check fails");
  scan_cmd->add_flag("--limit", scan_limit, "probe the beta -> 1 limit (beta = 1-1e-9)");

  // --- report ---------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "closed-form vs oracle consistency report");
  std::string report_format = "text";
  std::string report_output;
  std::string report_beta_range, report_gamma_range;
  bool report_check = false;
  report_cmd->add_option("--format", report_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  report_cmd->add_option("--output", report_output, "output file (stdout when omitted)");
  report_cmd->add_option("--beta-range", report_beta_range, "boost speeds lo:hi:n");
  report_cmd->add_option("--gamma-range", report_gamma_range, "energy factors lo:hi:n");
  report_cmd->add_flag("--check", report_check, "exit 1 unless every formula audit behaves as expected");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (wigner_cmd->parsed()) {
      if (wa_limit)
        wa_beta = limit_beta;
      else if (wa_beta_opt->count() == 0)
        throw relspin::ConfigError("--beta (or --limit) is required");
      return run_wigner_angle(wa_beta, wa_gamma, wa_beta1);
    }

    if (single_cmd->parsed()) {
      if (sg_limit)
        sg_beta = limit_beta;
      else if (sg_beta_opt->count() == 0)
        throw relspin::ConfigError("--beta (or --limit) is required");
      return run_single(sg_beta, sg_gamma, sg_beta1);
    }

    if (scan_cmd->parsed()) {
      relspin::ScanConfig config;
      if (scenario_name == "single")
        config.scenario = relspin::Scenario::single_particle;
      else if (scenario_name == "bell-psi")
        config.scenario = relspin::Scenario::bell_psi;
      else
        config.scenario = relspin::Scenario::bell_phi;
      config.family = family_name == "czachor" ? relspin::OperatorFamily::Kind::czachor
                                               : relspin::OperatorFamily::Kind::pauli;
      if (quadruple_name == "as-printed")
        config.quadruple = relspin::QuadrupleChoice::as_printed;
      else if (quadruple_name == "custom")
        config.quadruple = relspin::QuadrupleChoice::custom;
      if (config.quadruple == relspin::QuadrupleChoice::custom) {
        if (quad_values_text.empty())
          throw relspin::ConfigError("--quadruple custom requires --quad-values");
        config.custom_directions = parse_quad_values(quad_values_text);
      } else if (!quad_values_text.empty()) {
        throw relspin::ConfigError("--quad-values requires --quadruple custom");
      }
      if (!beta_range_text.empty()) {
        const RangeSpec r = parse_range(beta_range_text, "--beta-range");
        config.beta_min = r.lo;
        config.beta_max = r.hi;
        config.beta_steps = r.steps;
      }
      if (!gamma_range_text.empty() && !beta1_range_text.empty())
        throw relspin::ConfigError("give either --gamma-range or --beta1-range, not both");
      if (!gamma_range_text.empty()) {
        const RangeSpec r = parse_range(gamma_range_text, "--gamma-range");
        config.gamma_min = r.lo;
        config.gamma_max = r.hi;
        config.gamma_steps = r.steps;
      }
      if (!beta1_range_text.empty()) {
        const RangeSpec r = parse_range(beta1_range_text, "--beta1-range");
        config.gamma_min = r.lo;
        config.gamma_max = r.hi;
        config.gamma_steps = r.steps;
        config.gamma_axis_is_beta1 = true;
      }
      if (scan_limit) {
        if (!beta_range_text.empty())
          throw relspin::ConfigError("--limit replaces --beta-range; give one of them");
        config.beta_min = config.beta_max = limit_beta;
        config.beta_steps = 1;
        std::fprintf(stderr, "note: beta -> 1 limit probed at beta = %s\n",
                     relspin::format_full(limit_beta).c_str());
      }
      config.format =
          format_name == "json" ? relspin::OutputFormat::json : relspin::OutputFormat::csv;
      config.output_path = output_path;
      config.validate();
      const std::vector<relspin::ScanRow> rows = relspin::run_scan(config);
      emit_or_print(relspin::render_rows(rows, config.format), config.output_path);
      if (scan_check) {
        const std::vector<std::string> violations = relspin::check_rows(config, rows);
        if (!violations.empty()) {
          for (const std::string& v : violations) std::fprintf(stderr, "check: %s\n", v.c_str());
          return 1;
        }
      }
      return 0;
    }

    if (report_cmd->parsed()) {
      relspin::ScanConfig config;
      if (!report_beta_range.empty()) {
        const RangeSpec r = parse_range(report_beta_range, "--beta-range");
        config.beta_min = r.lo;
        config.beta_max = r.hi;
        config.beta_steps = r.steps;
      }
      if (!report_gamma_range.empty()) {
        const RangeSpec r = parse_range(report_gamma_range, "--gamma-range");
        config.gamma_min = r.lo;
        config.gamma_max = r.hi;
        config.gamma_steps = r.steps;
      }
      config.validate();
      const relspin::ConsistencyReport report = relspin::consistency_report(config);
      const std::string content = report_format == "json" ? relspin::render_json(report)
                                                          : relspin::render_text(report);
      emit_or_print(content, report_output);
      if (report_check && !report.healthy) {
        std::fprintf(stderr, "check: %s\n", report.health_note.c_str());
        return 1;
      }
      return 0;
    }
  } catch (const relspin::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const relspin::SpeedOutOfRange& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const relspin::EnergyOutOfRange& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const relspin::ZeroDirection& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const relspin::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
