#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "relspin/bell.hpp"
#include "relspin/error.hpp"
#include "relspin/kinematics.hpp"

// Grid sweeps over (beta, gamma), the formula-vs-oracle consistency report,
// and deterministic CSV/JSON emission.

namespace relspin {

enum class Scenario { single_particle, bell_phi, bell_psi };
enum class QuadrupleChoice { standard, as_printed, custom };
enum class OutputFormat { csv, json };

struct ScanConfig {
  double beta_min = 0.0;
  double beta_max = 0.999;
  int beta_steps = 50;
  // The particle-energy axis can be given as gamma or as the lab speed
  // beta1; the grid is uniform in whichever was given.
  double gamma_min = 1.0;
  double gamma_max = 20.0;
  int gamma_steps = 50;
  bool gamma_axis_is_beta1 = false;
  Scenario scenario = Scenario::bell_phi;
  OperatorFamily::Kind family = OperatorFamily::Kind::pauli;
  QuadrupleChoice quadruple = QuadrupleChoice::standard;
  std::array<double, 12> custom_directions{};
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty means stdout

  void validate() const;
};

struct ScanRow {
  double beta = 0.0;
  double beta1 = 0.0;
  double gamma = 1.0;
  double omega_rad = 0.0;
  double value_closed_form = 0.0;
  double value_oracle = 0.0;
  double abs_deviation = 0.0;
};

inline constexpr const char* csv_header =
    "beta,beta1,gamma,omega_rad,value_closed_form,value_oracle,abs_deviation";

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  if (n == 1) out[0] = lo;
  return out;
}

inline MeasurementQuadruple resolve_quadruple(const ScanConfig& config) {
  if (config.quadruple == QuadrupleChoice::custom) {
    const auto& d = config.custom_directions;
    return MeasurementQuadruple{Direction(d[0], d[1], d[2]), Direction(d[3], d[4], d[5]),
                                Direction(d[6], d[7], d[8]), Direction(d[9], d[10], d[11])};
  }
  if (config.scenario == Scenario::bell_psi && config.quadruple == QuadrupleChoice::as_printed)
    return as_printed_quadruple_psi();
  // The phi settings are internally consistent, so standard and as-printed
  // coincide for that scenario.
  return config.scenario == Scenario::bell_psi ? standard_quadruple_psi()
                                               : standard_quadruple_phi();
}

inline void ScanConfig::validate() const {
  const auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!std::isfinite(beta_min) || !std::isfinite(beta_max) || beta_min < 0.0 ||
      beta_max >= 1.0 || beta_min > beta_max)
    fail("beta range must satisfy 0 <= min <= max < 1");
  if (beta_steps < 1 || gamma_steps < 1) fail("step counts must be >= 1");
  if (!std::isfinite(gamma_min) || !std::isfinite(gamma_max) || gamma_min > gamma_max)
    fail("particle-energy range must be finite with min <= max");
  if (gamma_axis_is_beta1) {
    if (gamma_min < 0.0 || gamma_max >= 1.0) fail("beta1 range must satisfy 0 <= min <= max < 1");
  } else {
    if (gamma_min < 1.0) fail("gamma range must satisfy min >= 1");
  }
  if (quadruple == QuadrupleChoice::custom) {
    for (double v : custom_directions)
      if (!std::isfinite(v)) fail("custom quadruple entries must be finite");
    try {
      resolve_quadruple(*this);
    } catch (const ZeroDirection& e) {
      fail(std::string("custom quadruple: ") + e.what());
    }
  }
}

namespace detail {

struct CellValues {
  double closed_form = 0.0;
  double oracle = 0.0;
};

inline CellValues evaluate_cell(const ScanConfig& config, const MeasurementQuadruple& quad,
                                const BoostParameters& boost, const ParticleKinematics& particle,
                                const WignerAngle& angle) {
  const bool pauli = config.family == OperatorFamily::Kind::pauli;
  const OperatorFamily family =
      pauli ? OperatorFamily::pauli() : OperatorFamily::czachor(boost);
  CellValues out;
  switch (config.scenario) {
    case Scenario::single_particle: {
      const double c = std::cos(angle.omega), s = std::sin(angle.omega);
      const SpinState moving = boost_single(SpinState::up(), boost, particle);
      const Mat2 observable = cplx(0.5, 0.0) * family.along(stern_gerlach_direction());
      out.oracle = expectation(moving.amplitudes(), observable);
      out.closed_form =
          pauli ? (c + s) * 0.5 / std::sqrt(2.0)
                : (reciprocal_gamma(boost.beta()) * c + s) /
                      (2.0 * std::sqrt(2.0 - boost.beta() * boost.beta()));
      break;
    }
    case Scenario::bell_phi: {
      const PairState state = boost_pair(bell_state(BellStateKind::phi_plus), boost, particle);
      out.oracle = chsh_oracle(state, quad, family, particle.gamma(), angle.omega).value;
      out.closed_form = pauli ? closed_form_Bl_phi(angle) : closed_form_Bc_phi(boost, angle);
      break;
    }
    case Scenario::bell_psi: {
      const PairState state = boost_pair(bell_state(BellStateKind::psi_plus), boost, particle);
      out.oracle = chsh_oracle(state, quad, family, particle.gamma(), angle.omega).value;
      out.closed_form = pauli ? tsirelson_bound : closed_form_Bc_psi(boost);
      break;
    }
  }
  return out;
}

}  // namespace detail

/// One row per grid cell, beta-major then gamma. The closed-form column is
/// always the scenario/family reference curve for the standard settings, so
/// abs_deviation doubles as the audit column for as-printed and custom runs.
inline std::vector<ScanRow> run_scan(const ScanConfig& config) {
  config.validate();
  const MeasurementQuadruple quad = resolve_quadruple(config);
  const std::vector<double> betas = linspace(config.beta_min, config.beta_max, config.beta_steps);
  const std::vector<double> energies =
      linspace(config.gamma_min, config.gamma_max, config.gamma_steps);

  std::vector<ScanRow> rows;
  rows.reserve(betas.size() * energies.size());
  for (double beta : betas) {
    const BoostParameters boost(beta);
    for (double energy : energies) {
      const ParticleKinematics particle =
          config.gamma_axis_is_beta1 ? particle_from_speed(energy) : particle_from_gamma(energy);
      const WignerAngle angle = wigner_angle(boost, particle);
      const auto values = detail::evaluate_cell(config, quad, boost, particle, angle);
      rows.push_back(ScanRow{beta, particle.beta1(), particle.gamma(), angle.omega,
                             values.closed_form, values.oracle,
                             std::abs(values.closed_form - values.oracle)});
    }
  }
  return rows;
}

/// Invariant/consistency violations for a finished scan; empty means clean.
/// The closed-form column is held to the oracle unconditionally, so the two
/// documented closed-form gaps (and any custom settings run) fail this check
/// by construction; the report command is where those gaps are presented as
/// expected behavior.
inline std::vector<std::string> check_rows(const ScanConfig& config,
                                           const std::vector<ScanRow>& rows) {
  (void)config;
  std::vector<std::string> violations;
  const double tol = algebraic_tolerance();
  for (const ScanRow& row : rows) {
    if (!std::isfinite(row.value_oracle) || !std::isfinite(row.value_closed_form)) {
      violations.push_back("non-finite value at beta=" + std::to_string(row.beta));
      continue;
    }
    if (std::abs(row.value_oracle) > tsirelson_bound + tol)
      violations.push_back("Tsirelson bound violated at beta=" + std::to_string(row.beta) +
                           " gamma=" + std::to_string(row.gamma));
    if (row.abs_deviation > tol)
      violations.push_back("closed form deviates from oracle at beta=" + std::to_string(row.beta) +
                           " gamma=" + std::to_string(row.gamma) +
                           " |dev|=" + std::to_string(row.abs_deviation));
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Consistency report
// ---------------------------------------------------------------------------

struct FormulaAudit {
  std::string id;
  std::string label;
  int cells = 0;
  double max_abs_deviation = 0.0;
  double mean_abs_deviation = 0.0;
  bool confirmed = false;
  std::string note;
};

struct ConsistencyReport {
  double beta_min = 0.0, beta_max = 0.0;
  int beta_steps = 0;
  double gamma_min = 0.0, gamma_max = 0.0;
  int gamma_steps = 0;
  std::vector<FormulaAudit> entries;
  // True when every formula expected to track the oracle does so at the
  // global tolerance AND the two flagged gaps behave exactly as documented.
  bool healthy = false;
  std::string health_note;

  const FormulaAudit* find(const std::string& id) const {
    for (const FormulaAudit& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
};

namespace detail {

struct DeviationStats {
  double max = 0.0;
  double sum = 0.0;
  int cells = 0;
  void add(double dev) {
    max = std::max(max, dev);
    sum += dev;
    ++cells;
  }
  double mean() const { return cells > 0 ? sum / cells : 0.0; }
};

inline FormulaAudit finish_audit(std::string id, std::string label, const DeviationStats& stats,
                                 double tol, std::string note = "") {
  FormulaAudit audit;
  audit.id = std::move(id);
  audit.label = std::move(label);
  audit.cells = stats.cells;
  audit.max_abs_deviation = stats.max;
  audit.mean_abs_deviation = stats.mean();
  audit.confirmed = stats.max <= tol;
  audit.note = std::move(note);
  return audit;
}

}  // namespace detail

/// Audits every closed-form curve against the dense oracle over the
/// config's grid. Confirmed entries track the oracle at the global
/// tolerance; flagged entries are the two documented gaps: the bell-phi
/// Czachor curve (cos Omega where the oracle gives cos 2 Omega) and the
/// uncorrected Psi+ settings (sqrt(2) where 2*sqrt(2) is claimed).
inline ConsistencyReport consistency_report(const ScanConfig& config) {
  config.validate();
  const double tol = algebraic_tolerance();
  ConsistencyReport report;
  report.beta_min = config.beta_min;
  report.beta_max = config.beta_max;
  report.beta_steps = config.beta_steps;
  report.gamma_min = config.gamma_min;
  report.gamma_max = config.gamma_max;
  report.gamma_steps = config.gamma_steps;

  const std::vector<double> betas = linspace(config.beta_min, config.beta_max, config.beta_steps);
  const std::vector<double> energies =
      linspace(config.gamma_min, config.gamma_max, config.gamma_steps);
  const Direction measure = stern_gerlach_direction();
  const double inv_2r2 = 0.5 / std::sqrt(2.0);

  // Lab-frame spin expectations: beta = 0, any particle energy.
  {
    const SpinState lab = SpinState::up();
    const double pauli_value = expectation(lab.amplitudes(), spin_along(measure));
    const double czachor_value = expectation(
        lab.amplitudes(),
        cplx(0.5, 0.0) * czachor_along(measure, BoostParameters(0.0), Direction::unit_x()));
    detail::DeviationStats lab_pauli, lab_czachor;
    lab_pauli.add(std::abs(pauli_value - inv_2r2));
    lab_czachor.add(std::abs(czachor_value - inv_2r2));
    report.entries.push_back(detail::finish_audit(
        "single-lab-pauli", "lab spin along (1,0,1)/sqrt(2), Pauli family vs 1/(2*sqrt(2))",
        lab_pauli, tol));
    report.entries.push_back(detail::finish_audit(
        "single-lab-czachor", "lab spin along (1,0,1)/sqrt(2), Czachor family vs 1/(2*sqrt(2))",
        lab_czachor, tol));
  }

  detail::DeviationStats moving_pauli, moving_czachor;
  detail::DeviationStats bell_phi_pauli, bell_phi_czachor_printed, bell_phi_czachor_cos2;
  detail::DeviationStats bell_phi_czachor_printed_omega0;
  detail::DeviationStats bell_psi_pauli, bell_psi_czachor;

  const MeasurementQuadruple phi_quad = standard_quadruple_phi();
  const MeasurementQuadruple psi_quad = standard_quadruple_psi();
  const PairState phi = bell_state(BellStateKind::phi_plus);
  const PairState psi = bell_state(BellStateKind::psi_plus);

  for (double beta : betas) {
    const BoostParameters boost(beta);
    const OperatorFamily czachor = OperatorFamily::czachor(boost);
    const OperatorFamily pauli = OperatorFamily::pauli();
    for (double energy : energies) {
      const ParticleKinematics particle =
          config.gamma_axis_is_beta1 ? particle_from_speed(energy) : particle_from_gamma(energy);
      const WignerAngle angle = wigner_angle(boost, particle);
      const double c = std::cos(angle.omega), s = std::sin(angle.omega);

      const SpinState moving = boost_single(SpinState::up(), boost, particle);
      const double pauli_oracle = expectation(moving.amplitudes(), spin_along(measure));
      moving_pauli.add(std::abs((c + s) * inv_2r2 - pauli_oracle));
      const double czachor_oracle =
          expectation(moving.amplitudes(), cplx(0.5, 0.0) * czachor.along(measure));
      const double czachor_closed = (reciprocal_gamma(beta) * c + s) /
                                    (2.0 * std::sqrt(2.0 - beta * beta));
      moving_czachor.add(std::abs(czachor_closed - czachor_oracle));

      const PairState boosted_phi = boost_pair(phi, boost, particle);
      const double phi_pauli_oracle =
          chsh_oracle(boosted_phi, phi_quad, pauli, particle.gamma(), angle.omega).value;
      bell_phi_pauli.add(std::abs(closed_form_Bl_phi(angle) - phi_pauli_oracle));
      const double phi_czachor_oracle =
          chsh_oracle(boosted_phi, phi_quad, czachor, particle.gamma(), angle.omega).value;
      const double printed_dev = std::abs(closed_form_Bc_phi(boost, angle) - phi_czachor_oracle);
      bell_phi_czachor_printed.add(printed_dev);
      if (angle.omega == 0.0) bell_phi_czachor_printed_omega0.add(printed_dev);
      bell_phi_czachor_cos2.add(
          std::abs(czachor_oracle_form_Bc_phi(boost, angle) - phi_czachor_oracle));

      const PairState boosted_psi = boost_pair(psi, boost, particle);
      bell_psi_pauli.add(std::abs(
          tsirelson_bound -
          chsh_oracle(boosted_psi, psi_quad, pauli, particle.gamma(), angle.omega).value));
      bell_psi_czachor.add(std::abs(
          closed_form_Bc_psi(boost) -
          chsh_oracle(boosted_psi, psi_quad, czachor, particle.gamma(), angle.omega).value));
    }
  }

  report.entries.push_back(detail::finish_audit(
      "single-moving-pauli",
      "moving spin, Pauli family vs (cos W + sin W)/(2*sqrt(2))", moving_pauli, tol));
  report.entries.push_back(detail::finish_audit(
      "single-moving-czachor",
      "moving spin, Czachor family vs (sqrt(1-b^2) cos W + sin W)/(2*sqrt(2-b^2))",
      moving_czachor, tol));
  report.entries.push_back(detail::finish_audit(
      "bell-phi-pauli", "CHSH on boosted Phi+, Pauli family vs 2*sqrt(2) cos^2 W",
      bell_phi_pauli, tol));

  char cos2_note[160];
  std::snprintf(cos2_note, sizeof cos2_note,
                "oracle follows the cos(2W) variant (max dev %.3e); the cos(W) curve matches "
                "only where W = 0",
                bell_phi_czachor_cos2.max);
  report.entries.push_back(detail::finish_audit(
      "bell-phi-czachor",
      "CHSH on boosted Phi+, Czachor family vs 2(sqrt(1-b^2) + cos W)/sqrt(2-b^2)",
      bell_phi_czachor_printed, tol, cos2_note));

  report.entries.push_back(detail::finish_audit(
      "bell-psi-pauli", "CHSH on boosted Psi+, Pauli family vs constant 2*sqrt(2)",
      bell_psi_pauli, tol));
  report.entries.push_back(detail::finish_audit(
      "bell-psi-czachor",
      "CHSH on boosted Psi+, Czachor family vs 2(sqrt(1-b^2) + 1)/sqrt(2-b^2)",
      bell_psi_czachor, tol));

  // The uncorrected Psi+ settings (a' = -a) against the claimed maximum.
  const double as_printed_value =
      chsh_oracle(psi, as_printed_quadruple_psi(), OperatorFamily::pauli()).value;
  {
    detail::DeviationStats as_printed;
    as_printed.add(std::abs(tsirelson_bound - as_printed_value));
    char note[160];
    std::snprintf(note, sizeof note,
                  "uncorrected settings reach %.15g on Psi+; the corrected set reaches the "
                  "claimed 2*sqrt(2)",
                  as_printed_value);
    report.entries.push_back(detail::finish_audit(
        "bell-psi-as-printed-quadruple",
        "CHSH on Psi+ with the uncorrected settings (a' = -a) vs the claimed 2*sqrt(2)",
        as_printed, tol, note));
  }

  const bool confirmed_hold =
      report.find("single-lab-pauli")->confirmed && report.find("single-lab-czachor")->confirmed &&
      report.find("single-moving-pauli")->confirmed &&
      report.find("single-moving-czachor")->confirmed &&
      report.find("bell-phi-pauli")->confirmed && report.find("bell-psi-pauli")->confirmed &&
      report.find("bell-psi-czachor")->confirmed;
  const bool gaps_behave = bell_phi_czachor_cos2.max <= tol &&
                           bell_phi_czachor_printed_omega0.max <= tol &&
                           std::abs(as_printed_value - std::sqrt(2.0)) <= tol;
  report.healthy = confirmed_hold && gaps_behave;
  report.health_note = report.healthy
                           ? "all confirmed formulas hold; flagged gaps match their expected shape"
                           : "at least one formula audit failed its expected behavior";
  return report;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

/// Locale-free decimal rendering with 17 significant digits (round-trip
/// exact for IEEE doubles).
inline std::string format_full(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

inline std::string render_csv(const std::vector<ScanRow>& rows) {
  std::string out = csv_header;
  out.push_back('\n');
  for (const ScanRow& row : rows) {
    out += format_full(row.beta);
    out.push_back(',');
    out += format_full(row.beta1);
    out.push_back(',');
    out += format_full(row.gamma);
    out.push_back(',');
    out += format_full(row.omega_rad);
    out.push_back(',');
    out += format_full(row.value_closed_form);
    out.push_back(',');
    out += format_full(row.value_oracle);
    out.push_back(',');
    out += format_full(row.abs_deviation);
    out.push_back('\n');
  }
  return out;
}

inline std::string render_json(const std::vector<ScanRow>& rows) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const ScanRow& row : rows) {
    nlohmann::ordered_json obj;
    obj["beta"] = row.beta;
    obj["beta1"] = row.beta1;
    obj["gamma"] = row.gamma;
    obj["omega_rad"] = row.omega_rad;
    obj["value_closed_form"] = row.value_closed_form;
    obj["value_oracle"] = row.value_oracle;
    obj["abs_deviation"] = row.abs_deviation;
    array.push_back(std::move(obj));
  }
  return array.dump(2) + "\n";
}

inline std::string render_rows(const std::vector<ScanRow>& rows, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(rows) : render_json(rows);
}

inline std::string render_text(const ConsistencyReport& report) {
  char line[256];
  std::string out = "consistency report\n";
  std::snprintf(line, sizeof line, "grid: beta [%g, %g] x %d, energy [%g, %g] x %d\n",
                report.beta_min, report.beta_max, report.beta_steps, report.gamma_min,
                report.gamma_max, report.gamma_steps);
  out += line;
  for (const FormulaAudit& e : report.entries) {
    std::snprintf(line, sizeof line, "%-30s cells=%-5d max|dev|=%-12.3e mean|dev|=%-12.3e %s\n",
                  e.id.c_str(), e.cells, e.max_abs_deviation, e.mean_abs_deviation,
                  e.confirmed ? "confirmed" : "FLAGGED");
    out += line;
    out += "    " + e.label + "\n";
    if (!e.note.empty()) out += "    note: " + e.note + "\n";
  }
  out += std::string("status: ") + (report.healthy ? "healthy" : "UNHEALTHY") + " (" +
         report.health_note + ")\n";
  return out;
}

inline std::string render_json(const ConsistencyReport& report) {
  nlohmann::ordered_json doc;
  doc["grid"] = {{"beta_min", report.beta_min},   {"beta_max", report.beta_max},
                 {"beta_steps", report.beta_steps}, {"gamma_min", report.gamma_min},
                 {"gamma_max", report.gamma_max},   {"gamma_steps", report.gamma_steps}};
  doc["entries"] = nlohmann::ordered_json::array();
  for (const FormulaAudit& e : report.entries) {
    nlohmann::ordered_json obj;
    obj["id"] = e.id;
    obj["label"] = e.label;
    obj["cells"] = e.cells;
    obj["max_abs_deviation"] = e.max_abs_deviation;
    obj["mean_abs_deviation"] = e.mean_abs_deviation;
    obj["confirmed"] = e.confirmed;
    obj["note"] = e.note;
    doc["entries"].push_back(std::move(obj));
  }
  doc["healthy"] = report.healthy;
  doc["health_note"] = report.health_note;
  return doc.dump(2) + "\n";
}

/// Writes the full content through a sibling temp file plus rename, so the
/// destination never holds partial output.
inline void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream stream(temp, std::ios::binary | std::ios::trunc);
    if (!stream) throw IoError("cannot open for writing: " + temp.string());
    stream.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!stream) {
      stream.close();
      std::error_code ec;
      fs::remove(temp, ec);
      throw IoError("write failed: " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot move output into place: " + target.string());
  }
}

inline void emit(const std::vector<ScanRow>& rows, OutputFormat format, const std::string& path) {
  write_file(path, render_rows(rows, format));
}

inline void emit(const ConsistencyReport& report, OutputFormat format, const std::string& path) {
  write_file(path, format == OutputFormat::json ? render_json(report) : render_text(report));
}

}  // namespace relspin
