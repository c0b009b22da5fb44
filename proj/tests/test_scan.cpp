#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relspin/scan.hpp"

using namespace relspin;
namespace fs = std::filesystem;

namespace {
const double tol = 1e-12;
const double r2 = std::sqrt(2.0);

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "relspin_scan_tests";
  fs::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("run_scan basics", "[scan]") {
  SECTION("no boost keeps the bell-phi Pauli value at the bound") {
    ScanConfig config;
    config.beta_min = config.beta_max = 0.0;
    config.beta_steps = 1;
    config.gamma_min = 1.0;
    config.gamma_max = 20.0;
    config.gamma_steps = 20;
    const auto rows = run_scan(config);
    REQUIRE(rows.size() == 20);
    for (const ScanRow& row : rows) {
      REQUIRE(row.value_oracle == Catch::Approx(2 * r2).margin(tol));
      REQUIRE(row.omega_rad == 0.0);
      REQUIRE(row.abs_deviation < tol);
    }
  }

  SECTION("row order is beta-major then gamma, with exact endpoints") {
    ScanConfig config;
    config.beta_steps = 3;
    config.beta_min = 0.0;
    config.beta_max = 0.9;
    config.gamma_steps = 2;
    config.gamma_min = 1.0;
    config.gamma_max = 20.0;
    const auto rows = run_scan(config);
    REQUIRE(rows.size() == 6);
    REQUIRE(rows[0].beta == 0.0);
    REQUIRE(rows[0].gamma == 1.0);
    REQUIRE(rows[1].gamma == 20.0);
    REQUIRE(rows[4].beta == 0.9);
    REQUIRE(rows[5].beta == 0.9);
    REQUIRE(rows[5].gamma == 20.0);
  }

  SECTION("grid corners of the default bell-phi Pauli scan") {
    ScanConfig config;  // defaults: beta [0, 0.999] x 50, gamma [1, 20] x 50
    const auto rows = run_scan(config);
    REQUIRE(rows.size() == 2500);
    REQUIRE(rows.front().value_oracle == Catch::Approx(2 * r2).margin(1e-9));
    REQUIRE(rows[49].value_oracle == Catch::Approx(2 * r2).margin(1e-9));       // (0, 20)
    REQUIRE(rows[2450].value_oracle == Catch::Approx(2 * r2).margin(1e-9));     // (0.999, 1)
    const ScanRow& far = rows.back();                                           // (0.999, 20)
    const double expected = closed_form_Bl_phi(
        wigner_angle(boost_from_speed(0.999), particle_from_gamma(20.0)));
    REQUIRE(far.value_oracle == Catch::Approx(expected).margin(1e-9));
  }

  SECTION("the energy axis accepts beta1 instead of gamma") {
    ScanConfig config;
    config.gamma_axis_is_beta1 = true;
    config.gamma_min = 0.0;
    config.gamma_max = 0.6;
    config.gamma_steps = 2;
    config.beta_steps = 1;
    config.beta_min = config.beta_max = 0.5;
    const auto rows = run_scan(config);
    REQUIRE(rows[0].gamma == 1.0);
    REQUIRE(rows[1].beta1 == 0.6);
    REQUIRE(rows[1].gamma == Catch::Approx(1.25).margin(tol));
  }

  SECTION("every oracle value respects the Tsirelson bound") {
    for (Scenario scenario : {Scenario::bell_phi, Scenario::bell_psi, Scenario::single_particle}) {
      for (auto family : {OperatorFamily::Kind::pauli, OperatorFamily::Kind::czachor}) {
        ScanConfig config;
        config.scenario = scenario;
        config.family = family;
        config.beta_steps = 8;
        config.gamma_steps = 8;
        for (const ScanRow& row : run_scan(config))
          REQUIRE(std::abs(row.value_oracle) <= 2 * r2 + tol);
      }
    }
  }
}

TEST_CASE("scan deviations by configuration", "[scan]") {
  SECTION("confirmed combinations stay at tolerance") {
    for (auto [scenario, family] :
         {std::pair{Scenario::single_particle, OperatorFamily::Kind::pauli},
          {Scenario::single_particle, OperatorFamily::Kind::czachor},
          {Scenario::bell_phi, OperatorFamily::Kind::pauli},
          {Scenario::bell_psi, OperatorFamily::Kind::pauli},
          {Scenario::bell_psi, OperatorFamily::Kind::czachor}}) {
      ScanConfig config;
      config.scenario = scenario;
      config.family = family;
      config.beta_steps = 10;
      config.gamma_steps = 10;
      const auto rows = run_scan(config);
      for (const ScanRow& row : rows) REQUIRE(row.abs_deviation < tol);
      REQUIRE(check_rows(config, rows).empty());
    }
  }

  SECTION("bell-phi with the Czachor family deviates except at omega = 0") {
    ScanConfig config;
    config.scenario = Scenario::bell_phi;
    config.family = OperatorFamily::Kind::czachor;
    config.beta_steps = 10;
    config.gamma_steps = 10;
    const auto rows = run_scan(config);
    for (const ScanRow& row : rows) {
      if (row.omega_rad == 0.0)
        REQUIRE(row.abs_deviation < tol);
      else
        REQUIRE(row.abs_deviation > tol);
    }
    // the gap IS a check violation: --check holds every curve to the oracle
    REQUIRE_FALSE(check_rows(config, rows).empty());
  }

  SECTION("as-printed settings on bell-psi report the sqrt(2) shortfall") {
    ScanConfig config;
    config.scenario = Scenario::bell_psi;
    config.quadruple = QuadrupleChoice::as_printed;
    config.beta_steps = 1;
    config.beta_min = config.beta_max = 0.0;
    config.gamma_steps = 1;
    config.gamma_min = config.gamma_max = 1.0;
    const auto rows = run_scan(config);
    REQUIRE(rows[0].value_oracle == Catch::Approx(r2).margin(tol));
    REQUIRE(rows[0].value_closed_form == Catch::Approx(2 * r2).margin(tol));
  }
}

TEST_CASE("ScanConfig validation", "[scan]") {
  ScanConfig config;

  config.beta_max = 1.0;
  REQUIRE_THROWS_AS(config.validate(), ConfigError);
  config.beta_max = 0.999;

  config.beta_min = -0.1;
  REQUIRE_THROWS_AS(config.validate(), ConfigError);
  config.beta_min = 0.5;
  config.beta_max = 0.4;
  REQUIRE_THROWS_AS(config.validate(), ConfigError);
  config.beta_min = 0.0;
  config.beta_max = 0.999;

  config.gamma_min = 0.5;
  REQUIRE_THROWS_AS(config.validate(), ConfigError);
  config.gamma_min = 1.0;

  config.beta_steps = 0;
  REQUIRE_THROWS_AS(config.validate(), ConfigError);
  config.beta_steps = 50;

  config.quadruple = QuadrupleChoice::custom;  // all-zero directions
  REQUIRE_THROWS_AS(config.validate(), ConfigError);
  config.custom_directions = {1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0};
  REQUIRE_NOTHROW(config.validate());
}

TEST_CASE("emission formats", "[scan]") {
  ScanConfig config;
  config.beta_steps = 2;
  config.beta_min = 0.0;
  config.beta_max = 0.6;
  config.gamma_steps = 2;
  config.gamma_min = 1.0;
  config.gamma_max = 2.0;
  const auto rows = run_scan(config);

  SECTION("CSV header and shape") {
    const std::string csv = render_csv(rows);
    REQUIRE(csv.rfind("beta,beta1,gamma,omega_rad,value_closed_form,value_oracle,abs_deviation\n",
                      0) == 0);
    int newlines = 0;
    for (char c : csv) newlines += c == '\n';
    REQUIRE(newlines == 5);  // header + 4 rows

    // 17 significant digits round-trip exactly.
    std::stringstream stream(csv);
    std::string line;
    std::getline(stream, line);
    std::getline(stream, line);
    std::stringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    REQUIRE(std::stod(cell) == rows[0].beta);
    for (int i = 0; i < 3; ++i) std::getline(cells, cell, ',');
    std::getline(cells, cell, ',');
    REQUIRE(std::stod(cell) == rows[0].value_closed_form);
  }

  SECTION("single-row scan gives header plus one line") {
    ScanConfig one;
    one.beta_steps = one.gamma_steps = 1;
    const std::string csv = render_csv(run_scan(one));
    int newlines = 0;
    for (char c : csv) newlines += c == '\n';
    REQUIRE(newlines == 2);
  }

  SECTION("JSON mirrors the seven field names and values") {
    const auto parsed = nlohmann::json::parse(render_json(rows));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == rows.size());
    const auto& first = parsed.at(0);
    for (const char* key : {"beta", "beta1", "gamma", "omega_rad", "value_closed_form",
                            "value_oracle", "abs_deviation"})
      REQUIRE(first.contains(key));
    REQUIRE(first.at("value_oracle").get<double>() == rows[0].value_oracle);
    REQUIRE(first.at("omega_rad").get<double>() == rows[0].omega_rad);
  }

  SECTION("identical configs render byte-identical output") {
    const auto rows2 = run_scan(config);
    REQUIRE(render_csv(rows) == render_csv(rows2));
    REQUIRE(render_json(rows) == render_json(rows2));
  }
}

TEST_CASE("write_file leaves no partial output", "[scan]") {
  const fs::path dir = temp_dir();

  SECTION("writes and rewrites deterministically") {
    const fs::path target = dir / "rows.csv";
    write_file(target.string(), "alpha\n");
    REQUIRE(slurp(target) == "alpha\n");
    write_file(target.string(), "beta\n");
    REQUIRE(slurp(target) == "beta\n");
    REQUIRE_FALSE(fs::exists(target.string() + ".tmp"));
    fs::remove(target);
  }

  SECTION("missing directory raises IoError and creates nothing") {
    const fs::path target = dir / "does-not-exist" / "rows.csv";
    REQUIRE_THROWS_AS(write_file(target.string(), "x"), IoError);
    REQUIRE_FALSE(fs::exists(target));
  }
}

TEST_CASE("consistency report", "[scan]") {
  ScanConfig config;
  config.beta_steps = 12;
  config.gamma_steps = 12;
  const ConsistencyReport report = consistency_report(config);

  SECTION("confirms the formulas that track the oracle") {
    for (const char* id : {"single-lab-pauli", "single-lab-czachor", "single-moving-pauli",
                           "single-moving-czachor", "bell-phi-pauli", "bell-psi-pauli",
                           "bell-psi-czachor"}) {
      const FormulaAudit* entry = report.find(id);
      REQUIRE(entry != nullptr);
      REQUIRE(entry->confirmed);
      REQUIRE(entry->max_abs_deviation <= tol);
    }
  }

  SECTION("flags the bell-phi Czachor closed form") {
    const FormulaAudit* entry = report.find("bell-phi-czachor");
    REQUIRE(entry != nullptr);
    REQUIRE_FALSE(entry->confirmed);
    REQUIRE(entry->max_abs_deviation > 0.1);
    REQUIRE(entry->note.find("cos(2W)") != std::string::npos);
  }

  SECTION("flags the uncorrected Psi+ settings") {
    const FormulaAudit* entry = report.find("bell-psi-as-printed-quadruple");
    REQUIRE(entry != nullptr);
    REQUIRE_FALSE(entry->confirmed);
    // the shortfall from the claimed bound is 2*sqrt(2) - sqrt(2) = sqrt(2)
    REQUIRE(entry->max_abs_deviation == Catch::Approx(r2).margin(tol));
  }

  SECTION("overall health reflects the expected shape of both gaps") {
    REQUIRE(report.healthy);
  }

  SECTION("renders to text and JSON") {
    const std::string text = render_text(report);
    REQUIRE(text.find("bell-phi-czachor") != std::string::npos);
    REQUIRE(text.find("FLAGGED") != std::string::npos);
    REQUIRE(text.find("status: healthy") != std::string::npos);

    const auto parsed = nlohmann::json::parse(render_json(report));
    REQUIRE(parsed.at("healthy").get<bool>());
    REQUIRE(parsed.at("entries").size() == report.entries.size());
  }
}
