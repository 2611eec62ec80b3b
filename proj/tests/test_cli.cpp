#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <cstdlib>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "pa/commands.hpp"
#include "pa/config.hpp"
#include "pa/units.hpp"
#include "pa/longrange.hpp"

using namespace pa;

namespace {

RunConfig from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "inline");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("pa_cli_test_" + tag);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST_CASE("config: defaults applied and echoed") {
  const RunConfig cfg = from_text("# empty\n");
  CHECK(cfg.xi_s.has_value());
  CHECK(*cfg.xi_s == doctest::Approx(0.042));
  CHECK(*cfg.c3_khz_nm3 == doctest::Approx(6.2397e9));
  CHECK(cfg.omega_khz.size() == 1);
  CHECK(cfg.omega_khz[0] == 100.0);
  CHECK(units::au_to_nm(cfg.a_sc()) == doctest::Approx(3.94).epsilon(0.01));
  const std::string echo = cfg.echo();
  CHECK(echo.find("scatt.xi_s = 0.042") != std::string::npos);
  CHECK(echo.find("laser.factor = unity") != std::string::npos);

  // echo round-trips to an identical configuration
  const RunConfig back = from_text(echo);
  CHECK(back.echo() == echo);
  CHECK(back.config_hash() == cfg.config_hash());
}

TEST_CASE("config: error cases carry key names and line numbers") {
  auto message_of = [](const std::string& text) {
    try {
      from_text(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  const std::string both = message_of("scatt.a_sc_nm = 3.9\nscatt.xi_s = 0.042\n");
  CHECK(both.find("scatt.a_sc_nm") != std::string::npos);
  CHECK(both.find("scatt.xi_s") != std::string::npos);
  CHECK(both.find("line 2") != std::string::npos);

  const std::string neg = message_of("trap.omega_khz = -5\n");
  CHECK(neg.find("positive") != std::string::npos);
  CHECK(neg.find("line 1") != std::string::npos);

  const std::string unknown = message_of("species.mass_u = 23\nfroop = 1\n");
  CHECK(unknown.find("unknown key 'froop'") != std::string::npos);
  CHECK(unknown.find("line 2") != std::string::npos);

  const std::string suffix = message_of("trap.omega_mhz = 0.1\n");
  CHECK(suffix.find("unknown key") != std::string::npos);

  const std::string both_pot =
      message_of("potential.c3_khz_nm3 = 6.2e9\npotential.table = t.dat\n");
  CHECK(both_pot.find("potential.c3_khz_nm3") != std::string::npos);
  CHECK(both_pot.find("potential.table") != std::string::npos);

  CHECK(message_of("thermal.pairing = fixed\n").find("thermal.t_uk") != std::string::npos);
  CHECK(message_of("grid.points_per_wavelength = 10\n").find(">= 40") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("cmd_trap_levels: both frequency blocks with both energy conventions") {
  const RunConfig cfg = from_text("trap.omega_khz = 100, 10\n");
  CmdOptions opts;
  opts.out_dir = temp_dir("trap");
  opts.nt_max = 2;
  const auto tables = cmd_trap_levels(cfg, opts);
  REQUIRE(tables.size() == 1);
  const ResultTable& t = tables[0];
  REQUIRE(t.rows.size() == 6);

  // headers carry units, both conventions present
  bool has_mrad = false, has_mhz = false;
  for (const auto& c : t.columns) {
    has_mrad |= c == "eps_over_hbar_Mrad_per_s";
    has_mhz |= c == "eps_over_h_MHz";
  }
  CHECK(has_mrad);
  CHECK(has_mhz);
  for (const auto& c : t.columns)
    CHECK((c.find('_') != std::string::npos || c == "v"));

  // 100 kHz block values
  CHECK(t.rows[0][4] == doctest::Approx(0.96).epsilon(0.02));
  CHECK(t.rows[1][4] == doctest::Approx(2.23).epsilon(0.02));
  CHECK(t.rows[2][4] == doctest::Approx(3.49).epsilon(0.02));
  CHECK(t.rows[0][6] == doctest::Approx(164.25).epsilon(0.01));
  // 10 kHz block
  CHECK(t.rows[3][4] == doctest::Approx(0.095).epsilon(0.02));
  CHECK(t.rows[5][6] == doctest::Approx(985.28).epsilon(0.01));
  // the two conventions differ by 2 pi consistently
  for (const auto& row : t.rows)
    CHECK(row[4] / (2.0 * units::pi) == doctest::Approx(row[5]).epsilon(1e-10));

  CHECK(std::filesystem::exists(std::filesystem::path(opts.out_dir) / "trap_levels.csv"));
}

TEST_CASE("cmd_molecular_levels: seven labeled rows") {
  const RunConfig cfg = from_text("");
  CmdOptions opts;
  opts.out_dir = temp_dir("mol");
  opts.v_min = 33;
  opts.v_max = 39;
  const auto tables = cmd_molecular_levels(cfg, opts);
  const ResultTable& t = tables[0];
  REQUIRE(t.rows.size() == 7);
  CHECK(t.rows[0][0] == 33.0);
  CHECK(t.rows[6][0] == 39.0);
  CHECK(t.rows[0][1] == doctest::Approx(1460.0).epsilon(1e-5));
  CHECK(t.rows[1][1] == doctest::Approx(550.0).epsilon(0.10));
  CHECK(t.rows[4][1] == doctest::Approx(5.7).epsilon(0.10));
  CHECK(t.rows[5][1] == doctest::Approx(0.3017).epsilon(0.10));
  CHECK(t.rows[6][1] == doctest::Approx(0.0003).epsilon(0.15));
  // r_max < r_t on every row
  for (const auto& row : t.rows) CHECK(row[3] < row[2]);
}

TEST_CASE("byte-identical reruns of the same configuration") {
  const RunConfig cfg = from_text("trap.omega_khz = 100, 10\n");
  CmdOptions opts;
  opts.nt_max = 2;

  opts.out_dir = temp_dir("det1");
  cmd_trap_levels(cfg, opts);
  const std::string run1 = slurp(std::filesystem::path(opts.out_dir) / "trap_levels.csv");
  opts.out_dir = temp_dir("det2");
  cmd_trap_levels(cfg, opts);
  const std::string run2 = slurp(std::filesystem::path(opts.out_dir) / "trap_levels.csv");
  CHECK(run1 == run2);
  CHECK(!run1.empty());

  // scans fan out over workers; assembly order must still be fixed
  CmdOptions sopts;
  sopts.v_min = 35;
  sopts.nt_max = 0;
  sopts.a_steps = 13;
  sopts.out_dir = temp_dir("det3");
  const RunConfig scan_cfg = from_text("trap.omega_khz = 10\n");
  cmd_scan(scan_cfg, sopts);
  const std::string scan1 = slurp(std::filesystem::path(sopts.out_dir) / "scan.csv");
  sopts.out_dir = temp_dir("det4");
  cmd_scan(scan_cfg, sopts);
  const std::string scan2 = slurp(std::filesystem::path(sopts.out_dir) / "scan.csv");
  CHECK(scan1 == scan2);
  CHECK(scan1.find("a_sc_nm,xi_s") != std::string::npos);
}

TEST_CASE("cmd_fc: two blocks mirroring the reference layout") {
  const RunConfig cfg = from_text("trap.omega_khz = 100, 10\n");
  CmdOptions opts;
  opts.out_dir = temp_dir("fc");
  opts.v_min = 33;
  opts.v_max = 36;
  opts.nt_max = 2;
  const auto tables = cmd_fc(cfg, opts);
  const ResultTable& t = tables[0];
  REQUIRE(t.rows.size() == 8);  // 2 frequencies x 4 levels
  CHECK(t.columns.size() == 5);
  // v=33 block at 10 kHz reproduces the reference row closely
  CHECK(t.rows[4][0] == 10.0);
  CHECK(t.rows[4][1] == 33.0);
  CHECK(t.rows[4][2] == doctest::Approx(0.075).epsilon(0.15));
  CHECK(t.rows[4][3] == doctest::Approx(0.074).epsilon(0.15));
  CHECK(t.rows[4][4] == doctest::Approx(0.059).epsilon(0.15));
}

TEST_CASE("fixed wall route: re-running with the calibrated wall reproduces the ladder") {
  const RunConfig cfg = from_text("");
  PotentialModel model;
  const auto calibrated = solve_labeled_levels(cfg, 33, 34, &model);

  std::ostringstream fixed_text;
  fixed_text.precision(14);
  fixed_text << "potential.wall_nm = " << units::au_to_nm(model.inner.r_in) << "\n";
  const RunConfig fixed_cfg = from_text(fixed_text.str());
  const auto relabeled = solve_labeled_levels(fixed_cfg, 33, 34);
  REQUIRE(relabeled.size() == 2);
  CHECK(relabeled[0].v_label == 33);
  CHECK(units::au_to_khz(relabeled[0].binding_energy) == doctest::Approx(1460.0).epsilon(1e-4));
  CHECK(relabeled[1].binding_energy ==
        doctest::Approx(calibrated[1].binding_energy).epsilon(1e-8));
}

TEST_CASE("tabulated potential route through the config") {
  // a table holding exactly the asymptote on 10..90 nm
  const RunConfig base = from_text("");
  const double c3_au = units::khz_to_au(*base.c3_khz_nm3) * std::pow(units::nm_to_au(1.0), 3);
  const double c3_mhz_nm3 =
      units::au_to_mhz(c3_au) * std::pow(units::bohr_radius_nm, 3);

  const auto table_path = std::filesystem::temp_directory_path() / "pa_cli_test_table.dat";
  {
    std::ofstream out(table_path);
    out << "# R_nm V_over_h_MHz\n";
    out.precision(14);
    for (int i = 0; i <= 40; ++i) {
      const double r_nm = 10.0 + 2.0 * i;
      out << r_nm << " " << -c3_mhz_nm3 / (r_nm * r_nm * r_nm) << "\n";
    }
  }
  const RunConfig cfg = from_text("potential.table = " + table_path.string() + "\n");
  const PotentialModel m = cfg.potential_model();
  CHECK(m.table.size() == 41);
  CHECK(m.c3 == doctest::Approx(c3_au).epsilon(1e-10));
  validate_potential_model(m);
}

TEST_CASE("photon-factor override flows through the fc command") {
  const RunConfig cfg = from_text("trap.omega_khz = 100\n");
  CmdOptions opts;
  opts.out_dir = temp_dir("factor");
  opts.v_min = 33;
  opts.v_max = 33;
  opts.nt_max = 0;
  const double base = cmd_fc(cfg, opts)[0].rows[0][2];
  opts.factor_override = PhotonFactor::CosHalf;
  opts.out_dir = temp_dir("factor2");
  const double halved = cmd_fc(cfg, opts)[0].rows[0][2];
  CHECK(halved < 0.7 * base);  // cos(k_L R / 2)^2 suppression at ~150 nm
}

TEST_CASE("worker count does not change the bytes (PA_SPECTRA_THREADS)") {
  const RunConfig cfg = from_text("trap.omega_khz = 10\n");
  CmdOptions opts;
  opts.v_min = 35;
  opts.nt_max = 0;
  opts.a_steps = 9;

  opts.out_dir = temp_dir("thr1");
  setenv("PA_SPECTRA_THREADS", "1", 1);
  cmd_scan(cfg, opts);
  const std::string one = slurp(std::filesystem::path(opts.out_dir) / "scan.csv");

  opts.out_dir = temp_dir("thr3");
  setenv("PA_SPECTRA_THREADS", "3", 1);
  cmd_scan(cfg, opts);
  const std::string three = slurp(std::filesystem::path(opts.out_dir) / "scan.csv");
  unsetenv("PA_SPECTRA_THREADS");
  CHECK(one == three);
  CHECK(!one.empty());
}

TEST_CASE("level search extends below and above the anchor") {
  const RunConfig cfg = from_text("");
  const auto levels = solve_labeled_levels(cfg, 32, 38);
  REQUIRE(levels.size() == 7);
  CHECK(levels.front().v_label == 32);
  CHECK(levels.back().v_label == 38);
  // one level deeper than the anchor: consistent with the threshold law
  CHECK(units::au_to_khz(levels[0].binding_energy) ==
        doctest::Approx(3390.0).epsilon(0.05));
  for (std::size_t i = 1; i < levels.size(); ++i)
    CHECK(levels[i].binding_energy < levels[i - 1].binding_energy);
}
