#include "pa/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "pa/units.hpp"

namespace pa {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  std::ostringstream os;
  os << name << ": " << msg << " (line " << line << ")";
  throw ConfigError(os.str());
}

double parse_double(const std::string& name, int line, const std::string& key,
                    const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    fail(name, line, "key '" + key + "' needs a number, got '" + value + "'");
  }
  if (used != value.size())
    fail(name, line, "key '" + key + "' needs a number, got '" + value + "'");
  return x;
}

std::vector<double> parse_list(const std::string& name, int line, const std::string& key,
                               const std::string& value) {
  std::vector<double> out;
  std::istringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(name, line, "key '" + key + "' has an empty list entry");
    out.push_back(parse_double(name, line, key, item));
  }
  if (out.empty()) fail(name, line, "key '" + key + "' needs at least one value");
  return out;
}

PhotonFactor parse_factor(const std::string& name, int line, const std::string& value) {
  if (value == "unity") return PhotonFactor::Unity;
  if (value == "cos_half") return PhotonFactor::CosHalf;
  if (value == "cos_full") return PhotonFactor::CosFull;
  fail(name, line, "laser.factor must be unity|cos_half|cos_full, got '" + value + "'");
}

void require_positive(const std::string& name, int line, const std::string& key, double x) {
  if (!(x > 0.0)) fail(name, line, "key '" + key + "' must be positive");
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& name) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  int line_a_sc = 0, line_xi = 0, line_c3 = 0, line_table = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, lineno, "expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, lineno, "empty key");
    if (value.empty()) fail(name, lineno, "key '" + key + "' has no value");

    if (key == "species.mass_u") {
      cfg.mass_u = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.mass_u);
    } else if (key == "trap.omega_khz") {
      cfg.omega_khz = parse_list(name, lineno, key, value);
      for (double w : cfg.omega_khz) require_positive(name, lineno, key, w);
    } else if (key == "scatt.a_sc_nm") {
      cfg.a_sc_nm = parse_double(name, lineno, key, value);
      line_a_sc = lineno;
    } else if (key == "scatt.xi_s") {
      cfg.xi_s = parse_double(name, lineno, key, value);
      line_xi = lineno;
    } else if (key == "potential.c3_khz_nm3") {
      cfg.c3_khz_nm3 = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, *cfg.c3_khz_nm3);
      line_c3 = lineno;
    } else if (key == "potential.table") {
      cfg.potential_table_path = value;
      line_table = lineno;
    } else if (key == "potential.wall_nm") {
      cfg.wall_nm = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, *cfg.wall_nm);
    } else if (key == "calib.v") {
      cfg.calib_v = static_cast<int>(parse_double(name, lineno, key, value));
    } else if (key == "calib.binding_khz") {
      cfg.calib_binding_khz = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.calib_binding_khz);
    } else if (key == "calib.wall_min_nm") {
      cfg.calib_wall_min_nm = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.calib_wall_min_nm);
    } else if (key == "calib.wall_max_nm") {
      cfg.calib_wall_max_nm = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.calib_wall_max_nm);
    } else if (key == "levels.top_label") {
      cfg.top_label = static_cast<int>(parse_double(name, lineno, key, value));
    } else if (key == "laser.lambda_nm") {
      cfg.laser_lambda_nm = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.laser_lambda_nm);
    } else if (key == "laser.omega_a_thz") {
      cfg.laser_omega_a_thz = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.laser_omega_a_thz);
    } else if (key == "laser.d0_au") {
      cfg.laser_d0_au = std::abs(parse_double(name, lineno, key, value));
    } else if (key == "laser.factor") {
      cfg.laser_factor = parse_factor(name, lineno, value);
    } else if (key == "laser.orientation") {
      cfg.laser_orientation = parse_double(name, lineno, key, value);
    } else if (key == "laser.field_v_cm") {
      cfg.laser_field_v_cm = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.laser_field_v_cm);
    } else if (key == "gamma.bound_bound_khz") {
      cfg.gamma_bb_khz = parse_double(name, lineno, key, value);
      if (cfg.gamma_bb_khz < 0.0) fail(name, lineno, "key '" + key + "' must be >= 0");
    } else if (key == "thermal.pairing") {
      if (value == "trap_level")
        cfg.pairing = ThermalPairing::TrapLevel;
      else if (value == "fixed")
        cfg.pairing = ThermalPairing::Fixed;
      else
        fail(name, lineno, "thermal.pairing must be trap_level|fixed");
    } else if (key == "thermal.t_uk") {
      cfg.fixed_t_uk = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, *cfg.fixed_t_uk);
    } else if (key == "maxwell.nodes") {
      cfg.maxwell_nodes_n = static_cast<int>(parse_double(name, lineno, key, value));
      if (cfg.maxwell_nodes_n < 8) fail(name, lineno, "maxwell.nodes must be >= 8");
    } else if (key == "grid.trap_points") {
      cfg.grid_trap_points = parse_double(name, lineno, key, value);
      if (cfg.grid_trap_points < 3) fail(name, lineno, "grid.trap_points must be >= 3");
    } else if (key == "grid.trap_rmin_at") {
      cfg.grid_trap_rmin_at = parse_double(name, lineno, key, value);
      require_positive(name, lineno, key, cfg.grid_trap_rmin_at);
    } else if (key == "grid.points_per_wavelength") {
      cfg.grid_points_per_wavelength = parse_double(name, lineno, key, value);
      if (cfg.grid_points_per_wavelength < 40.0)
        fail(name, lineno, "grid.points_per_wavelength must be >= 40");
    } else if (key == "grid.tail_e_folds") {
      cfg.grid_tail_e_folds = parse_double(name, lineno, key, value);
      if (cfg.grid_tail_e_folds < 10.0) fail(name, lineno, "grid.tail_e_folds must be >= 10");
    } else {
      fail(name, lineno, "unknown key '" + key + "'");
    }
  }

  if (line_a_sc && line_xi)
    fail(name, std::max(line_a_sc, line_xi),
         "give exactly one of scatt.a_sc_nm (line " + std::to_string(line_a_sc) +
             ") and scatt.xi_s (line " + std::to_string(line_xi) + ")");
  if (line_c3 && line_table)
    fail(name, std::max(line_c3, line_table),
         "give exactly one of potential.c3_khz_nm3 (line " + std::to_string(line_c3) +
             ") and potential.table (line " + std::to_string(line_table) + ")");
  if (!cfg.xi_s && !cfg.a_sc_nm) cfg.xi_s = 0.042;
  if (!cfg.c3_khz_nm3 && cfg.potential_table_path.empty())
    cfg.c3_khz_nm3 = 6.2397e9;  // mean of binding * r_t^3 over the anchor rows
  if (cfg.pairing == ThermalPairing::Fixed && !cfg.fixed_t_uk)
    fail(name, lineno, "thermal.pairing = fixed requires thermal.t_uk");
  if (!(cfg.calib_wall_max_nm > cfg.calib_wall_min_nm))
    fail(name, lineno, "calib.wall_max_nm must exceed calib.wall_min_nm");
  if (cfg.calib_v > cfg.top_label) fail(name, lineno, "calib.v must not exceed levels.top_label");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, path);
}

double RunConfig::mu() const { return 0.5 * units::amu_to_au(mass_u); }

double RunConfig::a_sc() const {
  if (a_sc_nm) return units::nm_to_au(*a_sc_nm);
  // xi_s refers to the first listed trap frequency
  TrapSpec ref;
  ref.omega = units::trap_khz_to_omega_au(omega_khz.front());
  ref.mu = mu();
  return *xi_s * ref.trap_length();
}

TrapSpec RunConfig::trap_spec(double okhz) const {
  TrapSpec s;
  s.omega = units::trap_khz_to_omega_au(okhz);
  s.mu = mu();
  s.a_sc = a_sc();
  return s;
}

PotentialModel RunConfig::potential_model() const {
  PotentialModel m;
  m.mu = mu();
  if (!potential_table_path.empty()) {
    m.table = load_potential_table_file(potential_table_path);
    // asymptote constant read off the last tabulated point
    const auto& [r_last, v_last] = m.table.back();
    m.c3 = -v_last * r_last * r_last * r_last;
  } else {
    m.c3 = units::khz_to_au(*c3_khz_nm3) * std::pow(units::nm_to_au(1.0), 3);
  }
  const double wall = wall_nm ? *wall_nm : std::sqrt(calib_wall_min_nm * calib_wall_max_nm);
  m.inner = {InnerBoundaryKind::HardWall, units::nm_to_au(wall), 0.0};
  return m;
}

LaserSpec RunConfig::laser_spec() const {
  LaserSpec l;
  l.wavelength_nm = laser_lambda_nm;
  l.factor = laser_factor;
  l.omega_atomic = units::rad_s_to_au(2.0 * units::pi * laser_omega_a_thz * 1e12);
  l.d0 = laser_d0_au;
  l.orientation = laser_orientation;
  return l;
}

GridPolicy RunConfig::grid_policy() const {
  GridPolicy p;
  p.points_per_wavelength = grid_points_per_wavelength;
  p.tail_e_folds = grid_tail_e_folds;
  return p;
}

std::string RunConfig::echo() const {
  std::ostringstream os;
  os.precision(12);
  os << "species.mass_u = " << mass_u << "\n";
  os << "trap.omega_khz = ";
  for (std::size_t i = 0; i < omega_khz.size(); ++i) os << (i ? ", " : "") << omega_khz[i];
  os << "\n";
  if (a_sc_nm)
    os << "scatt.a_sc_nm = " << *a_sc_nm << "\n";
  else
    os << "scatt.xi_s = " << *xi_s << "\n";
  if (!potential_table_path.empty())
    os << "potential.table = " << potential_table_path << "\n";
  else
    os << "potential.c3_khz_nm3 = " << *c3_khz_nm3 << "\n";
  if (wall_nm) os << "potential.wall_nm = " << *wall_nm << "\n";
  os << "calib.v = " << calib_v << "\n";
  os << "calib.binding_khz = " << calib_binding_khz << "\n";
  os << "calib.wall_min_nm = " << calib_wall_min_nm << "\n";
  os << "calib.wall_max_nm = " << calib_wall_max_nm << "\n";
  os << "levels.top_label = " << top_label << "\n";
  os << "laser.lambda_nm = " << laser_lambda_nm << "\n";
  os << "laser.omega_a_thz = " << laser_omega_a_thz << "\n";
  os << "laser.d0_au = " << laser_d0_au << "\n";
  os << "laser.factor = " << to_string(laser_factor) << "\n";
  os << "laser.orientation = " << laser_orientation << "\n";
  os << "laser.field_v_cm = " << laser_field_v_cm << "\n";
  os << "gamma.bound_bound_khz = " << gamma_bb_khz << "\n";
  os << "thermal.pairing = " << (pairing == ThermalPairing::TrapLevel ? "trap_level" : "fixed")
     << "\n";
  if (fixed_t_uk) os << "thermal.t_uk = " << *fixed_t_uk << "\n";
  os << "maxwell.nodes = " << maxwell_nodes_n << "\n";
  os << "grid.trap_points = " << grid_trap_points << "\n";
  os << "grid.trap_rmin_at = " << grid_trap_rmin_at << "\n";
  os << "grid.points_per_wavelength = " << grid_points_per_wavelength << "\n";
  os << "grid.tail_e_folds = " << grid_tail_e_folds << "\n";
  return os.str();
}

std::string RunConfig::config_hash() const {
  const std::string text = echo();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace pa
