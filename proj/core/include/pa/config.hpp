#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pa/coupling.hpp"
#include "pa/longrange.hpp"
#include "pa/trap.hpp"

namespace pa {

// Thrown by load_config with a message that names the offending key and line.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class ThermalPairing { TrapLevel, Fixed };

// One `key = value` per line, '#' comments, dotted section keys. Unknown keys
// are rejected. Exactly one of {scatt.a_sc_nm, scatt.xi_s} and exactly one of
// {potential.c3_khz_nm3, potential.table} may be given; defaults fill the rest.
struct RunConfig {
  // species and trap
  double mass_u = 22.98977;
  std::vector<double> omega_khz = {100.0};
  // scattering length: xi_s is referred to the first trap frequency
  std::optional<double> a_sc_nm;
  std::optional<double> xi_s;
  // excited potential
  std::optional<double> c3_khz_nm3;
  std::string potential_table_path;
  std::optional<double> wall_nm;  // fixed wall; absent -> calibrate
  int calib_v = 33;
  double calib_binding_khz = 1460.0;
  double calib_wall_min_nm = 10.2;
  double calib_wall_max_nm = 27.2;
  int top_label = 39;
  // laser
  double laser_lambda_nm = 589.758;
  double laser_omega_a_thz = 508.333;
  double laser_d0_au = 3.5007;
  PhotonFactor laser_factor = PhotonFactor::Unity;
  double laser_orientation = 1.0;
  double laser_field_v_cm = 1.0;
  // linewidths
  double gamma_bb_khz = 0.0;  // pass-through bound-bound constant
  ThermalPairing pairing = ThermalPairing::TrapLevel;
  std::optional<double> fixed_t_uk;
  int maxwell_nodes_n = 64;
  // grids
  double grid_trap_points = 8193;
  double grid_trap_rmin_at = 0.02;
  double grid_points_per_wavelength = 512.0;
  double grid_tail_e_folds = 24.0;

  // derived quantities (a.u.)
  double mu() const;
  double a_sc() const;                       // signed, a.u.
  TrapSpec trap_spec(double omega_khz) const;
  PotentialModel potential_model() const;    // boundary not yet calibrated
  LaserSpec laser_spec() const;
  GridPolicy grid_policy() const;

  // canonical echo, sufficient to re-run the computation exactly
  std::string echo() const;
  std::string config_hash() const;  // FNV-1a of the echo
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& name);

}  // namespace pa
