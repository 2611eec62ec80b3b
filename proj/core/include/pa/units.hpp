#pragma once

// Internal representation is Hartree atomic units throughout the library:
// hbar = m_e = a0 = e = 1. Everything that enters or leaves goes through the
// converters below.
//
// Two energy display conventions coexist in cold-atom work and are kept
// strictly apart here: E/h (plain frequency, Hz/kHz/MHz) and E/hbar (angular
// frequency, rad/s or Mrad/s). They differ by 2*pi; column names in every
// output say which one they carry.

namespace pa::units {

inline constexpr double pi = 3.14159265358979323846;

// CODATA 2018
inline constexpr double bohr_radius_nm = 0.0529177210903;        // nm per a0
inline constexpr double hartree_hz = 6.579683920502e15;          // (E/h) of 1 Ha
inline constexpr double hartree_rad_s = 4.134137333518e16;       // (E/hbar) of 1 Ha
inline constexpr double electron_masses_per_amu = 1822.888486209;
inline constexpr double boltzmann_au = 3.1668115634556e-6;       // Ha per K
inline constexpr double speed_of_light_au = 137.035999084;
inline constexpr double efield_au_v_cm = 5.14220674763e9;        // V/cm of 1 a.u. field

// length
inline constexpr double nm_to_au(double nm) { return nm / bohr_radius_nm; }
inline constexpr double au_to_nm(double au) { return au * bohr_radius_nm; }

// energy, E/h convention
inline constexpr double hz_to_au(double hz) { return hz / hartree_hz; }
inline constexpr double au_to_hz(double e) { return e * hartree_hz; }
inline constexpr double khz_to_au(double khz) { return khz * 1e3 / hartree_hz; }
inline constexpr double au_to_khz(double e) { return e * hartree_hz / 1e3; }
inline constexpr double mhz_to_au(double mhz) { return mhz * 1e6 / hartree_hz; }
inline constexpr double au_to_mhz(double e) { return e * hartree_hz / 1e6; }

// energy, E/hbar convention
inline constexpr double mrad_s_to_au(double mrad_s) { return mrad_s * 1e6 / hartree_rad_s; }
inline constexpr double au_to_mrad_s(double e) { return e * hartree_rad_s / 1e6; }

// angular frequency (rad/s) <-> a.u.; numerically the same scale as E/hbar
inline constexpr double rad_s_to_au(double w) { return w / hartree_rad_s; }
inline constexpr double au_to_rad_s(double w) { return w * hartree_rad_s; }

// trap frequency given as nu_t = omega_t/(2*pi) in kHz
inline constexpr double trap_khz_to_omega_au(double nu_khz) {
  return 2.0 * pi * nu_khz * 1e3 / hartree_rad_s;
}

// mass
inline constexpr double amu_to_au(double u) { return u * electron_masses_per_amu; }
inline constexpr double au_to_amu(double m) { return m / electron_masses_per_amu; }

// temperature: thermal energy k_B*T in Ha
inline constexpr double kelvin_to_kt_au(double t_k) { return t_k * boltzmann_au; }
inline constexpr double kt_au_to_kelvin(double kt) { return kt / boltzmann_au; }
inline constexpr double uk_to_kt_au(double t_uk) { return t_uk * 1e-6 * boltzmann_au; }
inline constexpr double kt_au_to_uk(double kt) { return kt / boltzmann_au * 1e6; }

// laser electric field
inline constexpr double v_cm_to_au(double e_v_cm) { return e_v_cm / efield_au_v_cm; }

}  // namespace pa::units
