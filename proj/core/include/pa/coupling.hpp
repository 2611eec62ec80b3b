#pragma once

#include <string>
#include <vector>

#include "pa/grid.hpp"
#include "pa/longrange.hpp"
#include "pa/scattering.hpp"
#include "pa/trap.hpp"

namespace pa {

// Photon recoil factor inside the radial overlap integral. The model's
// interaction term carries cos(k_L R / 2) while the overlap integrals are
// also written with cos(k_L R); both appear here together with a plain
// overlap, selectable per run.
enum class PhotonFactor { Unity, CosHalf, CosFull };

std::string to_string(PhotonFactor f);

struct LaserSpec {
  double wavelength_nm = 589.758;      // sets k_L
  PhotonFactor factor = PhotonFactor::Unity;
  double omega_atomic = 0.0;           // bare atomic transition, a.u. angular
  double d0 = 3.5007;                  // |D0|, a.u.
  double orientation = 1.0;            // <eps_hat . mu_hat>, scalar

  double k_l() const;                  // a.u. (1/a0)

  static LaserSpec sodium_default();
};

double photon_factor(const LaserSpec& laser, double r);

struct CouplingResult {
  double fc = 0.0;          // eta; dimensionless (bound-bound) or per sqrt(Ha)
  double fc_squared = 0.0;
  double rate = 0.0;        // a.u. angular rate when applicable
  std::string kind;
  std::string provenance;   // the states, laser mode, and drive behind fc/rate
};

// Bundled fc + Rabi frequency for a (v, n_t) pair at the given drive field.
CouplingResult bound_bound_result(const VibLevel& v, const TrapLevel& n_t,
                                  const LaserSpec& laser, double field_v_per_cm);

// Bundled fc + stimulated rate for (v, eps).
CouplingResult free_bound_result(const VibLevel& v, double epsilon, double a_sc, double mu,
                                 const LaserSpec& laser, double field_v_per_cm);

// eta = integral of u_v u_t f(R) dR over the common support; both inputs
// unit-normalized.
double fc_bound_bound(const RadialWave& v_wave, const RadialWave& t_wave, const LaserSpec& laser);

// eta(eps) = integral of u_v u_eps f(R) dR, 1/sqrt(energy); the free wave is
// evaluated analytically on the bound grid, refined to keep >= 40 points per
// scattering wavelength.
double fc_free_bound(const RadialWave& v_wave, double epsilon, double a_sc, double mu,
                     const LaserSpec& laser);

// Omega = |orientation * E * D0 * eta| / hbar for a bound-bound fc.
double rabi_frequency(double fc, const LaserSpec& laser, double field_v_per_cm);

// Gamma_st = (2 pi / hbar) (orientation * E * D0)^2 |eta|^2; |eta|^2 carries
// 1/energy, so the result is a rate.
double stimulated_rate(double fc_free, const LaserSpec& laser, double field_v_per_cm);

// gamma = (4 / 3 hbar c^3) w_vn^3 |D0|^2 |eta|^2 + gamma_bb,
// w_vn = w_A - (eps_v + eps_nt)/hbar.
double spont_width_bound(const VibLevel& v, const TrapLevel& n_t, const LaserSpec& laser,
                         double gamma_bb = 0.0);

// Maxwell average of the spectral density (4 / 3 hbar c^3) w^3 |D0|^2
// |eta(eps)|^2 over the ensemble, times the thermal window k_B T, plus
// gamma_bb. The kT factor stands in for the d(eps) measure of the
// distribution-weighted integral and makes the result a rate.
double spont_width_free(const VibLevel& v, const ThermalEnsemble& ensemble, double a_sc,
                        double mu, const LaserSpec& laser, double gamma_bb = 0.0);

struct ScanRow {
  double a_sc = 0.0;      // a.u.
  double xi = 0.0;
  double level_energy = 0.0;  // trap level, a.u.
  double eta = 0.0;
  bool regime_ok = true;
};

// Re-solves the trap level at each scattering length and evaluates the
// bound-bound fc against a fixed molecular level.
std::vector<ScanRow> scan_scattering_length(const VibLevel& v, int n_t, TrapSpec spec_template,
                                            double a_lo, double a_hi, int n_points,
                                            const LaserSpec& laser);

}  // namespace pa
