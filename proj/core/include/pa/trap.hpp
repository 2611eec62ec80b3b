#pragma once

#include <vector>

#include "pa/grid.hpp"

namespace pa {

// Relative-motion problem of two identical atoms in an isotropic harmonic
// trap with a regularized contact interaction. All members in a.u.
struct TrapSpec {
  double omega = 0.0;  // angular trap frequency
  double mu = 0.0;     // reduced mass
  double a_sc = 0.0;   // s-wave scattering length, signed

  double trap_length() const;  // a_t = sqrt(1/(mu*omega))
  double xi() const;           // a_sc / a_t

  // Na pair, nu_t = omega/(2*pi) in kHz; a_sc fixed by xi = 0.042 at 100 kHz
  // unless given explicitly in nm.
  static TrapSpec sodium(double omega_khz, double a_sc_nm);
  static TrapSpec sodium_default(double omega_khz = 100.0);
};

struct TrapLevel {
  int n_t = 0;                 // s-wave solution index, counted upward
  double x = 0.0;              // eps / (hbar * omega_t)
  double nu = 0.0;             // x/2 - 3/4
  double energy = 0.0;         // a.u.
  RadialWave wave;             // unit norm
  double turning_point = 0.0;  // sqrt(2*eps/(mu*omega^2))
};

// Dimensionless eigenvalue x_n of the contact-interaction spectrum: the n-th
// root of Gamma(-x/2+3/4)/Gamma(-x/2+1/4) = 1/(sqrt(2)*xi), bracketed
// between consecutive poles of the left-hand side. xi = 0 returns 2n + 3/2
// exactly. Requires |xi| < 0.5.
double trap_root(const TrapSpec& spec, int n);

// Residual of the root equation in the well-conditioned reciprocal form,
// |Gamma(-x/2+1/4)/Gamma(-x/2+3/4) - sqrt(2)*xi|.
double trap_root_residual(const TrapSpec& spec, double x);

std::vector<TrapLevel> trap_levels(const TrapSpec& spec, int n_max);
std::vector<TrapLevel> trap_levels(const TrapSpec& spec, int n_max, const RadialGrid& grid);

// eps ~= [3/2 + 2 n + sqrt(2/pi) * xi * C_n] * hbar * omega, first order in xi.
double trap_energy_perturbative(int n_t, const TrapSpec& spec);

// u(R) = R * Phi(R) for a solved root x, unit-normalized on the grid.
// The grid must cover [0.02 a_t, (8 + sqrt(2x)) a_t].
RadialWave trap_wavefunction(double level_x, const TrapSpec& spec, const RadialGrid& grid);

// Classical turning point in the harmonic potential, R_t = sqrt(2 eps / (mu omega^2)).
double trap_turning_point(double energy, const TrapSpec& spec);

// Log grid wide and dense enough for levels up to n_max.
RadialGrid default_trap_grid(const TrapSpec& spec, int n_max);

// Oscillator-node count of a trap wave (the contact zero near R = a_sc for
// a_sc > 0 is excluded).
int trap_node_count(const RadialWave& wave, const TrapSpec& spec);

}  // namespace pa
