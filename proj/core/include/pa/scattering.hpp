#pragma once

#include <vector>

#include "pa/grid.hpp"

namespace pa {

// Energy-normalized s-wave scattering state of two free atoms,
// u(R) = sqrt(k/(pi*eps)) * sin(k (R - a_sc)), the asymptotic form used for
// every free-bound integral here.
struct FreeState {
  double epsilon = 0.0;  // collision energy, a.u.
  double k = 0.0;        // sqrt(2 mu eps)
  double a_sc = 0.0;
  RadialWave wave;       // norm convention PerSqrtEnergy
};

FreeState free_state(double epsilon, double a_sc, double mu, const RadialGrid& grid);

// Analytic amplitude, usable on any abscissa without sampling error.
double free_wave_at(double epsilon, double a_sc, double mu, double r);

// Quadrature nodes/weights for averages over the Maxwell collision-energy
// density P(eps) ~ sqrt(eps) exp(-eps/kT); weights sum to 1.
struct ThermalEnsemble {
  double kT = 0.0;  // thermal energy, a.u.
  std::vector<double> epsilon;
  std::vector<double> weight;
};

// Mapped generalized Gauss-Laguerre rule (alpha = 1/2), exact for
// polynomial integrands up to degree 2n-1 against the Maxwell weight.
ThermalEnsemble maxwell_nodes(double kT, int n);

}  // namespace pa
