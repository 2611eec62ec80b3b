#pragma once

#include <functional>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "pa/grid.hpp"

namespace pa {

enum class InnerBoundaryKind { HardWall, LogDerivative };

struct InnerBoundary {
  InnerBoundaryKind kind = InnerBoundaryKind::HardWall;
  double r_in = 0.0;           // a.u.
  double log_derivative = 0.0; // u'/u at r_in, used by LogDerivative only
};

// Excited molecular potential with a -c3/R^3 asymptote. An optional
// tabulated short-range part joins the asymptote continuously at its last
// point; below the table the potential is not defined (the inner boundary
// must sit inside the tabulated range).
struct PotentialModel {
  double c3 = 0.0;  // a.u. (energy * length^3), > 0 for attraction
  double mu = 0.0;  // reduced mass, a.u.
  std::vector<std::pair<double, double>> table;  // (R, V(R)) a.u., optional
  InnerBoundary inner;

  // v-label bookkeeping filled in by calibrate_boundary: the level with
  // `anchor_nodes` radial nodes carries label `anchor_label`.
  int anchor_nodes = -1;
  int anchor_label = 0;

  double v(double r) const;
};

struct VibLevel {
  int v_label = 0;
  double binding_energy = 0.0;  // eps_v = -E_v > 0, a.u.
  RadialWave wave;              // unit norm
  int nodes = 0;
  double r_t = 0.0;    // outer turning point
  double r_max = 0.0;  // radius of max |u|^2
};

struct GridPolicy {
  double points_per_wavelength = 512.0;  // solver grids; documented floor is 40
  double tail_e_folds = 24.0;            // evanescent tail length in 1/kappa
  double max_step_x = 0.02;              // cap on the log-space step
  std::size_t max_points = 4000000;
};

// ---------------------------------------------------------------------------
// Generic radial eigensolver (Numerov, inward+outward sweeps, log-derivative
// matching). Exposed so the machinery can be checked against potentials with
// known spectra.
// ---------------------------------------------------------------------------

struct RadialProblem {
  std::function<double(double)> potential;  // V(r), a.u.
  double mu = 0.0;
  InnerBoundary inner;
  double r_out = 0.0;  // Dirichlet cut-off
};

struct SolverGrid {
  bool log_space = false;  // integrate phi = u/sqrt(R) on x = ln R
  std::vector<double> r;
  std::vector<double> vpot;  // cached V(r_i)
  double h = 0.0;            // step in x (log) or R (uniform)
};

SolverGrid make_solver_grid(const RadialProblem& prob, bool log_space, std::size_t n_points);

// Number of nodes of the regular solution integrated across the grid at
// energy E; by Sturm oscillation this counts eigenvalues below E.
int count_nodes_at_energy(const RadialProblem& prob, const SolverGrid& grid, double energy);

// Eigenvalue with k radial nodes inside [e_lo, e_hi]; node-count bisection
// followed by secant refinement of the matching defect.
double solve_level(const RadialProblem& prob, const SolverGrid& grid, int k,
                   double e_lo, double e_hi, double rel_tol = 1e-10);

// Matched, unit-normalized eigenfunction at energy E.
RadialWave eigen_wave(const RadialProblem& prob, const SolverGrid& grid, double energy);

// ---------------------------------------------------------------------------
// Spec-level operations on the -c3/R^3 model
// ---------------------------------------------------------------------------

// All bound levels with binding energy inside (eps_min, eps_max), each found
// exactly once; binding energies converged to |d eps/eps| < 1e-9.
std::vector<VibLevel> solve_levels(const PotentialModel& model,
                                   std::pair<double, double> binding_window,
                                   const GridPolicy& policy = {});

// Total number of bound levels (node count of a just-below-threshold probe).
int count_bound_levels(const PotentialModel& model, const GridPolicy& policy = {});

double outer_turning_point(const PotentialModel& model, double eps_v);

double r_max_probability(const VibLevel& level);

// Least-squares constant c3 = mean of eps_v * r_t^3 over rows; residual is
// the relative population standard deviation.
std::pair<double, double> calibrate_c3(const std::vector<std::pair<double, double>>& rows);

struct CalibrationOptions {
  double wall_min = 0.0;  // a.u.; defaults chosen in the implementation
  double wall_max = 0.0;
  double rel_tol = 1e-6;
  int top_label = 39;  // least-bound level label after calibration
};

// Tunes the hard-wall radius so that the level with the target label sits at
// the target binding energy, with exactly (top_label - target_label) levels
// above it. Returns the model with the boundary and label anchors set.
PotentialModel calibrate_boundary(PotentialModel model,
                                  std::pair<int, double> target,
                                  const GridPolicy& policy = {},
                                  const CalibrationOptions& opts = {});

struct LeRoyBernsteinFit {
  double v_d = 0.0;  // noninteger quantum number at threshold
  double slope = 0.0;  // H in eps_v = [H (v_d - v)]^6
  std::vector<double> residuals;  // per-level relative residual on eps_v
};

// Linear fit of eps_v^(1/6) against v for a -1/R^3 tail.
LeRoyBernsteinFit leroy_bernstein_fit(const std::vector<std::pair<int, double>>& levels);

// Tabulated-potential file: '#' comments, two columns per line (R in nm,
// V/h in MHz), rows strictly increasing in R.
std::vector<std::pair<double, double>> load_potential_table(std::istream& in,
                                                            const std::string& name);
std::vector<std::pair<double, double>> load_potential_table_file(const std::string& path);

// Validates table/asymptote stitching (jump < 1% of local |V|).
void validate_potential_model(const PotentialModel& model);

}  // namespace pa
