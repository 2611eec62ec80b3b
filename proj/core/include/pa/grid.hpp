#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pa {

enum class GridKind { Uniform, Log };

// Strictly increasing radial abscissae in a.u.; first point > 0, at least
// three points.
struct RadialGrid {
  std::vector<double> r;
  GridKind kind = GridKind::Uniform;

  std::size_t size() const { return r.size(); }
  double front() const { return r.front(); }
  double back() const { return r.back(); }
};

RadialGrid make_grid(double r_min, double r_max, std::size_t n, GridKind kind);

// Validates the RadialGrid invariants; throws std::invalid_argument.
void validate_grid(const RadialGrid& g);

// Composite quadrature of y over x (parabolic panels on nonuniform
// abscissae). Exact for quadratics; error O(h^4) on smooth integrands.
double integrate(std::span<const double> x, std::span<const double> y);
double integrate(const RadialGrid& g, std::span<const double> f);

enum class NormConvention { Unit, PerSqrtEnergy };

// Reduced radial amplitude u(R) = R * Phi(R) sampled on a grid.
struct RadialWave {
  RadialGrid grid;
  std::vector<double> u;
  NormConvention norm = NormConvention::Unit;

  double norm_squared() const;
};

// Rescales to unit L2 norm under the module quadrature. Shape is preserved
// up to a positive scalar; throws on zero-norm input.
RadialWave normalize(RadialWave w);

// 4-point Lagrange interpolation of the wave at radius r; zero outside the
// sampled range (waves vanish there by construction).
double wave_at(const RadialWave& w, double r);

// Sign changes of u, ignoring samples below floor_frac * max|u|.
int count_sign_changes(std::span<const double> u, double floor_frac = 1e-9);

}  // namespace pa
