#include "pa/trap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pa/specfun.hpp"
#include "pa/units.hpp"

namespace pa {

namespace {

constexpr double kXiRegime = 0.5;
constexpr double kSodiumMassU = 22.98977;

void require_spec(const TrapSpec& s) {
  if (!(s.omega > 0.0) || !(s.mu > 0.0))
    throw std::invalid_argument("TrapSpec: omega and mu must be positive");
  if (!(std::abs(s.xi()) < kXiRegime))
    throw std::invalid_argument("TrapSpec: |xi| = |a_sc|/a_t outside the contact-model regime (< 0.5)");
}

// Reciprocal form of the root equation,
//   g(x) = Gamma(-x/2 + 1/4)/Gamma(-x/2 + 3/4) - sqrt(2)*xi,
// which is finite and increasing across each bracket, with a simple zero
// where the original ratio equals 1/(sqrt(2)*xi).
double root_fn(double x, double xi) {
  return gamma_ratio(-0.5 * x + 0.25, -0.5 * x + 0.75) - std::sqrt(2.0) * xi;
}

}  // namespace

double TrapSpec::trap_length() const { return 1.0 / std::sqrt(mu * omega); }

double TrapSpec::xi() const { return a_sc / trap_length(); }

TrapSpec TrapSpec::sodium(double omega_khz, double a_sc_nm) {
  TrapSpec s;
  s.omega = units::trap_khz_to_omega_au(omega_khz);
  s.mu = 0.5 * units::amu_to_au(kSodiumMassU);
  s.a_sc = units::nm_to_au(a_sc_nm);
  return s;
}

TrapSpec TrapSpec::sodium_default(double omega_khz) {
  TrapSpec ref = sodium(100.0, 0.0);
  const double a_sc_nm = units::au_to_nm(0.042 * ref.trap_length());
  return sodium(omega_khz, a_sc_nm);
}

double trap_root(const TrapSpec& spec, int n) {
  require_spec(spec);
  if (n < 0) throw std::invalid_argument("trap_root: n must be >= 0");
  const double xi = spec.xi();
  if (xi == 0.0) return 2.0 * n + 1.5;

  // xi > 0: root in (2n+3/2, 2n+5/2); xi < 0: root in (2n+1/2, 2n+3/2).
  // g is increasing on either bracket, -sqrt(2)*xi at the removable end and
  // +inf at the pole end.
  double lo, hi;
  if (xi > 0.0) {
    lo = 2.0 * n + 1.5;
    hi = 2.0 * n + 2.5;
  } else {
    lo = 2.0 * n + 0.5;
    hi = 2.0 * n + 1.5;
  }
  // signs only: g(lo+) < 0 < g(hi-)
  double a = lo, b = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double g = root_fn(mid, xi);
    if (g < 0.0)
      a = mid;
    else
      b = mid;
    if (b - a < 1e-13 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (a + b);
}

double trap_root_residual(const TrapSpec& spec, double x) {
  return std::abs(root_fn(x, spec.xi()));
}

double trap_energy_perturbative(int n_t, const TrapSpec& spec) {
  if (n_t < 0) throw std::invalid_argument("trap_energy_perturbative: n_t must be >= 0");
  require_spec(spec);
  const double shift = std::sqrt(2.0 / units::pi) * spec.xi() * gen_binom_half(n_t);
  return (1.5 + 2.0 * n_t + shift) * spec.omega;
}

double trap_turning_point(double energy, const TrapSpec& spec) {
  if (!(energy > 0.0)) throw std::invalid_argument("trap_turning_point: energy must be > 0");
  return std::sqrt(2.0 * energy / (spec.mu * spec.omega * spec.omega));
}

RadialGrid default_trap_grid(const TrapSpec& spec, int n_max) {
  const double a_t = spec.trap_length();
  const double x_hi = 2.0 * n_max + 2.5;
  const double span = std::max(12.0, 9.0 + std::sqrt(2.0 * x_hi));
  return make_grid(0.02 * a_t, span * a_t, 8193, GridKind::Log);
}

RadialWave trap_wavefunction(double level_x, const TrapSpec& spec, const RadialGrid& grid) {
  require_spec(spec);
  validate_grid(grid);
  const double a_t = spec.trap_length();
  if (spec.xi() == 0.0) {
    const double n_real = (level_x - 1.5) / 2.0;
    if (std::abs(n_real - std::round(n_real)) > 1e-9)
      throw std::invalid_argument("trap_wavefunction: x is not a solved root");
  } else if (trap_root_residual(spec, level_x) > 1e-8) {
    throw std::invalid_argument("trap_wavefunction: x is not a solved root");
  }

  if (grid.front() > 0.0201 * a_t || grid.back() < (8.0 + std::sqrt(2.0 * level_x)) * a_t)
    throw std::invalid_argument("trap_wavefunction: grid does not cover [0.02 a_t, (8+sqrt(2x)) a_t]");

  const double nu = 0.5 * level_x - 0.75;
  RadialWave w;
  w.grid = grid;
  w.u.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double rb = grid.r[i] / a_t;
    const double z = rb * rb;
    // overall constants (including Gamma(-nu)) drop out in the numeric
    // normalization below
    w.u[i] = grid.r[i] * std::exp(-0.5 * z) * tricomi_u(-nu, 1.5, z);
  }

  // sign convention: outermost lobe positive
  double umax = 0.0;
  for (double v : w.u) umax = std::max(umax, std::abs(v));
  for (std::size_t i = grid.size(); i-- > 0;) {
    if (std::abs(w.u[i]) > 1e-3 * umax) {
      if (w.u[i] < 0.0)
        for (double& v : w.u) v = -v;
      break;
    }
  }

  w = normalize(std::move(w));

  // tail-norm estimate outside the grid (Gaussian decay scale a_t^2 / 2R)
  const double u_end = w.u.back();
  const double tail = u_end * u_end * a_t * a_t / (2.0 * grid.back());
  if (tail > 1e-8)
    throw std::invalid_argument("trap_wavefunction: grid coverage insufficient (tail norm > 1e-8)");
  return w;
}

int trap_node_count(const RadialWave& wave, const TrapSpec& spec) {
  // For a_sc > 0 the wave has one contact zero near R ~ a_sc that is not an
  // oscillator node; oscillator nodes stay outside min(3 a_sc, 0.2 a_t) for
  // the levels this model supports, so counting starts beyond that radius.
  double r_c = 0.0;
  if (spec.a_sc > 0.0) r_c = std::min(3.0 * spec.a_sc, 0.2 * spec.trap_length());

  double umax = 0.0;
  for (std::size_t i = 0; i < wave.u.size(); ++i)
    if (wave.grid.r[i] > r_c) umax = std::max(umax, std::abs(wave.u[i]));
  if (umax == 0.0) return 0;
  const double floor = 1e-9 * umax;

  int changes = 0;
  double prev = 0.0;
  for (std::size_t i = 0; i < wave.u.size(); ++i) {
    if (wave.grid.r[i] <= r_c) continue;
    const double v = wave.u[i];
    if (std::abs(v) <= floor) continue;
    if (prev != 0.0 && ((prev > 0.0) != (v > 0.0))) ++changes;
    prev = v;
  }
  return changes;
}

std::vector<TrapLevel> trap_levels(const TrapSpec& spec, int n_max) {
  return trap_levels(spec, n_max, default_trap_grid(spec, n_max));
}

std::vector<TrapLevel> trap_levels(const TrapSpec& spec, int n_max, const RadialGrid& grid) {
  require_spec(spec);
  if (n_max < 0) throw std::invalid_argument("trap_levels: n_max must be >= 0");

  std::vector<TrapLevel> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    TrapLevel lv;
    lv.n_t = n;
    lv.x = trap_root(spec, n);
    lv.nu = 0.5 * lv.x - 0.75;
    lv.energy = lv.x * spec.omega;
    lv.wave = trap_wavefunction(lv.x, spec, grid);
    lv.turning_point = trap_turning_point(lv.energy, spec);
    const int nodes = trap_node_count(lv.wave, spec);
    if (nodes != n)
      throw std::runtime_error("trap_levels: node count " + std::to_string(nodes) +
                               " does not match n_t = " + std::to_string(n));
    out.push_back(std::move(lv));
  }
  return out;
}

}  // namespace pa
