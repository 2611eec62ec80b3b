#include "pa/scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "pa/specfun.hpp"
#include "pa/units.hpp"

namespace pa {

double free_wave_at(double epsilon, double a_sc, double mu, double r) {
  const double k = std::sqrt(2.0 * mu * epsilon);
  return std::sqrt(k / (units::pi * epsilon)) * std::sin(k * (r - a_sc));
}

FreeState free_state(double epsilon, double a_sc, double mu, const RadialGrid& grid) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("free_state: collision energy must be > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("free_state: mu must be > 0");
  validate_grid(grid);

  FreeState st;
  st.epsilon = epsilon;
  st.a_sc = a_sc;
  st.k = std::sqrt(2.0 * mu * epsilon);

  const double lambda = 2.0 * units::pi / st.k;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid.r[i] - grid.r[i - 1] > lambda / 40.0)
      throw std::invalid_argument("free_state: grid under-resolves the scattering wavelength");

  st.wave.grid = grid;
  st.wave.norm = NormConvention::PerSqrtEnergy;
  st.wave.u.resize(grid.size());
  const double amp = std::sqrt(st.k / (units::pi * epsilon));
  for (std::size_t i = 0; i < grid.size(); ++i)
    st.wave.u[i] = amp * std::sin(st.k * (grid.r[i] - a_sc));
  return st;
}

namespace {

// Generalized Laguerre L_n^alpha(x) and its derivative by recurrence.
void laguerre_eval(int n, double alpha, double x, double& l, double& lp) {
  double l0 = 1.0, l1 = 1.0 + alpha - x;
  if (n == 0) {
    l = l0;
    lp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double l2 = ((2.0 * k - 1.0 + alpha - x) * l1 - (k - 1.0 + alpha) * l0) / k;
    l0 = l1;
    l1 = l2;
  }
  l = l1;
  lp = (n * l1 - (n + alpha) * l0) / x;
}

}  // namespace

ThermalEnsemble maxwell_nodes(double kT, int n) {
  if (!(kT > 0.0)) throw std::invalid_argument("maxwell_nodes: kT must be > 0");
  if (n < 8) throw std::invalid_argument("maxwell_nodes: need at least 8 nodes");

  const double alpha = 0.5;
  ThermalEnsemble ens;
  ens.kT = kT;
  ens.epsilon.resize(n);
  ens.weight.resize(n);

  double x = 0.0;
  for (int i = 0; i < n; ++i) {
    // initial guesses follow the classical gaulag recipe
    if (i == 0) {
      x = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
    } else if (i == 1) {
      x += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
    } else {
      const double ai = i - 1;
      x += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) * (x - ens.epsilon[i - 2]) /
           (1.0 + 0.3 * alpha);
    }
    double l = 0.0, lp = 0.0;
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
      laguerre_eval(n, alpha, x, l, lp);
      const double dx = l / lp;
      x -= dx;
      if (std::abs(dx) <= 1e-14 * std::max(1.0, std::abs(x))) {
        ok = true;
        break;
      }
    }
    if (!ok) throw std::runtime_error("maxwell_nodes: Newton iteration stalled");
    laguerre_eval(n, alpha, x, l, lp);
    double lnm = 0.0, lnmp = 0.0;
    laguerre_eval(n + 1, alpha, x, lnm, lnmp);
    // w_i = Gamma(n+alpha+1)/n! * x / ((n+1)^2 [L_{n+1}^alpha(x)]^2)
    const double lg = ln_gamma_signed(n + alpha + 1.0).log_magnitude -
                      ln_gamma_signed(n + 1.0).log_magnitude;
    ens.epsilon[i] = x;  // temporarily the dimensionless node
    ens.weight[i] = std::exp(lg) * x / ((n + 1.0) * (n + 1.0) * lnm * lnm);
  }

  // normalize against Gamma(alpha+1) = sqrt(pi)/2 and map to energy
  double sum = 0.0;
  for (double w : ens.weight) sum += w;
  const double gamma_a1 = 0.5 * std::sqrt(units::pi);
  if (std::abs(sum / gamma_a1 - 1.0) > 1e-8)
    throw std::runtime_error("maxwell_nodes: weight sum failed the Gamma(3/2) check");
  for (int i = 0; i < n; ++i) {
    ens.weight[i] /= sum;
    ens.epsilon[i] *= kT;
  }
  return ens;
}

}  // namespace pa
