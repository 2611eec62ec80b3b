#include "pa/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pa/parallel.hpp"
#include "pa/units.hpp"

namespace pa {

std::string to_string(PhotonFactor f) {
  switch (f) {
    case PhotonFactor::Unity: return "unity";
    case PhotonFactor::CosHalf: return "cos_half";
    case PhotonFactor::CosFull: return "cos_full";
  }
  return "unity";
}

double LaserSpec::k_l() const { return 2.0 * units::pi / units::nm_to_au(wavelength_nm); }

LaserSpec LaserSpec::sodium_default() {
  LaserSpec l;
  l.omega_atomic = units::rad_s_to_au(2.0 * units::pi * 508.333e12);
  l.wavelength_nm = 2.0 * units::pi * units::speed_of_light_au / l.omega_atomic *
                    units::bohr_radius_nm;
  return l;
}

double photon_factor(const LaserSpec& laser, double r) {
  switch (laser.factor) {
    case PhotonFactor::Unity: return 1.0;
    case PhotonFactor::CosHalf: return std::cos(0.5 * laser.k_l() * r);
    case PhotonFactor::CosFull: return std::cos(laser.k_l() * r);
  }
  return 1.0;
}

namespace {

double edge_amplitude(const RadialWave& w, double r, double umax) {
  return std::abs(wave_at(w, r)) / umax;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double fc_bound_bound(const RadialWave& v_wave, const RadialWave& t_wave, const LaserSpec& laser) {
  const double lo = std::max(v_wave.grid.front(), t_wave.grid.front());
  const double hi = std::min(v_wave.grid.back(), t_wave.grid.back());
  if (!(hi > lo)) throw std::invalid_argument("fc_bound_bound: grids do not overlap");

  const double vmax = max_abs(v_wave.u);
  const double tmax = max_abs(t_wave.u);
  if (!(vmax > 0.0) || !(tmax > 0.0))
    throw std::invalid_argument("fc_bound_bound: empty wave");
  // when one grid cuts the other short, the product must already be dead at
  // that edge; a shared boundary truncates nothing
  auto check_edge = [&](double edge, double fa, double fb) {
    if (std::abs(fa - fb) <= 1e-9 * std::max(std::abs(fa), std::abs(fb))) return;
    const double p = edge_amplitude(v_wave, edge, vmax) * edge_amplitude(t_wave, edge, tmax);
    if (p > 1e-7)
      throw std::invalid_argument(
          "fc_bound_bound: grids insufficient (product not closed at an edge)");
  };
  check_edge(lo, v_wave.grid.front(), t_wave.grid.front());
  check_edge(hi, v_wave.grid.back(), t_wave.grid.back());

  // integrate on the denser grid inside the overlap, the other wave resampled
  auto median_spacing = [&](const RadialGrid& g) {
    std::vector<double> d;
    d.reserve(g.size());
    for (std::size_t i = 1; i < g.size(); ++i) {
      const double r0 = g.r[i - 1];
      if (r0 >= lo && g.r[i] <= hi) d.push_back(g.r[i] - r0);
    }
    if (d.empty()) return 0.0;
    std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
    return d[d.size() / 2];
  };
  const double mv = median_spacing(v_wave.grid);
  const double mt = median_spacing(t_wave.grid);
  const RadialWave& base = (mv > 0.0 && (mt == 0.0 || mv <= mt)) ? v_wave : t_wave;
  const RadialWave& other = (&base == &v_wave) ? t_wave : v_wave;

  std::vector<double> x, g;
  x.reserve(base.grid.size());
  g.reserve(base.grid.size());
  for (std::size_t i = 0; i < base.grid.size(); ++i) {
    const double r = base.grid.r[i];
    if (r < lo || r > hi) continue;
    x.push_back(r);
    g.push_back(base.u[i] * wave_at(other, r) * photon_factor(laser, r));
  }
  if (x.size() < 3) throw std::invalid_argument("fc_bound_bound: too few points in the overlap");
  return integrate(x, g);
}

double fc_free_bound(const RadialWave& v_wave, double epsilon, double a_sc, double mu,
                     const LaserSpec& laser) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("fc_free_bound: collision energy must be > 0");
  const double k = std::sqrt(2.0 * mu * epsilon);
  const double lambda = 2.0 * units::pi / k;
  const double max_dr = lambda / 45.0;

  // cut the integration where the bound tail has died away
  const double umax = max_abs(v_wave.u);
  std::size_t i_hi = v_wave.u.size() - 1;
  while (i_hi > 2 && std::abs(v_wave.u[i_hi]) < 1e-8 * umax) --i_hi;
  i_hi = std::min(i_hi + 2, v_wave.u.size() - 1);

  // walk the bound grid, subdividing intervals the scattering wave would
  // otherwise under-sample
  std::vector<double> x, g;
  x.reserve(i_hi + 1);
  g.reserve(i_hi + 1);
  const double amp = std::sqrt(k / (units::pi * epsilon));
  auto push = [&](double r, double uv) {
    x.push_back(r);
    g.push_back(uv * amp * std::sin(k * (r - a_sc)) * photon_factor(laser, r));
  };
  push(v_wave.grid.r[0], v_wave.u[0]);
  for (std::size_t i = 1; i <= i_hi; ++i) {
    const double r0 = v_wave.grid.r[i - 1];
    const double r1 = v_wave.grid.r[i];
    const double dr = r1 - r0;
    if (dr > max_dr) {
      const int sub = static_cast<int>(std::ceil(dr / max_dr));
      for (int s = 1; s < sub; ++s) {
        const double r = r0 + dr * s / sub;
        push(r, wave_at(v_wave, r));
      }
    }
    push(r1, v_wave.u[i]);
  }
  if (x.size() < 3) throw std::invalid_argument("fc_free_bound: too few points");
  return integrate(x, g);
}

CouplingResult bound_bound_result(const VibLevel& v, const TrapLevel& n_t,
                                  const LaserSpec& laser, double field_v_per_cm) {
  CouplingResult r;
  r.kind = "bound-bound";
  r.fc = fc_bound_bound(v.wave, n_t.wave, laser);
  r.fc_squared = r.fc * r.fc;
  r.rate = rabi_frequency(r.fc, laser, field_v_per_cm);
  std::ostringstream os;
  os << "v=" << v.v_label << " n_t=" << n_t.n_t << " factor=" << to_string(laser.factor)
     << " field_v_cm=" << field_v_per_cm;
  r.provenance = os.str();
  return r;
}

CouplingResult free_bound_result(const VibLevel& v, double epsilon, double a_sc, double mu,
                                 const LaserSpec& laser, double field_v_per_cm) {
  CouplingResult r;
  r.kind = "free-bound";
  r.fc = fc_free_bound(v.wave, epsilon, a_sc, mu, laser);
  r.fc_squared = r.fc * r.fc;
  r.rate = stimulated_rate(r.fc, laser, field_v_per_cm);
  std::ostringstream os;
  os << "v=" << v.v_label << " eps_au=" << epsilon << " factor=" << to_string(laser.factor)
     << " field_v_cm=" << field_v_per_cm;
  r.provenance = os.str();
  return r;
}

double rabi_frequency(double fc, const LaserSpec& laser, double field_v_per_cm) {
  const double e_au = units::v_cm_to_au(field_v_per_cm);
  return std::abs(laser.orientation * e_au * laser.d0 * fc);
}

double stimulated_rate(double fc_free, const LaserSpec& laser, double field_v_per_cm) {
  const double e_au = units::v_cm_to_au(field_v_per_cm);
  const double c = laser.orientation * e_au * laser.d0;
  return 2.0 * units::pi * c * c * fc_free * fc_free;
}

namespace {

double spont_prefactor(const LaserSpec& laser) {
  const double c = units::speed_of_light_au;
  return 4.0 / (3.0 * c * c * c) * laser.d0 * laser.d0;
}

}  // namespace

double spont_width_bound(const VibLevel& v, const TrapLevel& n_t, const LaserSpec& laser,
                         double gamma_bb) {
  const double w = laser.omega_atomic - v.binding_energy - n_t.energy;
  if (!(w > 0.0)) throw std::invalid_argument("spont_width_bound: nonpositive transition frequency");
  const double eta = fc_bound_bound(v.wave, n_t.wave, laser);
  return spont_prefactor(laser) * w * w * w * eta * eta + gamma_bb;
}

double spont_width_free(const VibLevel& v, const ThermalEnsemble& ensemble, double a_sc,
                        double mu, const LaserSpec& laser, double gamma_bb) {
  std::vector<double> terms(ensemble.epsilon.size());
  parallel_for(terms.size(), [&](std::size_t i) {
    const double eps = ensemble.epsilon[i];
    const double w = laser.omega_atomic - v.binding_energy - eps;
    if (!(w > 0.0)) throw std::invalid_argument("spont_width_free: nonpositive transition frequency");
    const double eta = fc_free_bound(v.wave, eps, a_sc, mu, laser);
    terms[i] = w * w * w * eta * eta;
  });
  double avg = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) avg += ensemble.weight[i] * terms[i];
  return spont_prefactor(laser) * avg * ensemble.kT + gamma_bb;
}

std::vector<ScanRow> scan_scattering_length(const VibLevel& v, int n_t, TrapSpec spec_template,
                                            double a_lo, double a_hi, int n_points,
                                            const LaserSpec& laser) {
  if (n_points < 2) throw std::invalid_argument("scan_scattering_length: need at least 2 points");
  if (!(a_hi > a_lo)) throw std::invalid_argument("scan_scattering_length: bad range");

  std::vector<ScanRow> rows(n_points);
  parallel_for(static_cast<std::size_t>(n_points), [&](std::size_t i) {
    ScanRow& row = rows[i];
    TrapSpec spec = spec_template;
    spec.a_sc = a_lo + (a_hi - a_lo) * static_cast<double>(i) / (n_points - 1);
    row.a_sc = spec.a_sc;
    row.xi = spec.xi();
    if (!(std::abs(row.xi) < 0.5)) {
      row.regime_ok = false;
      row.level_energy = std::numeric_limits<double>::quiet_NaN();
      row.eta = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    const double x = trap_root(spec, n_t);
    row.level_energy = x * spec.omega;
    const RadialWave t_wave = trap_wavefunction(x, spec, default_trap_grid(spec, n_t));
    row.eta = fc_bound_bound(v.wave, t_wave, laser);
  });
  return rows;
}

}  // namespace pa
