// Acceptance suite: one test case per release criterion, each printing a
// single PASS/FAIL line. Criteria come from the project contract; a handful
// of subclauses encode reference-table cells that the computed physics
// demonstrably contradicts -- those are asserted as stated and documented in
// the README rather than loosened here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "pa/commands.hpp"
#include "pa/config.hpp"
#include "pa/coupling.hpp"
#include "pa/longrange.hpp"
#include "pa/scattering.hpp"
#include "pa/specfun.hpp"
#include "pa/trap.hpp"
#include "pa/units.hpp"

using namespace pa;
using namespace pa::units;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[ACCEPT] %s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
}

RunConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "acceptance");
}

std::string out_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("pa_acceptance_" + tag);
  std::filesystem::remove_all(p);
  return p.string();
}

PotentialModel calibrated_sodium(const RunConfig& cfg) {
  PotentialModel model;
  solve_labeled_levels(cfg, 33, 33, &model);
  return model;
}

const std::vector<std::pair<double, double>> kTable2 = {
    {1460.0, 162.3}, {550.0, 224.8}, {170.0, 332.3}, {39.5, 540.3},
    {5.7, 1000.0},   {0.3017, 2700.0}, {0.0003, 28200.0}};

}  // namespace

TEST_CASE("criterion 1: trap spectrum blocks at both frequencies") {
  Stopwatch clock;
  const RunConfig cfg = config_from("trap.omega_khz = 100, 10\nscatt.xi_s = 0.042\n");
  CmdOptions opts;
  opts.out_dir = out_dir("c1");
  opts.nt_max = 2;
  const ResultTable t = cmd_trap_levels(cfg, opts)[0];

  const double want_mrad[2][3] = {{0.96, 2.23, 3.49}, {0.095, 0.221, 0.347}};
  const double want_rt[2][3] = {{164.25, 249.89, 312.78}, {515.44, 786.35, 985.28}};
  bool ok = t.rows.size() == 6;
  for (int b = 0; b < 2 && ok; ++b) {
    for (int n = 0; n <= 2; ++n) {
      const auto& row = t.rows[3 * b + n];
      ok = ok && std::abs(row[4] / want_mrad[b][n] - 1.0) < 0.02;
      ok = ok && std::abs(row[6] / want_rt[b][n] - 1.0) < 0.01;
    }
  }
  const bool in_time = clock.seconds() < 1.0;
  report(1, ok && in_time, "six energies within 2% and six turning points within 1%" +
                               std::string(in_time ? "" : " (over time budget)"));
  CHECK(ok);
  CHECK(in_time);
}

TEST_CASE("criterion 2: noninteracting limit is exact") {
  Stopwatch clock;
  TrapSpec spec = TrapSpec::sodium(100.0, 0.0);
  bool roots_ok = true;
  for (int n = 0; n <= 5; ++n)
    roots_ok = roots_ok && std::abs(trap_root(spec, n) - (2.0 * n + 1.5)) < 1e-10;

  // pointwise match of the analytic oscillator form at the peak
  const RadialGrid grid = default_trap_grid(spec, 2);
  bool wave_ok = true;
  for (int n = 0; n <= 2; ++n) {
    const RadialWave got = trap_wavefunction(2.0 * n + 1.5, spec, grid);
    RadialWave want;
    want.grid = grid;
    want.u.resize(grid.size());
    const double a = spec.trap_length();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double z = (grid.r[i] / a) * (grid.r[i] / a);
      double l0 = 1.0, l1 = 1.5 - z, l = (n == 0) ? l0 : l1;
      for (int k = 2; k <= n; ++k) {
        const double l2 = ((2.0 * k - 0.5 - z) * l1 - (k - 0.5) * l0) / k;
        l0 = l1;
        l1 = l2;
        l = l2;
      }
      want.u[i] = grid.r[i] * std::exp(-0.5 * z) * l * ((n % 2) ? -1.0 : 1.0);
    }
    want = normalize(std::move(want));
    std::size_t peak = 0;
    for (std::size_t i = 0; i < want.u.size(); ++i)
      if (std::abs(want.u[i]) > std::abs(want.u[peak])) peak = i;
    wave_ok = wave_ok && std::abs(got.u[peak] / want.u[peak] - 1.0) < 1e-6;
  }
  const bool in_time = clock.seconds() < 1.0;
  report(2, roots_ok && wave_ok && in_time,
         "x_n = 2n + 3/2 to 1e-10 and oscillator waves to 1e-6 at the peak");
  CHECK(roots_ok);
  CHECK(wave_ok);
  CHECK(in_time);
}

TEST_CASE("criterion 3: perturbative energies consistent with the exact roots") {
  TrapSpec spec = TrapSpec::sodium_default(100.0);
  bool close_ok = true;
  for (int n = 0; n <= 2; ++n) {
    const double exact = trap_root(spec, n) * spec.omega;
    const double approx = trap_energy_perturbative(n, spec);
    close_ok = close_ok && std::abs(exact - approx) <= 0.01 * spec.omega;
  }
  // quadratic scaling, measured where the cubic term is subleading
  bool scaling_ok = true;
  for (int n = 0; n <= 2; ++n) {
    TrapSpec s1 = spec, s2 = spec;
    s1.a_sc = 0.01 * spec.trap_length();
    s2.a_sc = 0.005 * spec.trap_length();
    const double r1 = std::abs(trap_root(s1, n) * s1.omega - trap_energy_perturbative(n, s1));
    const double r2 = std::abs(trap_root(s2, n) * s2.omega - trap_energy_perturbative(n, s2));
    scaling_ok = scaling_ok && (r2 * 3.5 <= r1);
  }
  report(3, close_ok && scaling_ok,
         "|exact - first order| <= 0.01 hbar omega at xi = 0.042; residual scales as xi^2");
  CHECK(close_ok);
  CHECK(scaling_ok);
}

TEST_CASE("criterion 4: eigensolver oracle on the harmonic potential") {
  Stopwatch clock;
  const double m = 0.5 * amu_to_au(22.98977);
  const double omega = trap_khz_to_omega_au(100.0);
  RadialProblem prob;
  prob.potential = [m, omega](double r) { return 0.5 * m * omega * omega * r * r; };
  prob.mu = m;
  prob.inner = {InnerBoundaryKind::HardWall, 0.0, 0.0};
  prob.r_out = 14.0 / std::sqrt(m * omega);
  const SolverGrid grid = make_solver_grid(prob, false, 8001);
  bool ok = true;
  for (int n = 0; n <= 5; ++n) {
    const double e = solve_level(prob, grid, n, 0.1 * omega, 16.0 * omega, 1e-11);
    ok = ok && std::abs(e / omega - (2.0 * n + 1.5)) < 1e-8 * (2.0 * n + 1.5);
  }
  const bool in_time = clock.seconds() < 5.0;
  report(4, ok && in_time, "(2n+3/2) hbar omega to 1e-8 relative for n = 0..5");
  CHECK(ok);
  CHECK(in_time);
}

TEST_CASE("criterion 5: near-threshold ladder against the reference table") {
  Stopwatch clock;

  // (a) constancy of binding * r_t^3 over rows 33..37 as printed. The row
  // (5.7 kHz, 1000 nm) carries a turning point rounded to two figures; the
  // unrounded value (c3/eps)^(1/3) would be ~1031 nm. As printed, the
  // five-row spread is ~3.6%, so this subclause fails on the source data
  // itself; the four fully-significant rows agree to 0.11%.
  std::vector<std::pair<double, double>> rows5(kTable2.begin(), kTable2.begin() + 5);
  const auto [c3_5, resid5] = calibrate_c3(rows5);
  const bool constancy_ok = resid5 < 0.01;
  report(5, constancy_ok,
         "(a) rows 33..37 constancy " + std::to_string(resid5 * 100.0) + "% < 1%");
  CHECK_MESSAGE(constancy_ok,
                "rows 33..37 of the reference table miss 1% constancy as printed (v=37 "
                "turning point rounded to 1000 nm); rows 33..36 give 0.11%");

  // (b,c,d) with c3 fixed at the reference value derived from the
  // fully-significant rows (the same 6.24e9 kHz nm^3 used everywhere else)
  const RunConfig cfg = config_from("");
  const auto levels = solve_labeled_levels(cfg, 33, 37);
  const double want[5] = {1460.0, 550.0, 170.0, 39.5, 5.7};
  bool energies_ok = levels.size() == 5;
  for (std::size_t i = 0; i < levels.size() && energies_ok; ++i)
    energies_ok = std::abs(au_to_khz(levels[i].binding_energy) / want[i] - 1.0) < 0.10;
  report(5, energies_ok, "(b) v = 34..37 energies within 10% after single-anchor calibration");
  CHECK(energies_ok);

  bool ratios_ok = true;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double got = levels[i].r_max / levels[i].r_t;
    const double want_ratio =
        (i == 0 ? 139.3 / 162.3
                : i == 1 ? 190.2 / 224.8
                         : i == 2 ? 275.4 / 332.3 : i == 3 ? 431.5 / 540.3 : 794.0 / 1000.0);
    ratios_ok = ratios_ok && std::abs(got / want_ratio - 1.0) < 0.10;
  }
  report(5, ratios_ok, "(c) r_max/r_t ratios within 10%");
  CHECK(ratios_ok);

  std::vector<std::pair<int, double>> fit_rows;
  for (const auto& lv : levels) fit_rows.push_back({lv.v_label, lv.binding_energy});
  const auto fit = leroy_bernstein_fit(fit_rows);
  const bool vd_ok = std::abs(fit.v_d - 39.7) <= 0.5;
  report(5, vd_ok, "(d) threshold quantum number v_D = " + std::to_string(fit.v_d) +
                       " within 39.7 +- 0.5");
  CHECK(vd_ok);

  const bool in_time = clock.seconds() < 30.0;
  report(5, in_time, "(e) runtime under 30 s");
  CHECK(in_time);
  report(5, constancy_ok && energies_ok && ratios_ok && vd_ok && in_time, "overall");
}

TEST_CASE("criterion 6: Franck-Condon pattern at 100 kHz") {
  Stopwatch clock;
  const RunConfig cfg = config_from("trap.omega_khz = 100\n");
  CmdOptions opts;
  opts.out_dir = out_dir("c6");
  opts.v_min = 33;
  opts.v_max = 36;
  opts.nt_max = 2;
  const ResultTable t = cmd_fc(cfg, opts)[0];
  REQUIRE(t.rows.size() == 4);

  // reference row maxima: 33 -> nt0, 34 -> nt1, 35 -> nt1, 36 -> nt2. The
  // computed matrix disagrees on rows 33 and 35: its global maximum lands on
  // (35, nt2), the cell with the closest turning points -- the resonance rule
  // stated alongside the same reference data. Asserted as specified; the
  // mismatch is documented, not masked.
  const int want_max[4] = {0, 1, 1, 2};
  bool pattern_ok = true;
  for (int vi = 0; vi < 4; ++vi) {
    int got = 0;
    for (int nt = 1; nt <= 2; ++nt)
      if (t.rows[vi][2 + nt] > t.rows[vi][2 + got]) got = nt;
    pattern_ok = pattern_ok && (got == want_max[vi]);
  }
  report(6, pattern_ok, "(a) row-wise maxima match the reference cells");
  CHECK_MESSAGE(pattern_ok, "computed maxima follow the turning-point resonance; "
                            "reference rows 33/35 disagree with that rule");

  const double eta2_330 = t.rows[0][2];
  const bool value_ok = std::abs(eta2_330 / 0.221 - 1.0) <= 0.40;
  report(6, value_ok, "(b) |eta(33,0)|^2 = " + std::to_string(eta2_330) +
                          " within 40% of 0.221");
  CHECK(value_ok);

  // turning-point resonance: the maximizing cell has the closest pair of
  // turning points within its row and column
  const auto levels = solve_labeled_levels(cfg, 33, 36);
  const TrapSpec spec = cfg.trap_spec(100.0);
  double rt_v[4], rt_n[3];
  for (int vi = 0; vi < 4; ++vi) rt_v[vi] = levels[vi].r_t;
  for (int nt = 0; nt <= 2; ++nt)
    rt_n[nt] = trap_turning_point(trap_root(spec, nt) * spec.omega, spec);
  int best_v = 0, best_n = 0;
  for (int vi = 0; vi < 4; ++vi)
    for (int nt = 0; nt <= 2; ++nt)
      if (t.rows[vi][2 + nt] > t.rows[best_v][2 + best_n]) {
        best_v = vi;
        best_n = nt;
      }
  const double d_best = std::abs(rt_v[best_v] - rt_n[best_n]);
  bool resonance_ok = true;
  for (int vi = 0; vi < 4; ++vi)
    if (vi != best_v) resonance_ok = resonance_ok && std::abs(rt_v[vi] - rt_n[best_n]) > d_best;
  for (int nt = 0; nt <= 2; ++nt)
    if (nt != best_n) resonance_ok = resonance_ok && std::abs(rt_v[best_v] - rt_n[nt]) > d_best;
  report(6, resonance_ok, "(c) the maximizing pair has the closest turning points");
  CHECK(resonance_ok);

  const bool in_time = clock.seconds() < 60.0;
  report(6, in_time, "(d) runtime under 60 s");
  CHECK(in_time);
  report(6, pattern_ok && value_ok && resonance_ok && in_time, "overall");
}

TEST_CASE("criterion 7: scattering-length scans") {
  const RunConfig cfg = config_from("trap.omega_khz = 10\n");
  CmdOptions opts;
  opts.out_dir = out_dir("c7");
  opts.v_min = 35;
  opts.nt_max = 0;
  opts.a_min_nm = -6.0;
  opts.a_max_nm = 6.0;
  opts.a_steps = 61;
  const ResultTable t = cmd_scan(cfg, opts)[0];
  REQUIRE(t.rows.size() == 61);

  bool monotone = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    monotone = monotone && (t.rows[i][2] > t.rows[i - 1][2]);
  report(7, monotone, "(a) trap ground energy rises monotonically through a_sc = 0");
  CHECK(monotone);

  const TrapSpec tmpl = cfg.trap_spec(10.0);
  const double da = nm_to_au(0.05);
  TrapSpec p = tmpl, q = tmpl;
  p.a_sc = da;
  q.a_sc = -da;
  const double slope = (trap_root(p, 0) - trap_root(q, 0)) * tmpl.omega / (2.0 * da);
  const double slope_want = std::sqrt(2.0 / pi) * tmpl.omega / tmpl.trap_length();
  const bool slope_ok = std::abs(slope / slope_want - 1.0) < 0.05;
  report(7, slope_ok, "(b) origin slope sqrt(2/pi) hbar omega / a_t within 5%");
  CHECK(slope_ok);

  bool smooth = true;
  double hmin = 1e300, hmax = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double h = std::abs(t.rows[i][3]);
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
    if (i >= 1 && i + 1 < t.rows.size()) {
      const double d2 = t.rows[i + 1][3] - 2.0 * t.rows[i][3] + t.rows[i - 1][3];
      smooth = smooth && std::abs(d2) < 0.01 * std::abs(t.rows[i][3]);
    }
  }
  report(7, smooth, "(c) eta(a_sc) is smooth across the scan");
  CHECK(smooth);

  // First-order perturbation theory bounds the relative change of eta at
  // O(xi) ~ 2% over this window, so a 2x variation cannot occur in the
  // energy-independent contact model; asserted as specified and documented.
  const bool twofold = hmax >= 2.0 * hmin;
  report(7, twofold, "(d) eta varies by >= 2x over [-6, 6] nm (measured " +
                         std::to_string(hmax / hmin) + "x)");
  CHECK_MESSAGE(twofold, "eta(v=35, nt=0) at 10 kHz varies by only ~1% over xi in [-0.02, "
                         "0.02]; a 2x swing contradicts first-order perturbation theory");
  report(7, monotone && slope_ok && smooth && twofold, "overall");
}

TEST_CASE("criterion 8: linewidth trends") {
  const RunConfig cfg = config_from("trap.omega_khz = 100\n");
  PotentialModel model;
  const auto levels = solve_labeled_levels(cfg, 33, 39, &model);
  const TrapSpec spec = cfg.trap_spec(100.0);
  const auto traps = trap_levels(spec, 2);
  LaserSpec laser = cfg.laser_spec();
  const double a_sc = cfg.a_sc();

  // (a) bound-bound < free-bound for every v >= 35. The (35, nt=2) pair is
  // the resonant cell of the computed matrix, where the bound-bound width
  // exceeds the thermal free-bound one; asserted as specified.
  bool bb_lt_fb = true;
  std::string worst;
  for (const auto& lv : levels) {
    if (lv.v_label < 35) continue;
    for (const auto& tl : traps) {
      const ThermalEnsemble ens = maxwell_nodes(tl.energy, cfg.maxwell_nodes_n);
      const double bb = spont_width_bound(lv, tl, laser);
      const double fb = spont_width_free(lv, ens, a_sc, cfg.mu(), laser);
      if (!(bb < fb))
        worst += " (v=" + std::to_string(lv.v_label) + ",nt=" + std::to_string(tl.n_t) + ")";
      bb_lt_fb = bb_lt_fb && (bb < fb);
    }
  }
  report(8, bb_lt_fb, "(a) bound-bound < free-bound for all v >= 35" +
                          (worst.empty() ? "" : " -- fails at" + worst));
  CHECK_MESSAGE(bb_lt_fb, "the resonant (35,2) cell has the largest |eta|^2 of the whole "
                          "matrix, so its bound-bound width tops the thermal free-bound one");

  // (b) free-bound widths at T = E_0/k_B: monotone decrease and a >1e3 ratio
  const ThermalEnsemble ens0 = maxwell_nodes(traps[0].energy, cfg.maxwell_nodes_n);
  std::vector<double> fb0;
  for (const auto& lv : levels)
    fb0.push_back(spont_width_free(lv, ens0, a_sc, cfg.mu(), laser));
  bool monotone = true;
  for (std::size_t i = 1; i < fb0.size(); ++i) monotone = monotone && (fb0[i] < fb0[i - 1]);
  const double ratio = fb0.front() / fb0.back();
  report(8, monotone, "(b1) free-bound widths decrease monotonically in v");
  CHECK_MESSAGE(monotone, "the thermal average rises from v=33 to v=36 before falling: "
                          "longer states couple better to the ~150 kHz thermal window");
  const bool ratio_ok = ratio > 1e3;
  report(8, ratio_ok, "(b2) gamma(33)/gamma(39) = " + std::to_string(ratio) + " > 1e3");
  CHECK(ratio_ok);

  // (c) Wigner threshold slope of |eta(eps)|^2
  const double e1 = hz_to_au(10.0), e2 = hz_to_au(0.1);
  const double f1 = fc_free_bound(levels[0].wave, e1, a_sc, cfg.mu(), laser);
  const double f2 = fc_free_bound(levels[0].wave, e2, a_sc, cfg.mu(), laser);
  const double slope = std::log(f1 * f1 / (f2 * f2)) / std::log(e1 / e2);
  const bool wigner_ok = std::abs(slope - 0.5) <= 0.05;
  report(8, wigner_ok, "(c) threshold slope " + std::to_string(slope) + " = 0.5 +- 0.05");
  CHECK(wigner_ok);
  report(8, bb_lt_fb && monotone && ratio_ok && wigner_ok, "overall");
}

TEST_CASE("criterion 9: property suites") {
  Stopwatch clock;

  // eigenstate orthonormality below 1e-6 (trap states on a deep shared grid)
  TrapSpec spec = TrapSpec::sodium_default(100.0);
  const RadialGrid grid = make_grid(1e-4 * spec.trap_length(), 13.0 * spec.trap_length(),
                                    32769, GridKind::Log);
  const auto tl = trap_levels(spec, 2, grid);
  bool ortho_ok = true;
  for (int a = 0; a <= 2; ++a)
    for (int b = a; b <= 2; ++b) {
      std::vector<double> prod(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i)
        prod[i] = tl[a].wave.u[i] * tl[b].wave.u[i];
      ortho_ok = ortho_ok &&
                 std::abs(integrate(grid, prod) - (a == b ? 1.0 : 0.0)) < 1e-6;
    }
  // molecular levels likewise
  const RunConfig cfg = config_from("");
  const auto levels = solve_labeled_levels(cfg, 33, 35);
  for (std::size_t a = 0; a < levels.size(); ++a)
    for (std::size_t b = a + 1; b < levels.size(); ++b) {
      std::vector<double> prod(levels[a].wave.u.size());
      for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = levels[a].wave.u[i] * levels[b].wave.u[i];
      ortho_ok = ortho_ok && std::abs(integrate(levels[a].wave.grid, prod)) < 1e-6;
    }
  report(9, ortho_ok, "(a) eigenstate orthonormality below 1e-6");
  CHECK(ortho_ok);

  // grid-doubling stability: energies < 1e-8, fc < 1e-5
  PotentialModel model = calibrated_sodium(cfg);
  GridPolicy dense = cfg.grid_policy();
  dense.points_per_wavelength *= 2.0;
  const auto l1 = solve_levels(model, {khz_to_au(100.0), khz_to_au(1500.0)});
  const auto l2 = solve_levels(model, {khz_to_au(100.0), khz_to_au(1500.0)}, dense);
  bool stable_e = l1.size() == l2.size();
  for (std::size_t i = 0; i < l1.size() && stable_e; ++i)
    stable_e = std::abs(l2[i].binding_energy / l1[i].binding_energy - 1.0) < 1e-8;
  report(9, stable_e, "(b) energies move < 1e-8 on grid doubling");
  CHECK(stable_e);

  LaserSpec laser = cfg.laser_spec();
  const RadialGrid tg1 = make_grid(0.02 * spec.trap_length(), 12.0 * spec.trap_length(), 8193,
                                   GridKind::Log);
  const RadialGrid tg2 = make_grid(0.02 * spec.trap_length(), 12.0 * spec.trap_length(), 16385,
                                   GridKind::Log);
  const double x0 = trap_root(spec, 0);
  const double fc1 = fc_bound_bound(l1[0].wave, trap_wavefunction(x0, spec, tg1), laser);
  const double fc2 = fc_bound_bound(l2[0].wave, trap_wavefunction(x0, spec, tg2), laser);
  const bool stable_fc = std::abs(fc1 - fc2) < 1e-5;
  report(9, stable_fc, "(c) fc values move < 1e-5 on grid doubling");
  CHECK(stable_fc);

  // special-function identities
  bool ident_ok = true;
  for (double x = -9.963; x < 30.0; x += 1.493) {
    if (std::abs(x - std::round(x)) < 0.05) continue;
    const SignedLog a = ln_gamma_signed(x + 1.0);
    const SignedLog b = ln_gamma_signed(x);
    ident_ok = ident_ok &&
               std::abs(a.sign * b.sign * std::exp(a.log_magnitude - b.log_magnitude) / x - 1.0) <
                   1e-12;
  }
  for (double x = -4.971; x < 0.0; x += 0.953) {
    if (std::abs(x - std::round(x)) < 0.05) continue;
    const double lhs = ln_gamma_signed(x).value() * ln_gamma_signed(1.0 - x).value();
    ident_ok = ident_ok && std::abs(lhs * std::sin(pi * x) / pi - 1.0) < 1e-12;
  }
  for (int n = 0; n <= 5; ++n) {
    double poch = 1.0;
    for (int k = 0; k < n; ++k) poch *= 1.5 + k;
    const double want = ((n % 2) ? -1.0 : 1.0) * poch * kummer_m(-n, 1.5, 9.0);
    ident_ok = ident_ok && std::abs(tricomi_u(-n, 1.5, 9.0) / want - 1.0) < 1e-12;
  }
  report(9, ident_ok, "(d) Gamma recurrence/reflection and terminating-U identities");
  CHECK(ident_ok);

  // quadrature convergence order
  auto quad_err = [](std::size_t n) {
    const RadialGrid g = make_grid(1e-14, pi, n, GridKind::Uniform);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::sin(g.r[i]);
    return std::abs(integrate(g, f) - 2.0);
  };
  const bool quad_ok = quad_err(201) * 3.9 <= quad_err(101);
  report(9, quad_ok, "(e) quadrature error falls >= 3.9x on halving the step");
  CHECK(quad_ok);

  // byte-identical reruns through the command layer
  CmdOptions opts;
  opts.nt_max = 2;
  opts.out_dir = out_dir("c9a");
  cmd_trap_levels(cfg, opts);
  std::ifstream f1(std::filesystem::path(opts.out_dir) / "trap_levels.csv", std::ios::binary);
  std::ostringstream s1;
  s1 << f1.rdbuf();
  opts.out_dir = out_dir("c9b");
  cmd_trap_levels(cfg, opts);
  std::ifstream f2(std::filesystem::path(opts.out_dir) / "trap_levels.csv", std::ios::binary);
  std::ostringstream s2;
  s2 << f2.rdbuf();
  const bool bytes_ok = !s1.str().empty() && s1.str() == s2.str();
  report(9, bytes_ok, "(f) byte-identical CLI reruns");
  CHECK(bytes_ok);

  const bool in_time = clock.seconds() < 300.0;
  report(9, in_time, "(g) property suite under five minutes");
  CHECK(in_time);
  report(9, ortho_ok && stable_e && stable_fc && ident_ok && quad_ok && bytes_ok && in_time,
         "overall");
}
