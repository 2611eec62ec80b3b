#include "pa/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pa/coupling.hpp"
#include "pa/parallel.hpp"
#include "pa/scattering.hpp"
#include "pa/units.hpp"
#include "pa/version.hpp"

namespace pa {

namespace {

std::vector<std::string> provenance_lines(const RunConfig& cfg) {
  std::vector<std::string> out;
  out.push_back(std::string("pa-spectra ") + std::string(kVersion));
  out.push_back("config-hash: " + cfg.config_hash());
  std::istringstream echo(cfg.echo());
  std::string line;
  while (std::getline(echo, line)) out.push_back("cfg: " + line);
  return out;
}

void write_table_file(const ResultTable& t, const std::string& out_dir,
                      const std::string& filename) {
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / filename;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  t.write_csv(out);
}

LaserSpec laser_for(const RunConfig& cfg, const CmdOptions& opts) {
  LaserSpec l = cfg.laser_spec();
  if (opts.factor_override) l.factor = *opts.factor_override;
  return l;
}

RadialGrid trap_grid_for(const RunConfig& cfg, const TrapSpec& spec, int n_max) {
  const double a_t = spec.trap_length();
  const double x_hi = 2.0 * n_max + 2.5;
  const double span = std::max(12.0, 9.0 + std::sqrt(2.0 * x_hi));
  return make_grid(cfg.grid_trap_rmin_at * a_t, span * a_t,
                   static_cast<std::size_t>(cfg.grid_trap_points), GridKind::Log);
}

double thermal_kt(const RunConfig& cfg, const TrapLevel& level) {
  return cfg.pairing == ThermalPairing::TrapLevel ? level.energy
                                                  : units::uk_to_kt_au(*cfg.fixed_t_uk);
}

}  // namespace

std::vector<VibLevel> solve_labeled_levels(const RunConfig& cfg, int v_min, int v_max,
                                           PotentialModel* calibrated_out) {
  if (v_min > v_max) throw std::invalid_argument("v range: v_min must not exceed v_max");
  const GridPolicy policy = cfg.grid_policy();
  PotentialModel model = cfg.potential_model();
  if (cfg.wall_nm) {
    // fixed wall: labels hang off the configured anchor identity
    const int n_total = count_bound_levels(model, policy);
    model.anchor_nodes = n_total - 1 - (cfg.top_label - cfg.calib_v);
    model.anchor_label = cfg.calib_v;
    if (model.anchor_nodes < 0)
      throw std::runtime_error("fixed wall supports too few levels for the requested labels");
  } else {
    CalibrationOptions copts;
    copts.wall_min = units::nm_to_au(cfg.calib_wall_min_nm);
    copts.wall_max = units::nm_to_au(cfg.calib_wall_max_nm);
    copts.top_label = cfg.top_label;
    model = calibrate_boundary(model, {cfg.calib_v, units::khz_to_au(cfg.calib_binding_khz)},
                               policy, copts);
  }
  if (calibrated_out) *calibrated_out = model;
  if (v_max > cfg.top_label)
    throw std::invalid_argument("v range: v_max exceeds levels.top_label");

  const double eps_anchor = units::khz_to_au(cfg.calib_binding_khz);
  std::vector<VibLevel> all;  // everything solved so far, for the extrapolation fit
  auto have = [&](int v) {
    return std::any_of(all.begin(), all.end(),
                       [&](const VibLevel& lv) { return lv.v_label == v; });
  };

  // first pass around the anchor, then extend by near-threshold extrapolation
  double lo = eps_anchor * 1e-3, hi = eps_anchor * 1.02;
  for (int pass = 0; pass < 8; ++pass) {
    for (auto& lv : solve_levels(model, {lo, hi}, policy))
      if (!have(lv.v_label)) all.push_back(std::move(lv));
    std::sort(all.begin(), all.end(),
              [](const VibLevel& a, const VibLevel& b) { return a.v_label < b.v_label; });

    int missing = -1;
    for (int v = v_min; v <= v_max; ++v)
      if (!have(v)) {
        missing = v;
        break;
      }
    if (missing < 0) break;
    if (all.size() < 3)
      throw std::runtime_error("level search: too few levels near the anchor to extrapolate");

    std::vector<std::pair<int, double>> fit_rows;
    for (const auto& lv : all) fit_rows.push_back({lv.v_label, lv.binding_energy});
    const auto fit = leroy_bernstein_fit(fit_rows);
    const double eps_pred = std::pow(fit.slope * (fit.v_d - missing), 6.0);
    if (!(fit.v_d > missing) || !(eps_pred > 0.0))
      throw std::runtime_error("level search: label " + std::to_string(missing) +
                               " sits above the dissociation threshold");
    if (missing > all.back().v_label) {
      lo = 0.2 * eps_pred;
      hi = all.back().binding_energy * 0.999;
    } else {
      lo = all.front().binding_energy * 1.001;
      hi = 5.0 * eps_pred;
    }
  }
  std::vector<VibLevel> out;
  for (auto& lv : all)
    if (lv.v_label >= v_min && lv.v_label <= v_max) out.push_back(std::move(lv));
  if (out.size() != static_cast<std::size_t>(v_max - v_min + 1))
    throw std::runtime_error("level search: could not locate every level in the requested range");
  return out;
}

std::vector<ResultTable> cmd_trap_levels(const RunConfig& cfg, const CmdOptions& opts) {
  ResultTable t;
  t.name = "trap_levels";
  t.provenance = provenance_lines(cfg);
  t.columns = {"omega_over_2pi_kHz", "n_t",
               "eps_over_hbar_omega_dimensionless", "nu_dimensionless",
               "eps_over_hbar_Mrad_per_s", "eps_over_h_MHz", "r_t_nm"};
  for (double okhz : cfg.omega_khz) {
    const TrapSpec spec = cfg.trap_spec(okhz);
    const auto levels = trap_levels(spec, opts.nt_max, trap_grid_for(cfg, spec, opts.nt_max));
    for (const auto& lv : levels)
      t.add_row({okhz, static_cast<double>(lv.n_t), lv.x, lv.nu,
                 units::au_to_mrad_s(lv.energy), units::au_to_mhz(lv.energy),
                 units::au_to_nm(lv.turning_point)});
  }
  write_table_file(t, opts.out_dir, "trap_levels.csv");
  return {t};
}

std::vector<ResultTable> cmd_molecular_levels(const RunConfig& cfg, const CmdOptions& opts) {
  const auto levels = solve_labeled_levels(cfg, opts.v_min, opts.v_max);
  ResultTable t;
  t.name = "molecular_levels";
  t.provenance = provenance_lines(cfg);
  t.columns = {"v", "binding_over_h_kHz", "r_t_nm", "r_max_nm", "nodes"};
  for (const auto& lv : levels)
    t.add_row({static_cast<double>(lv.v_label), units::au_to_khz(lv.binding_energy),
               units::au_to_nm(lv.r_t), units::au_to_nm(lv.r_max),
               static_cast<double>(lv.nodes)});
  write_table_file(t, opts.out_dir, "molecular_levels.csv");
  return {t};
}

std::vector<ResultTable> cmd_fc(const RunConfig& cfg, const CmdOptions& opts) {
  const LaserSpec laser = laser_for(cfg, opts);
  const auto levels = solve_labeled_levels(cfg, opts.v_min, opts.v_max);

  ResultTable t;
  t.name = "fc_matrix";
  t.provenance = provenance_lines(cfg);
  t.columns = {"omega_over_2pi_kHz", "v"};
  for (int nt = 0; nt <= opts.nt_max; ++nt)
    t.columns.push_back("eta2_nt" + std::to_string(nt) + "_dimensionless");

  struct Cell {
    double okhz;
    const VibLevel* v;
  };
  std::vector<Cell> cells;
  for (double okhz : cfg.omega_khz)
    for (const auto& lv : levels) cells.push_back({okhz, &lv});

  std::vector<std::vector<double>> rows(cells.size());
  // trap levels per frequency are shared across rows
  std::vector<std::vector<TrapLevel>> traps(cfg.omega_khz.size());
  for (std::size_t i = 0; i < cfg.omega_khz.size(); ++i) {
    const TrapSpec spec = cfg.trap_spec(cfg.omega_khz[i]);
    traps[i] = trap_levels(spec, opts.nt_max, trap_grid_for(cfg, spec, opts.nt_max));
  }
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    const std::size_t wi = i / levels.size();
    std::vector<double> row = {cell.okhz, static_cast<double>(cell.v->v_label)};
    for (int nt = 0; nt <= opts.nt_max; ++nt) {
      const double eta = fc_bound_bound(cell.v->wave, traps[wi][nt].wave, laser);
      row.push_back(eta * eta);
    }
    rows[i] = std::move(row);
  });
  for (auto& row : rows) t.add_row(std::move(row));
  write_table_file(t, opts.out_dir, "fc_matrix.csv");
  return {t};
}

std::vector<ResultTable> cmd_linewidths(const RunConfig& cfg, const CmdOptions& opts) {
  const LaserSpec laser = laser_for(cfg, opts);
  PotentialModel model;
  const auto levels = solve_labeled_levels(cfg, opts.v_min, opts.v_max, &model);
  const double gamma_bb = units::khz_to_au(cfg.gamma_bb_khz) * 2.0 * units::pi;
  const double a_sc = cfg.a_sc();

  ResultTable t;
  t.name = "linewidths";
  t.provenance = provenance_lines(cfg);
  t.columns = {"omega_over_2pi_kHz", "v",      "n_t",
               "temperature_uK",     "gamma_bound_bound_over_2pi_kHz",
               "gamma_free_bound_over_2pi_kHz"};
  for (double okhz : cfg.omega_khz) {
    const TrapSpec spec = cfg.trap_spec(okhz);
    const auto traps = trap_levels(spec, opts.nt_max, trap_grid_for(cfg, spec, opts.nt_max));
    for (const auto& lv : levels) {
      for (const auto& tl : traps) {
        const double kt = thermal_kt(cfg, tl);
        const ThermalEnsemble ens = maxwell_nodes(kt, cfg.maxwell_nodes_n);
        const double bb = spont_width_bound(lv, tl, laser, gamma_bb);
        const double fb = spont_width_free(lv, ens, a_sc, cfg.mu(), laser, gamma_bb);
        t.add_row({okhz, static_cast<double>(lv.v_label), static_cast<double>(tl.n_t),
                   units::kt_au_to_uk(kt), units::au_to_rad_s(bb) / (2e3 * units::pi),
                   units::au_to_rad_s(fb) / (2e3 * units::pi)});
      }
    }
  }
  write_table_file(t, opts.out_dir, "linewidths.csv");
  return {t};
}

std::vector<ResultTable> cmd_scan(const RunConfig& cfg, const CmdOptions& opts) {
  const LaserSpec laser = laser_for(cfg, opts);
  const int v_sel = opts.v_min;
  const int nt_sel = opts.nt_max;
  const auto levels = solve_labeled_levels(cfg, v_sel, v_sel);
  const TrapSpec tmpl = cfg.trap_spec(cfg.omega_khz.front());

  const auto rows = scan_scattering_length(levels.front(), nt_sel, tmpl,
                                           units::nm_to_au(opts.a_min_nm),
                                           units::nm_to_au(opts.a_max_nm), opts.a_steps, laser);

  ResultTable t;
  t.name = "scan";
  t.provenance = provenance_lines(cfg);
  t.columns = {"a_sc_nm", "xi_s", "eps_nt_over_hbar_Mrad_per_s",
               "eta_dimensionless", "eta2_dimensionless", "regime_ok"};
  std::vector<std::pair<double, double>> eta_curve, eps_curve;
  for (const auto& r : rows) {
    t.add_row({units::au_to_nm(r.a_sc), r.xi, units::au_to_mrad_s(r.level_energy), r.eta,
               r.eta * r.eta, r.regime_ok ? 1.0 : 0.0});
    if (r.regime_ok) {
      eta_curve.push_back({units::au_to_nm(r.a_sc), r.eta});
      eps_curve.push_back({units::au_to_nm(r.a_sc), units::au_to_mrad_s(r.level_energy)});
    }
  }
  write_table_file(t, opts.out_dir, "scan.csv");

  std::filesystem::create_directories(opts.out_dir);
  {
    std::ofstream out(std::filesystem::path(opts.out_dir) / "scan_eta.dat", std::ios::binary);
    write_plot_data(out, "a_sc_nm", "eta_dimensionless", eta_curve, t.provenance);
  }
  {
    std::ofstream out(std::filesystem::path(opts.out_dir) / "scan_eps.dat", std::ios::binary);
    write_plot_data(out, "a_sc_nm", "eps_nt_over_hbar_Mrad_per_s", eps_curve, t.provenance);
  }
  return {t};
}

}  // namespace pa
