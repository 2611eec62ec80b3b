#include "pa/longrange.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pa/units.hpp"

namespace pa {

namespace {

constexpr double kRenormThreshold = 1e100;
constexpr double kRenormScale = 1e-100;

double interp_linear(const std::vector<std::pair<double, double>>& t, double r) {
  auto it = std::lower_bound(t.begin(), t.end(), r,
                             [](const auto& p, double x) { return p.first < x; });
  if (it == t.begin()) return t.front().second;
  if (it == t.end()) return t.back().second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double f = (r - x0) / (x1 - x0);
  return y0 + f * (y1 - y0);
}

}  // namespace

double PotentialModel::v(double r) const {
  if (!table.empty() && r <= table.back().first) return interp_linear(table, r);
  return -c3 / (r * r * r);
}

void validate_potential_model(const PotentialModel& model) {
  if (!(model.c3 > 0.0)) throw std::invalid_argument("PotentialModel: c3 must be > 0");
  if (!(model.mu > 0.0)) throw std::invalid_argument("PotentialModel: mu must be > 0");
  if (!(model.inner.r_in > 0.0))
    throw std::invalid_argument("PotentialModel: inner boundary radius must be > 0");
  if (!model.table.empty()) {
    for (std::size_t i = 1; i < model.table.size(); ++i)
      if (!(model.table[i].first > model.table[i - 1].first))
        throw std::invalid_argument("PotentialModel: table radii must increase strictly");
    if (model.inner.r_in < model.table.front().first)
      throw std::invalid_argument("PotentialModel: inner boundary below tabulated range");
    const double r_join = model.table.back().first;
    const double v_tab = model.table.back().second;
    const double v_asym = -model.c3 / (r_join * r_join * r_join);
    if (std::abs(v_tab - v_asym) > 0.01 * std::abs(v_asym))
      throw std::invalid_argument("PotentialModel: table does not join the asymptote (jump > 1%)");
  }
}

// ---------------------------------------------------------------------------
// Numerov machinery
// ---------------------------------------------------------------------------

SolverGrid make_solver_grid(const RadialProblem& prob, bool log_space, std::size_t n_points) {
  if (n_points < 16) throw std::invalid_argument("make_solver_grid: too few points");
  if (!(prob.r_out > prob.inner.r_in))
    throw std::invalid_argument("make_solver_grid: r_out must exceed r_in");
  if (log_space && !(prob.inner.r_in > 0.0))
    throw std::invalid_argument("make_solver_grid: log grid needs r_in > 0");

  SolverGrid g;
  g.log_space = log_space;
  g.r.resize(n_points);
  g.vpot.resize(n_points);
  const double last = static_cast<double>(n_points - 1);
  if (log_space) {
    const double x0 = std::log(prob.inner.r_in);
    g.h = (std::log(prob.r_out) - x0) / last;
    for (std::size_t i = 0; i < n_points; ++i) g.r[i] = std::exp(x0 + g.h * i);
    g.r.front() = prob.inner.r_in;
    g.r.back() = prob.r_out;
  } else {
    g.h = (prob.r_out - prob.inner.r_in) / last;
    for (std::size_t i = 0; i < n_points; ++i) g.r[i] = prob.inner.r_in + g.h * i;
    g.r.back() = prob.r_out;
  }
  for (std::size_t i = 0; i < n_points; ++i) g.vpot[i] = prob.potential(g.r[i]);
  return g;
}

namespace {

// Q_i entering phi'' = -Q phi: Q = 2 mu r^2 (E - V) - 1/4 in log space,
// Q = 2 mu (E - V) on a uniform grid.
std::vector<double> q_values(const RadialProblem& prob, const SolverGrid& g, double energy) {
  std::vector<double> q(g.r.size());
  for (std::size_t i = 0; i < g.r.size(); ++i) {
    const double de = energy - g.vpot[i];
    q[i] = g.log_space ? 2.0 * prob.mu * g.r[i] * g.r[i] * de - 0.25
                       : 2.0 * prob.mu * de;
  }
  return q;
}

void start_values(const RadialProblem& prob, const SolverGrid& g,
                  const std::vector<double>& q, double& phi0, double& phi1) {
  if (prob.inner.kind == InnerBoundaryKind::HardWall) {
    phi0 = 0.0;
    phi1 = 1.0;
    return;
  }
  // log-derivative u'/u = L at r_in; phi'/phi = r L - 1/2 in log space
  const double h = g.h;
  const double s = g.log_space ? g.r.front() * prob.inner.log_derivative - 0.5
                               : prob.inner.log_derivative;
  const double q0 = q[0];
  const double dq = (q[1] - q0) / h;
  phi0 = 1.0;
  phi1 = phi0 * (1.0 + s * h - 0.5 * q0 * h * h + (h * h * h / 6.0) * (-dq - q0 * s));
}

// Outward Numerov sweep to index i_stop (inclusive). Counts sign changes;
// fills phi[0..i_stop] when out != nullptr. Counting sweeps stop once the
// solution is demonstrably growing inside the forbidden zone: there phi'' and
// phi share a sign, so no further node can occur (and the far region would be
// numerically meaningless at very negative energies anyway).
int sweep_outward(const RadialProblem& prob, const SolverGrid& g,
                  const std::vector<double>& q, std::size_t i_stop,
                  std::vector<double>* out) {
  const double h2 = g.h * g.h;
  auto f = [&](std::size_t i) { return 1.0 + h2 / 12.0 * q[i]; };

  double p0, p1;
  start_values(prob, g, q, p0, p1);
  if (out) {
    out->assign(g.r.size(), 0.0);
    (*out)[0] = p0;
    if (i_stop >= 1) (*out)[1] = p1;
  }
  int nodes = 0;
  int forbidden_growth = 0;
  double prev_sign = (p1 > 0.0) ? 1.0 : (p1 < 0.0 ? -1.0 : 0.0);
  for (std::size_t i = 1; i < i_stop; ++i) {
    const double p2 = ((12.0 - 10.0 * f(i)) * p1 - f(i - 1) * p0) / f(i + 1);
    p0 = p1;
    p1 = p2;
    if (p1 != 0.0) {
      const double s = (p1 > 0.0) ? 1.0 : -1.0;
      if (prev_sign != 0.0 && s != prev_sign) ++nodes;
      prev_sign = s;
    }
    if (!out) {
      const bool growing_forbidden =
          q[i + 1] < -0.5 && std::abs(p1) > std::abs(p0) && p1 * p0 > 0.0;
      forbidden_growth = growing_forbidden ? forbidden_growth + 1 : 0;
      if (forbidden_growth >= 12) return nodes;
    }
    if (std::abs(p1) > kRenormThreshold) {
      p0 *= kRenormScale;
      p1 *= kRenormScale;
      if (out)
        for (std::size_t j = 0; j <= i + 1; ++j) (*out)[j] *= kRenormScale;
    }
    if (out) (*out)[i + 1] = p1;
  }
  return nodes;
}

// Inward Numerov sweep from the outer Dirichlet edge down to i_stop.
void sweep_inward(const SolverGrid& g, const std::vector<double>& q,
                  std::size_t i_stop, std::vector<double>& out) {
  const std::size_t n = g.r.size();
  const double h2 = g.h * g.h;
  auto f = [&](std::size_t i) { return 1.0 + h2 / 12.0 * q[i]; };

  out.assign(n, 0.0);
  const double kappa = std::sqrt(std::max(-q[n - 1], 1e-4));
  double p1 = 1e-150;                       // ~0 at the box edge
  double p0 = p1 * std::exp(kappa * g.h);   // grows inward in the forbidden zone
  out[n - 1] = p1;
  out[n - 2] = p0;
  for (std::size_t i = n - 2; i > i_stop; --i) {
    const double p2 = ((12.0 - 10.0 * f(i)) * p0 - f(i + 1) * p1) / f(i - 1);
    p1 = p0;
    p0 = p2;
    if (std::abs(p0) > kRenormThreshold) {
      p0 *= kRenormScale;
      p1 *= kRenormScale;
      for (std::size_t j = i - 1; j < n; ++j) out[j] *= kRenormScale;
    }
    out[i - 1] = p0;
  }
}

std::size_t classical_turning_index(const std::vector<double>& q) {
  for (std::size_t i = q.size(); i-- > 0;)
    if (q[i] > 0.0) return i;
  return 0;
}

// Matching index: around 0.8 of the outer turning radius, nudged toward
// where both branches have usable amplitude.
std::size_t matching_index(const SolverGrid& g, const std::vector<double>& q) {
  const std::size_t i_turn = classical_turning_index(q);
  if (i_turn < 8) return std::max<std::size_t>(4, g.r.size() / 3);
  const double r_m = 0.8 * g.r[i_turn];
  auto it = std::lower_bound(g.r.begin(), g.r.end(), r_m);
  std::size_t m = static_cast<std::size_t>(it - g.r.begin());
  m = std::clamp<std::size_t>(m, 4, g.r.size() - 5);
  return m;
}

// Log-derivative mismatch of the two branches at the matching index.
double matching_defect(const RadialProblem& prob, const SolverGrid& g,
                       const std::vector<double>& q) {
  std::size_t m = matching_index(g, q);
  std::vector<double> left, right;
  sweep_outward(prob, g, q, m + 1, &left);
  sweep_inward(g, q, m - 1, right);

  // avoid matching on a node of either branch
  for (int attempt = 0; attempt < 6; ++attempt) {
    double lmax = 0.0, rmax = 0.0;
    for (std::size_t i = m - 1; i <= m + 1; ++i) {
      lmax = std::max(lmax, std::abs(left[i]));
      rmax = std::max(rmax, std::abs(right[i]));
    }
    if (std::abs(left[m]) > 1e-3 * lmax && std::abs(right[m]) > 1e-3 * rmax) break;
    m = std::clamp<std::size_t>(m + 3, 4, g.r.size() - 5);
    sweep_outward(prob, g, q, m + 1, &left);
    sweep_inward(g, q, m - 1, right);
  }

  const double dl = (left[m + 1] - left[m - 1]) / (2.0 * g.h * left[m]);
  const double dr = (right[m + 1] - right[m - 1]) / (2.0 * g.h * right[m]);
  return dl - dr;
}

}  // namespace

int count_nodes_at_energy(const RadialProblem& prob, const SolverGrid& grid, double energy) {
  const std::vector<double> q = q_values(prob, grid, energy);
  return sweep_outward(prob, grid, q, grid.r.size() - 1, nullptr);
}

double solve_level(const RadialProblem& prob, const SolverGrid& grid, int k,
                   double e_lo, double e_hi, double rel_tol) {
  if (!(e_hi > e_lo)) throw std::invalid_argument("solve_level: bad bracket");
  int c_lo = count_nodes_at_energy(prob, grid, e_lo);
  int c_hi = count_nodes_at_energy(prob, grid, e_hi);
  if (c_lo > k || c_hi < k + 1) {
    std::ostringstream os;
    os << "solve_level: level " << k << " not inside bracket [" << e_lo << ", " << e_hi
       << "] (counts " << c_lo << ", " << c_hi << ")";
    throw std::runtime_error(os.str());
  }

  double a = e_lo, b = e_hi;
  auto width_ok = [&](double tol) { return (b - a) <= tol * std::max(std::abs(a), std::abs(b)); };

  // node-count bisection isolates the level
  for (int it = 0; it < 260 && !width_ok(1e-3); ++it) {
    const double mid = 0.5 * (a + b);
    if (count_nodes_at_energy(prob, grid, mid) <= k)
      a = mid;
    else
      b = mid;
  }

  // secant refinement on the matching defect
  double e1 = a + 0.25 * (b - a);
  double e2 = a + 0.75 * (b - a);
  double d1 = matching_defect(prob, grid, q_values(prob, grid, e1));
  double d2 = matching_defect(prob, grid, q_values(prob, grid, e2));
  bool refined = false;
  for (int it = 0; it < 40; ++it) {
    if (d2 == d1) break;
    const double e3 = e2 - d2 * (e2 - e1) / (d2 - d1);
    if (!std::isfinite(e3) || e3 <= a || e3 >= b) break;
    e1 = e2;
    d1 = d2;
    e2 = e3;
    d2 = matching_defect(prob, grid, q_values(prob, grid, e2));
    if (std::abs(e2 - e1) <= rel_tol * std::abs(e2)) {
      refined = true;
      break;
    }
  }
  if (refined) {
    const double pad = 4.0 * rel_tol * std::abs(e2);
    const double below = std::max(a, e2 - pad);
    const double above = std::min(b, e2 + pad);
    if (count_nodes_at_energy(prob, grid, below) <= k &&
        count_nodes_at_energy(prob, grid, above) >= k + 1)
      return e2;
  }

  // fallback: bisect the node count all the way down
  for (int it = 0; it < 400 && !width_ok(rel_tol); ++it) {
    const double mid = 0.5 * (a + b);
    if (count_nodes_at_energy(prob, grid, mid) <= k)
      a = mid;
    else
      b = mid;
  }
  if (!width_ok(rel_tol)) {
    std::ostringstream os;
    os << "solve_level: no convergence for level " << k << " in [" << a << ", " << b << "]";
    throw std::runtime_error(os.str());
  }
  return 0.5 * (a + b);
}

RadialWave eigen_wave(const RadialProblem& prob, const SolverGrid& grid, double energy) {
  const std::vector<double> q = q_values(prob, grid, energy);
  std::size_t m = matching_index(grid, q);
  std::vector<double> left, right;
  sweep_outward(prob, grid, q, m + 1, &left);
  sweep_inward(grid, q, m - 1, right);
  if (right[m] == 0.0 || left[m] == 0.0)
    throw std::runtime_error("eigen_wave: matching point fell on a node");
  const double scale = left[m] / right[m];
  std::vector<double> phi(grid.r.size());
  for (std::size_t i = 0; i <= m; ++i) phi[i] = left[i];
  for (std::size_t i = m + 1; i < grid.r.size(); ++i) phi[i] = right[i] * scale;

  // u = sqrt(R) phi in log space, u = phi on a uniform grid
  RadialWave w;
  const std::size_t skip = (grid.r.front() > 0.0) ? 0 : 1;  // drop an R = 0 point
  w.grid.kind = grid.log_space ? GridKind::Log : GridKind::Uniform;
  w.grid.r.assign(grid.r.begin() + skip, grid.r.end());
  w.u.resize(w.grid.r.size());
  for (std::size_t i = 0; i < w.u.size(); ++i) {
    const double r = w.grid.r[i];
    w.u[i] = grid.log_space ? std::sqrt(r) * phi[i + skip] : phi[i + skip];
  }

  // outermost lobe positive
  double umax = 0.0;
  for (double v : w.u) umax = std::max(umax, std::abs(v));
  for (std::size_t i = w.u.size(); i-- > 0;) {
    if (std::abs(w.u[i]) > 1e-3 * umax) {
      if (w.u[i] < 0.0)
        for (double& v : w.u) v = -v;
      break;
    }
  }
  return normalize(std::move(w));
}

// ---------------------------------------------------------------------------
// -c3/R^3 model operations
// ---------------------------------------------------------------------------

namespace {

double max_kr(const PotentialModel& model, double r_out) {
  double best = 0.0;
  const double x0 = std::log(model.inner.r_in);
  const double x1 = std::log(r_out);
  const int n = 2048;
  for (int i = 0; i <= n; ++i) {
    const double r = std::exp(x0 + (x1 - x0) * i / n);
    const double v = model.v(r);
    if (v < 0.0) best = std::max(best, r * std::sqrt(-2.0 * model.mu * v));
  }
  return best;
}

RadialProblem problem_for(const PotentialModel& model, double r_out) {
  RadialProblem prob;
  prob.potential = [model](double r) { return model.v(r); };
  prob.mu = model.mu;
  prob.inner = model.inner;
  prob.r_out = r_out;
  return prob;
}

SolverGrid grid_for_window(const PotentialModel& model, double eps_min, const GridPolicy& policy,
                           RadialProblem& prob_out, double ppw_override = 0.0) {
  const double r_t = outer_turning_point(model, eps_min);
  const double kappa = std::sqrt(2.0 * model.mu * eps_min);
  const double r_out = r_t + policy.tail_e_folds / kappa;
  prob_out = problem_for(model, r_out);

  const double ppw = (ppw_override > 0.0) ? ppw_override : policy.points_per_wavelength;
  const double kr = max_kr(model, r_out);
  const double h = std::min(2.0 * units::pi / (ppw * std::max(kr, 1.0)), policy.max_step_x);
  const double range = std::log(r_out / model.inner.r_in);
  std::size_t n = static_cast<std::size_t>(std::ceil(range / h)) + 1;
  if (n > policy.max_points)
    throw std::invalid_argument("grid policy: required point count exceeds max_points");
  if (n < 64) n = 64;
  return make_solver_grid(prob_out, true, n);
}

}  // namespace

double outer_turning_point(const PotentialModel& model, double eps_v) {
  if (!(eps_v > 0.0)) throw std::invalid_argument("outer_turning_point: eps_v must be > 0");
  const double r_pure = std::cbrt(model.c3 / eps_v);
  if (model.table.empty() || r_pure > model.table.back().first) return r_pure;
  // outermost root of V(R) = -eps inside the table
  for (std::size_t i = model.table.size(); i-- > 1;) {
    const double f1 = model.table[i].second + eps_v;
    const double f0 = model.table[i - 1].second + eps_v;
    if (f0 <= 0.0 && f1 >= 0.0) {
      const double t = f0 / (f0 - f1);
      return model.table[i - 1].first + t * (model.table[i].first - model.table[i - 1].first);
    }
  }
  throw std::runtime_error("outer_turning_point: no root in range");
}

int count_bound_levels(const PotentialModel& model, const GridPolicy& policy) {
  validate_potential_model(model);
  const double eps_probe = units::khz_to_au(1e-5);  // 0.01 Hz
  const double r_t = std::cbrt(model.c3 / eps_probe);
  RadialProblem prob = problem_for(model, 1.05 * r_t);
  // coarse phase sampling is plenty for a node count
  const double kr = max_kr(model, prob.r_out);
  const double h = std::min(2.0 * units::pi / (64.0 * std::max(kr, 1.0)), policy.max_step_x);
  const std::size_t n = static_cast<std::size_t>(std::ceil(std::log(prob.r_out / model.inner.r_in) / h)) + 1;
  SolverGrid grid = make_solver_grid(prob, true, std::max<std::size_t>(n, 64));
  return count_nodes_at_energy(prob, grid, -eps_probe);
}

std::vector<VibLevel> solve_levels(const PotentialModel& model,
                                   std::pair<double, double> binding_window,
                                   const GridPolicy& policy) {
  validate_potential_model(model);
  auto [eps_min, eps_max] = binding_window;
  if (!(eps_min > 0.0) || !(eps_max > eps_min))
    throw std::invalid_argument("solve_levels: window must satisfy 0 < eps_min < eps_max");
  const double depth = -model.v(model.inner.r_in);
  if (!(eps_max < depth))
    throw std::invalid_argument("solve_levels: window deeper than the potential at r_in");

  RadialProblem prob;
  SolverGrid grid = grid_for_window(model, eps_min, policy, prob);

  const int k_lo = count_nodes_at_energy(prob, grid, -eps_max);
  const int k_hi = count_nodes_at_energy(prob, grid, -eps_min);

  std::vector<VibLevel> out;
  for (int k = k_lo; k < k_hi; ++k) {
    VibLevel lv;
    const double e = solve_level(prob, grid, k, -eps_max, -eps_min);
    lv.binding_energy = -e;
    lv.wave = eigen_wave(prob, grid, e);
    lv.nodes = k;
    const int counted = count_sign_changes(lv.wave.u, 1e-8);
    if (counted != k)
      throw std::runtime_error("solve_levels: wave node count mismatch at level " +
                               std::to_string(k));
    lv.r_t = outer_turning_point(model, lv.binding_energy);
    lv.r_max = r_max_probability(lv);
    lv.v_label = (model.anchor_nodes >= 0) ? model.anchor_label + (k - model.anchor_nodes) : k;
    out.push_back(std::move(lv));
  }
  return out;
}

double r_max_probability(const VibLevel& level) {
  const auto& u = level.wave.u;
  const auto& r = level.wave.grid.r;
  std::size_t best = 0;
  double best_v = -1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double p = u[i] * u[i];
    if (p > best_v) {
      best_v = p;
      best = i;
    }
  }
  if (best == 0 || best + 1 >= u.size()) return r[best];
  // quadratic refinement through the neighbouring samples of |u|^2
  const double x0 = r[best - 1], x1 = r[best], x2 = r[best + 1];
  const double y0 = u[best - 1] * u[best - 1], y1 = u[best] * u[best], y2 = u[best + 1] * u[best + 1];
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double c2 = (d2 - d1) / (x2 - x0);
  if (c2 >= 0.0) return x1;
  return 0.5 * (x0 + x1 - d1 / c2);
}

std::pair<double, double> calibrate_c3(const std::vector<std::pair<double, double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("calibrate_c3: empty input");
  double mean = 0.0;
  std::vector<double> prod(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [eps, rt] = rows[i];
    prod[i] = eps * rt * rt * rt;
    mean += prod[i];
  }
  mean /= static_cast<double>(rows.size());
  double var = 0.0;
  for (double p : prod) var += (p - mean) * (p - mean);
  var /= static_cast<double>(rows.size());
  return {mean, std::sqrt(var) / mean};
}

namespace {

// Binding energy of the fixed-node-count level k for the given wall radius.
double level_binding_at_wall(PotentialModel model, double wall, int k,
                             double eps_scale, const GridPolicy& policy) {
  model.inner.r_in = wall;
  model.inner.kind = InnerBoundaryKind::HardWall;
  RadialProblem prob;
  SolverGrid grid = grid_for_window(model, eps_scale * 5e-3, policy, prob);

  const double depth = -model.v(wall);
  const double e_lo = -0.999 * depth;
  const double e_hi = -eps_scale * 5e-3;
  const int c_hi = count_nodes_at_energy(prob, grid, e_hi);
  if (c_hi < k + 1) return 0.0;  // level k not bound deeper than the probe edge
  return -solve_level(prob, grid, k, e_lo, e_hi, 1e-9);
}

}  // namespace

PotentialModel calibrate_boundary(PotentialModel model, std::pair<int, double> target,
                                  const GridPolicy& policy, const CalibrationOptions& opts) {
  const auto [target_label, eps_target] = target;
  if (!(eps_target > 0.0)) throw std::invalid_argument("calibrate_boundary: target binding must be > 0");
  const int d = opts.top_label - target_label;
  if (d < 0) throw std::invalid_argument("calibrate_boundary: target label above top label");

  double w_lo = (opts.wall_min > 0.0) ? opts.wall_min : units::nm_to_au(10.2);
  double w_hi = (opts.wall_max > 0.0) ? opts.wall_max : units::nm_to_au(27.2);
  if (!(w_hi > w_lo)) throw std::invalid_argument("calibrate_boundary: bad wall window");

  // fast path: an already-calibrated model that matches the target
  if (model.anchor_nodes >= 0 && model.anchor_label == target_label &&
      model.inner.kind == InnerBoundaryKind::HardWall) {
    const double eps = level_binding_at_wall(model, model.inner.r_in, model.anchor_nodes,
                                             eps_target, policy);
    if (eps > 0.0 && std::abs(eps - eps_target) <= 1e-10 * eps_target) return model;
  }

  validate_potential_model([&] {
    PotentialModel m = model;
    m.inner = {InnerBoundaryKind::HardWall, std::sqrt(w_lo * w_hi), 0.0};
    return m;
  }());

  // node-count identity of the anchor level, fixed for the whole search
  PotentialModel probe = model;
  probe.inner = {InnerBoundaryKind::HardWall, std::sqrt(w_lo * w_hi), 0.0};
  int k_star = count_bound_levels(probe, policy) - 1 - d;

  for (int attempt = 0; attempt < 10; ++attempt) {
    if (k_star < 1) throw std::runtime_error("calibrate_boundary: target unreachable (k* < 1)");
    // eps_k(w) decreases as the wall moves out; 0.0 means "not bound deeper
    // than the probe edge", i.e. far less bound than any target
    const double eps_at_lo = level_binding_at_wall(model, w_lo, k_star, eps_target, policy);
    if (eps_target > eps_at_lo) {
      --k_star;  // need a deeper level
      continue;
    }
    const double eps_at_hi = level_binding_at_wall(model, w_hi, k_star, eps_target, policy);
    if (eps_at_hi > eps_target) {
      ++k_star;  // level too deep across the whole window
      continue;
    }

    double a = w_lo, b = w_hi;
    double eps_mid = 0.0, w_mid = 0.0;
    for (int it = 0; it < 200; ++it) {
      w_mid = std::sqrt(a * b);
      eps_mid = level_binding_at_wall(model, w_mid, k_star, eps_target, policy);
      if (std::abs(eps_mid - eps_target) <= opts.rel_tol * eps_target) break;
      if (eps_mid > eps_target)
        a = w_mid;  // too bound: move the wall out
      else
        b = w_mid;
      if ((b - a) < 1e-14 * w_mid) break;
    }
    if (std::abs(eps_mid - eps_target) > opts.rel_tol * eps_target)
      throw std::runtime_error("calibrate_boundary: wall bisection did not reach tolerance");

    model.inner = {InnerBoundaryKind::HardWall, w_mid, 0.0};
    const int n_total = count_bound_levels(model, policy);
    const int above = n_total - 1 - k_star;
    if (above == d) {
      model.anchor_nodes = k_star;
      model.anchor_label = target_label;
      return model;
    }
    k_star += (above - d);  // off by a level that appeared/left at threshold
  }
  throw std::runtime_error("calibrate_boundary: could not satisfy the level-count constraint");
}

LeRoyBernsteinFit leroy_bernstein_fit(const std::vector<std::pair<int, double>>& levels) {
  if (levels.size() < 3)
    throw std::invalid_argument("leroy_bernstein_fit: need at least 3 levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(levels.size());
  for (const auto& [v, eps] : levels) {
    if (!(eps > 0.0)) throw std::invalid_argument("leroy_bernstein_fit: binding energies must be > 0");
    const double y = std::pow(eps, 1.0 / 6.0);
    sx += v;
    sy += y;
    sxx += static_cast<double>(v) * v;
    sxy += v * y;
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw std::invalid_argument("leroy_bernstein_fit: degenerate fit");
  const double slope = (n * sxy - sx * sy) / det;   // = -H
  const double intercept = (sy - slope * sx) / n;   // = H * v_d
  if (!(slope < 0.0)) throw std::invalid_argument("leroy_bernstein_fit: energies do not decrease with v");

  LeRoyBernsteinFit fit;
  fit.slope = -slope;
  fit.v_d = intercept / fit.slope;
  fit.residuals.reserve(levels.size());
  for (const auto& [v, eps] : levels) {
    const double e_fit = std::pow(intercept + slope * v, 6.0);
    fit.residuals.push_back((e_fit - eps) / eps);
  }
  return fit;
}

std::vector<std::pair<double, double>> load_potential_table(std::istream& in,
                                                            const std::string& name) {
  std::vector<std::pair<double, double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double r_nm, v_mhz;
    if (!(ls >> r_nm)) continue;  // blank or comment-only line
    if (!(ls >> v_mhz)) {
      throw std::invalid_argument(name + ": expected two columns (R_nm V_over_h_MHz) at line " +
                                  std::to_string(lineno));
    }
    double extra;
    if (ls >> extra)
      throw std::invalid_argument(name + ": more than two columns at line " + std::to_string(lineno));
    if (!(r_nm > 0.0))
      throw std::invalid_argument(name + ": radius must be > 0 at line " + std::to_string(lineno));
    const double r = units::nm_to_au(r_nm);
    if (!rows.empty() && r <= rows.back().first)
      throw std::invalid_argument(name + ": radii must increase strictly at line " +
                                  std::to_string(lineno));
    rows.emplace_back(r, units::mhz_to_au(v_mhz));
  }
  if (rows.size() < 2) throw std::invalid_argument(name + ": need at least two table rows");
  return rows;
}

std::vector<std::pair<double, double>> load_potential_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential table: " + path);
  return load_potential_table(in, path);
}

}  // namespace pa
