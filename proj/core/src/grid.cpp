#include "pa/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pa {

RadialGrid make_grid(double r_min, double r_max, std::size_t n, GridKind kind) {
  if (!(r_min > 0.0)) throw std::invalid_argument("make_grid: r_min must be > 0");
  if (!(r_max > r_min)) throw std::invalid_argument("make_grid: r_max must exceed r_min");
  if (n < 3) throw std::invalid_argument("make_grid: need at least 3 points");

  RadialGrid g;
  g.kind = kind;
  g.r.resize(n);
  const auto last = static_cast<double>(n - 1);
  if (kind == GridKind::Uniform) {
    const double h = (r_max - r_min) / last;
    for (std::size_t i = 0; i < n; ++i) g.r[i] = r_min + h * static_cast<double>(i);
  } else {
    const double dlnr = std::log(r_max / r_min) / last;
    for (std::size_t i = 0; i < n; ++i) g.r[i] = r_min * std::exp(dlnr * static_cast<double>(i));
  }
  g.r.front() = r_min;
  g.r.back() = r_max;
  return g;
}

void validate_grid(const RadialGrid& g) {
  if (g.r.size() < 3) throw std::invalid_argument("grid: need at least 3 points");
  if (!(g.r.front() > 0.0)) throw std::invalid_argument("grid: first point must be > 0");
  for (std::size_t i = 1; i < g.r.size(); ++i)
    if (!(g.r[i] > g.r[i - 1])) throw std::invalid_argument("grid: points must increase strictly");
}

namespace {

// Integral over [lo, hi] of the parabola through (x0,f0), (x1,f1), (x2,f2),
// written with divided differences.
double parabola_panel(double x0, double x1, double x2, double f0, double f1, double f2,
                      double lo, double hi) {
  const double c1 = (f1 - f0) / (x1 - x0);
  const double c2 = ((f2 - f1) / (x2 - x1) - c1) / (x2 - x0);
  const double b = x1 - x0;
  const double ta = lo - x0, tb = hi - x0;
  const double i1 = 0.5 * (tb * tb - ta * ta);
  const double i2 = (tb * tb * tb - ta * ta * ta) / 3.0 - 0.5 * b * (tb * tb - ta * ta);
  return f0 * (hi - lo) + c1 * i1 + c2 * i2;
}

}  // namespace

double integrate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("integrate: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("integrate: need at least 3 points");

  double sum = 0.0;
  std::size_t i = 0;
  // pairs of intervals
  for (; i + 2 < n; i += 2)
    sum += parabola_panel(x[i], x[i + 1], x[i + 2], y[i], y[i + 1], y[i + 2], x[i], x[i + 2]);
  // odd interval count: last interval with the trailing triple
  if (i + 1 < n) {
    const std::size_t m = n - 3;
    sum += parabola_panel(x[m], x[m + 1], x[m + 2], y[m], y[m + 1], y[m + 2], x[m + 1], x[m + 2]);
  }
  return sum;
}

double integrate(const RadialGrid& g, std::span<const double> f) {
  return integrate(std::span<const double>(g.r), f);
}

double RadialWave::norm_squared() const {
  std::vector<double> u2(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) u2[i] = u[i] * u[i];
  return integrate(grid, u2);
}

RadialWave normalize(RadialWave w) {
  const double n2 = w.norm_squared();
  if (!(n2 > 0.0)) throw std::invalid_argument("normalize: zero-norm wave");
  const double s = 1.0 / std::sqrt(n2);
  for (double& v : w.u) v *= s;
  w.norm = NormConvention::Unit;
  return w;
}

double wave_at(const RadialWave& w, double r) {
  const auto& x = w.grid.r;
  const std::size_t n = x.size();
  if (r < x.front() || r > x.back()) return 0.0;

  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t j = static_cast<std::size_t>(it - x.begin());
  if (j == 0) j = 1;
  if (j > n - 1) j = n - 1;
  // 4-point stencil around interval [j-1, j]
  std::size_t s = (j >= 2) ? j - 2 : 0;
  if (s + 4 > n) s = n - 4;

  double acc = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    double l = 1.0;
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      l *= (r - x[s + b]) / (x[s + a] - x[s + b]);
    }
    acc += l * w.u[s + a];
  }
  return acc;
}

int count_sign_changes(std::span<const double> u, double floor_frac) {
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::abs(v));
  if (umax == 0.0) return 0;
  const double floor = floor_frac * umax;

  int changes = 0;
  double prev = 0.0;
  for (double v : u) {
    if (std::abs(v) <= floor) continue;
    if (prev != 0.0 && ((prev > 0.0) != (v > 0.0))) ++changes;
    prev = v;
  }
  return changes;
}

}  // namespace pa
