#pragma once

namespace pa {

// Gamma at negative arguments alternates sign between poles, so ratios are
// composed in log space with the sign carried separately.
struct SignedLog {
  double log_magnitude = 0.0;
  int sign = 1;  // +1, -1, or 0 for an exact zero

  double value() const;
};

// log|Gamma(x)| with sign; reflection formula below x = 1/2.
// Throws std::domain_error at the poles (x = 0, -1, -2, ...).
SignedLog ln_gamma_signed(double x);

// Gamma(a)/Gamma(b) with the correct sign, computed in log space.
double gamma_ratio(double a, double b);

// Kummer's confluent hypergeometric M(a, b, x), power series with
// compensated summation. Documented domain: 0 <= x <= 400, b not a
// nonpositive integer.
double kummer_m(double a, double b, double x);

// Tricomi's confluent hypergeometric U(a, b, x) for x > 0 and non-integer b
// (the trap model uses b = 3/2). Terminating form at nonpositive integer a,
// two-M connection formula at small x, asymptotic series at large x.
double tricomi_u(double a, double b, double x);

// Gamma(n + 3/2) / (Gamma(3/2) * n!): coefficient of the first-order
// scattering-length shift of the trapped-pair level n.
double gen_binom_half(int n);

}  // namespace pa
