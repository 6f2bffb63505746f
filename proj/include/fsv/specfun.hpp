#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "fsv/errors.hpp"

namespace fsv {

/// Tuning knobs shared by the scalar special functions.
struct SpecFunConfig {
  double series_tol = 1e-14;        // relative term-stopping tolerance
  int max_terms = 4000;             // series/iteration budget
  double asymptotic_switch = 30.0;  // argument magnitude floor for regime switches

  void validate() const {
    if (!(series_tol > 0.0 && series_tol <= 1e-6))
      throw DomainError("SpecFunConfig: series_tol must be in (0, 1e-6]");
    if (max_terms < 200) throw DomainError("SpecFunConfig: max_terms must be >= 200");
    if (!(asymptotic_switch > 0.0)) throw DomainError("SpecFunConfig: asymptotic_switch must be > 0");
  }
};

inline const SpecFunConfig& default_specfun() {
  static const SpecFunConfig cfg{};
  return cfg;
}

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: requires x > 0, got " + std::to_string(x));
  return std::lgamma(x);
}

/// Gamma(p)/Gamma(q) evaluated as exp(lnG(p) - lnG(q)); overflow-safe for large arguments.
inline double gamma_ratio(double p, double q) { return std::exp(log_gamma(p) - log_gamma(q)); }

namespace detail {

struct SignedLog {
  double logabs;
  int sign;  // -1, 0, +1
};

inline bool is_nonpositive_integer(double b) {
  return b <= 0.0 && b == std::floor(b);
}

// sign of Gamma(a) for non-pole a
inline int gamma_sign(double a) {
  if (a > 0.0) return 1;
  return (static_cast<long long>(std::floor(a)) % 2 == 0) ? -1 : 1;
}

// Plain Taylor series for 1F1, no regime switching. Exposed for cross-route tests;
// loses ~e^{|z|} digits of precision for negative z.
inline double kummer_series(double a, double b, double z, const SpecFunConfig& cfg = default_specfun()) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < cfg.max_terms; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1.0));
    sum += term;
    if (std::abs(term) <= cfg.series_tol * std::abs(sum) && k >= 3) return sum;
    if (term == 0.0) return sum;  // terminating (polynomial) case
  }
  throw ConvergenceError("kummer_series: max_terms exceeded");
}

// Series with periodic rescaling; valid for any z >= 0, returns signed log.
inline SignedLog kummer_series_log(double a, double b, double z, const SpecFunConfig& cfg) {
  double term = 1.0, sum = 1.0, offset = 0.0;
  const double big = 1e250, down = 1e-250;
  int budget = std::max(cfg.max_terms, static_cast<int>(z * 1.3) + 500);
  for (int k = 0; k < budget; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1.0));
    sum += term;
    if (std::abs(term) <= cfg.series_tol * std::abs(sum) && k >= 3) {
      if (sum == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
      return {offset + std::log(std::abs(sum)), sum > 0 ? 1 : -1};
    }
    if (term == 0.0) {
      return {offset + std::log(std::abs(sum)), sum > 0 ? 1 : (sum < 0 ? -1 : 0)};
    }
    if (std::abs(sum) > big || std::abs(term) > big) {
      sum *= down;
      term *= down;
      offset += std::log(big);
    }
  }
  throw ConvergenceError("kummer_series_log: term budget exceeded at z=" + std::to_string(z));
}

// log of the |z| -> inf expansion  1F1(a,b,z) ~ G(b)/G(a) e^z z^{a-b} 2F0(b-a, 1-a; 1/z),
// equivalently the Kummer transform followed by the large-argument expansion of the
// transformed series. Returns sign=0 on failure to converge (caller falls back).
inline SignedLog kummer_asymptotic_log(double a, double b, double z, const SpecFunConfig& cfg) {
  if (is_nonpositive_integer(a)) return {0.0, 0};  // Gamma(a) pole; caller handles
  double s = 1.0, term = 1.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 80; ++k) {
    term *= (b - a + k - 1.0) * (k - a) / (k * z);
    double mag = std::abs(term);
    if (mag >= smallest) break;  // divergent tail reached
    smallest = mag;
    s += term;
    if (mag <= cfg.series_tol * std::abs(s)) break;
  }
  if (!(smallest <= 1e-11 * std::abs(s)) || s == 0.0) return {0.0, 0};
  // lgamma on negative non-integers returns ln|Gamma|; carry signs separately
  double logabs = std::lgamma(b) - std::lgamma(a);
  int sign = gamma_sign(b) * gamma_sign(a) * (s > 0 ? 1 : -1);
  return {logabs + z + (a - b) * std::log(z) + std::log(std::abs(s)), sign};
}

inline SignedLog kummer_signed_log(double a, double b, double z, const SpecFunConfig& cfg) {
  if (is_nonpositive_integer(b))
    throw DomainError("kummer_1f1: b is a nonpositive integer (pole)");
  if (!std::isfinite(z)) throw DomainError("kummer_1f1: z must be finite");
  if (z == 0.0) return {0.0, 1};
  if (z < 0.0) {
    // Kummer transform: 1F1(a;b;z) = e^z 1F1(b-a;b;-z); maps onto a stable positive-z series
    SignedLog r = kummer_signed_log(b - a, b, -z, cfg);
    return {z + r.logabs, r.sign};
  }
  const double series_max = std::max(cfg.asymptotic_switch, 250.0);
  if (z <= series_max) return kummer_series_log(a, b, z, cfg);
  SignedLog r = kummer_asymptotic_log(a, b, z, cfg);
  if (r.sign != 0) return r;
  return kummer_series_log(a, b, z, cfg);
}

}  // namespace detail

/// Kummer confluent hypergeometric 1F1(a; b; z).
inline double kummer_1f1(double a, double b, double z, const SpecFunConfig& cfg = default_specfun()) {
  detail::SignedLog r = detail::kummer_signed_log(a, b, z, cfg);
  return r.sign * std::exp(r.logabs);
}

/// ln 1F1(a; b; z) for the strictly positive case (a,b > 0, z real); used by the CIR
/// transform formulas whose arguments keep 1F1 positive but astronomically large.
inline double log_kummer_1f1(double a, double b, double z, const SpecFunConfig& cfg = default_specfun()) {
  detail::SignedLog r = detail::kummer_signed_log(a, b, z, cfg);
  if (r.sign <= 0) throw DomainError("log_kummer_1f1: function value is not positive");
  return r.logabs;
}

namespace detail {

// ln I_nu(z) by the ascending series with periodic rescaling; all terms positive for nu > -1.
inline double bessel_series_log(double nu, double z, const SpecFunConfig& cfg) {
  const double h = z / 2.0;
  const double h2 = h * h;
  double u = 1.0, sum = 1.0, offset = 0.0;
  const double big = 1e250;
  int budget = std::max(cfg.max_terms, static_cast<int>(z) + 400);
  for (int k = 0; k < budget; ++k) {
    u *= h2 / ((k + 1.0) * (nu + k + 1.0));
    sum += u;
    if (u <= cfg.series_tol * sum && k >= 2)
      return nu * std::log(h) - std::lgamma(nu + 1.0) + offset + std::log(sum);
    if (sum > big) {
      sum *= 1e-250;
      u *= 1e-250;
      offset += std::log(big);
    }
  }
  throw ConvergenceError("bessel_series_log: budget exceeded at z=" + std::to_string(z));
}

// ln[e^{-z} I_nu(z)] by the large-argument expansion; caller ensures z >> nu^2.
inline double bessel_asymptotic_scaled_log(double nu, double z, const SpecFunConfig& cfg) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, s = 1.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 60; ++k) {
    term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * z * k);
    double mag = std::abs(term);
    if (mag >= smallest) break;
    smallest = mag;
    s += term;
    if (mag <= cfg.series_tol * std::abs(s)) break;
  }
  if (!(s > 0.0) || !(smallest <= 1e-12 * s))
    throw ConvergenceError("bessel_asymptotic: expansion not usable at z=" + std::to_string(z));
  return -0.5 * std::log(2.0 * M_PI * z) + std::log(s);
}

}  // namespace detail

/// ln I_order(z) for z > 0, order > -1.
inline double log_bessel_i(double order, double z, const SpecFunConfig& cfg = default_specfun()) {
  if (!(order >= -1.0)) throw DomainError("bessel_i: order must be >= -1");
  if (!(z > 0.0)) throw DomainError("log_bessel_i: requires z > 0");
  if (z >= 40.0 && z >= 2.0 * order * order)
    return z + detail::bessel_asymptotic_scaled_log(order, z, cfg);
  return detail::bessel_series_log(order, z, cfg);
}

/// Modified Bessel function of the first kind, real order >= -1, z >= 0.
inline double bessel_i(double order, double z, const SpecFunConfig& cfg = default_specfun()) {
  if (!(order >= -1.0)) throw DomainError("bessel_i: order must be >= -1");
  if (!(z >= 0.0)) throw DomainError("bessel_i: requires z >= 0");
  if (z == 0.0) {
    if (order == 0.0) return 1.0;
    if (order > 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();  // z^order blows up for order < 0
  }
  return std::exp(log_bessel_i(order, z, cfg));
}

/// Exponentially scaled variant e^{-z} I_order(z); finite far beyond the overflow range of I.
inline double bessel_i_scaled(double order, double z, const SpecFunConfig& cfg = default_specfun()) {
  if (!(order >= -1.0)) throw DomainError("bessel_i_scaled: order must be >= -1");
  if (!(z >= 0.0)) throw DomainError("bessel_i_scaled: requires z >= 0");
  if (z == 0.0) return bessel_i(order, z, cfg);
  return std::exp(log_bessel_i(order, z, cfg) - z);
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma (CDF helpers for the chi-square tests).
// ---------------------------------------------------------------------------

namespace detail {

inline double gamma_p_series(double a, double x, const SpecFunConfig& cfg) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int n = 0; n < cfg.max_terms; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw ConvergenceError("gamma_p_series");
}

inline double gamma_q_contfrac(double a, double x, const SpecFunConfig& cfg) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= cfg.max_terms; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw ConvergenceError("gamma_q_contfrac");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x, const SpecFunConfig& cfg = default_specfun()) {
  if (!(a > 0.0) || x < 0.0) throw DomainError("gamma_p: requires a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? detail::gamma_p_series(a, x, cfg) : 1.0 - detail::gamma_q_contfrac(a, x, cfg);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x, const SpecFunConfig& cfg = default_specfun()) {
  if (!(a > 0.0) || x < 0.0) throw DomainError("gamma_q: requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - detail::gamma_p_series(a, x, cfg) : detail::gamma_q_contfrac(a, x, cfg);
}

/// Chi-square survival function with dof degrees of freedom.
inline double chi2_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return gamma_q(dof / 2.0, x / 2.0);
}

/// Standard normal CDF.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

}  // namespace fsv
