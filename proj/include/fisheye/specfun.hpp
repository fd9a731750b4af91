#pragma once

// Self-contained double-precision special functions: Gamma through a fixed
// Lanczos-type rational approximation with reflection, the Gauss
// hypergeometric 2F1 on the unit interval (direct power series plus the
// z -> 1-z connection formulas, including the logarithmic cases hit whenever
// c-a-b is an integer), and the Gegenbauer/Legendre functions of arbitrary
// real degree built on top of it.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "fisheye/error.hpp"

namespace fisheye::specfun {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Term cap shared by all series; hitting it raises NoConvergence.
inline constexpr std::size_t kDefaultTermCap = 200000;

struct SeriesDiagnostics {
  enum class Branch { DirectSeries, ConnectionFormula, LogCaseConnection };
  std::size_t terms_used = 1;
  double tail_estimate = 0.0;  // absolute error bound estimate
  Branch branch = Branch::DirectSeries;
};

inline const char* to_string(SeriesDiagnostics::Branch b) {
  switch (b) {
    case SeriesDiagnostics::Branch::DirectSeries: return "direct-series";
    case SeriesDiagnostics::Branch::ConnectionFormula: return "connection-formula";
    case SeriesDiagnostics::Branch::LogCaseConnection: return "log-case-connection";
  }
  return "unknown";
}

/// Degree/order pair of the Gegenbauer function C_degree^order.
struct GegenbauerParams {
  double degree = 0.0;  // lambda: finite real, negative integers rejected
  double order = 0.5;   // alpha > 0
};

namespace detail {

inline bool near_integer(double x, double tol) {
  return std::abs(x - std::round(x)) < tol;
}

inline bool near_nonpositive_integer(double x, double tol) {
  return x < 0.5 && near_integer(x, tol) && std::round(x) <= 0.0;
}

// sin(pi x) with exact range reduction; fmod by 2 is exact in binary
// floating point, so this stays accurate near the zeros of sin.
inline double sin_pi(double x) {
  double y = std::fmod(x, 2.0);
  if (y >= 1.0)
    y -= 2.0;
  else if (y < -1.0)
    y += 2.0;
  if (y > 0.5)
    y = 1.0 - y;
  else if (y < -0.5)
    y = -1.0 - y;
  return std::sin(kPi * y);
}

inline double cos_pi(double x) { return sin_pi(x + 0.5); }

// Lanczos sum, g = 607/128, 14 coefficients; relative error ~1e-15 over
// x >= 0.5. Returns +inf once Gamma(x) leaves the double range.
inline double lanczos_gamma_positive(double x) {
  static constexpr double coef[14] = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      3.39946499848118887e-5,  4.65236289270485756e-5,
      -9.83744753048795646e-5, 1.58088703224912494e-4,
      -2.10264441724104883e-4, 2.17439618115212643e-4,
      -1.64318106536763890e-4, 8.44182239838527433e-5,
      -2.61908384015814087e-5, 3.68991826595316234e-6};
  if (x > 200.0) return std::numeric_limits<double>::infinity();
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += coef[j] / (x + 1.0 + j);
  const double t = x + 5.24218750000000000;
  // power split and early division keep intermediates in range all the way
  // to the Gamma overflow point near x = 171.62
  const double p = std::pow(t, 0.5 * x + 0.25);
  return 2.5066282746310005 * (p * std::exp(-t)) * (p / x) * ser;
}

}  // namespace detail

/// Gamma function on the real line; poles rejected, reflection below 1/2.
inline double gamma(double x) {
  if (!std::isfinite(x))
    throw DomainError("PoleArgument", "gamma: non-finite argument");
  if (x < 0.5) {
    if (detail::near_nonpositive_integer(x, 1e-12))
      throw DomainError("PoleArgument",
                        "gamma: pole at x = " + std::to_string(x));
    const double s = detail::sin_pi(x);
    // underflows to zero once Gamma(1-x) leaves the double range
    return kPi / (s * detail::lanczos_gamma_positive(1.0 - x));
  }
  const double g = detail::lanczos_gamma_positive(x);
  if (!std::isfinite(g))
    throw DomainError("Overflow",
                      "gamma: result exceeds the double range at x = " +
                          std::to_string(x));
  return g;
}

/// 1/Gamma(x): entire, zero at the poles of Gamma.
inline double rgamma(double x) {
  if (!std::isfinite(x))
    throw DomainError("PoleArgument", "rgamma: non-finite argument");
  if (x >= 0.5) {
    const double g = detail::lanczos_gamma_positive(x);
    return std::isfinite(g) ? 1.0 / g : 0.0;
  }
  return detail::sin_pi(x) * detail::lanczos_gamma_positive(1.0 - x) / kPi;
}

namespace detail {

// psi(x); needed by the logarithmic connection formulas only.
inline double digamma(double x) {
  if (!std::isfinite(x))
    throw DomainError("PoleArgument", "digamma: non-finite argument");
  if (near_nonpositive_integer(x, 1e-12))
    throw DomainError("PoleArgument",
                      "digamma: pole at x = " + std::to_string(x));
  double result = 0.0;
  if (x < 0.5) {
    result = -kPi * cos_pi(x) / sin_pi(x);
    x = 1.0 - x;
  }
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double u = 1.0 / (x * x);
  const double tail =
      u * (1.0 / 12.0 -
           u * (1.0 / 120.0 -
                u * (1.0 / 252.0 -
                     u * (1.0 / 240.0 -
                          u * (1.0 / 132.0 -
                               u * (691.0 / 32760.0 - u * (1.0 / 12.0)))))));
  return result + std::log(x) - 0.5 / x - tail;
}

struct SeriesSum {
  double value = 0.0;
  std::size_t terms = 0;
  double tail = 0.0;
};

// Plain 2F1 power series; assumes z in [0,1) or a terminating parameter set.
// Accumulation runs in extended precision: alternating Pochhammer products
// can exceed the sum by several orders of magnitude (terminating polynomials
// near their roots), and the extra mantissa bits keep that cancellation
// below the 1e-12 contract.
inline SeriesSum hyp_series(double a, double b, double c, double z,
                            std::size_t cap) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  long double sum = 1.0L;
  long double term = 1.0L;
  std::size_t used = 1;
  int calm = 0;
  for (std::size_t k = 0; used < cap; ++k) {
    const long double kk = static_cast<long double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0L)) *
            static_cast<long double>(z);
    sum += term;
    ++used;
    if (term == 0.0L) {
      calm = 2;
      break;
    }
    if (std::abs(static_cast<double>(term)) <=
        0.5 * eps * (1.0 + std::abs(static_cast<double>(sum)))) {
      if (++calm >= 2) break;
    } else {
      calm = 0;
    }
  }
  if (calm < 2)
    throw DomainError("NoConvergence",
                      "2F1 series: term cap " + std::to_string(cap) +
                          " reached before the tail passed tolerance");
  const double geo = (z < 1.0) ? z / (1.0 - z) : 1.0;
  const double out = static_cast<double>(sum);
  return {out, used,
          std::abs(static_cast<double>(term)) * geo + eps * std::abs(out)};
}

}  // namespace detail

struct Hyp2F1Result {
  double value = 0.0;
  SeriesDiagnostics diagnostics;
};

/// Direct power series for 2F1(a,b;c;z). Slow reference mode retained for
/// cross-checking the connection-formula branches; usable up to z ~ 0.98.
inline Hyp2F1Result gauss_2f1_direct(double a, double b, double c, double z,
                                     std::size_t term_cap = kDefaultTermCap) {
  const auto s = detail::hyp_series(a, b, c, z, term_cap);
  return {s.value,
          {s.terms, s.tail, SeriesDiagnostics::Branch::DirectSeries}};
}

namespace detail {

// c - a - b not an integer: DLMF 15.8.4 with both series in w = 1-z.
inline Hyp2F1Result connection_nonint(double a, double b, double c, double w,
                                      std::size_t cap) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double s = c - a - b;
  const double coef1 =
      gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
  const double coef2 = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b);
  const auto f1 = hyp_series(a, b, 1.0 - s, w, cap);
  const auto f2 = hyp_series(c - a, c - b, 1.0 + s, w, cap);
  const double ws = std::pow(w, s);
  const double t1 = coef1 * f1.value;
  const double t2 = coef2 * ws * f2.value;
  const double tail = std::abs(coef1) * f1.tail +
                      std::abs(coef2 * ws) * f2.tail +
                      eps * (std::abs(t1) + std::abs(t2));
  return {t1 + t2,
          {f1.terms + f2.terms, tail,
           SeriesDiagnostics::Branch::ConnectionFormula}};
}

// c - a - b equal to the integer m: the logarithmic companions
// (AMS55 15.3.10 for m = 0, 15.3.11 for m > 0, 15.3.12 for m < 0).
// c is snapped to a + b + m, exact in the even-dimension use of this code.
inline Hyp2F1Result connection_log(double a, double b, int m, double w,
                                   std::size_t cap) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double lw = std::log(w);
  const double geo = w / (1.0 - w);

  // log-weighted series: sum of p_k * (lw + shift_k) with incremental
  // Pochhammer/digamma updates supplied by the caller lambdas below
  auto run_log_series = [&](double p0, double da0, double db0, double dm0,
                            double ra, double rb, int mm,
                            double* abs_last) -> SeriesSum {
    double p = p0;
    double da = da0, db = db0, dm = dm0, d1 = digamma(1.0);
    double sum = 0.0;
    std::size_t used = 0;
    int calm = 0;
    double term = 0.0;
    for (std::size_t k = 0; used < cap; ++k) {
      const double kk = static_cast<double>(k);
      term = p * (lw - d1 - dm + da + db);
      sum += term;
      ++used;
      if (term == 0.0 && p == 0.0) {
        calm = 2;
        break;
      }
      if (std::abs(term) <= 0.5 * eps * (1.0 + std::abs(sum))) {
        if (++calm >= 2) break;
      } else {
        calm = 0;
      }
      p *= (ra + kk) * (rb + kk) / ((kk + 1.0) * (kk + 1.0 + mm)) * w;
      da += 1.0 / (ra + kk);
      db += 1.0 / (rb + kk);
      d1 += 1.0 / (kk + 1.0);
      dm += 1.0 / (kk + 1.0 + mm);
    }
    if (calm < 2)
      throw DomainError("NoConvergence",
                        "2F1 logarithmic series: term cap reached");
    *abs_last = std::abs(term);
    return {sum, used, std::abs(term) * geo};
  };

  double value = 0.0, tail = 0.0;
  std::size_t terms = 0;
  double abs_last = 0.0;

  if (m == 0) {
    const double pref = gamma(a + b) * rgamma(a) * rgamma(b);
    // bracket 2*psi(k+1) - psi(a+k) - psi(b+k) - ln w, i.e. signs flipped
    // relative to run_log_series; fold the flip into the prefactor
    const auto s0 = run_log_series(1.0, digamma(a), digamma(b), digamma(1.0),
                                   a, b, 0, &abs_last);
    value = -pref * s0.value;
    terms = s0.terms;
    tail = std::abs(pref) * s0.tail + eps * std::abs(value);
  } else if (m > 0) {
    const double ce = a + b + static_cast<double>(m);
    double q = 1.0, fin = 0.0;
    for (int k = 0; k < m; ++k) {
      fin += q;
      if (k + 1 < m)
        q *= (a + k) * (b + k) /
             ((k + 1.0) * (1.0 - static_cast<double>(m) + k)) * w;
    }
    const double t1 =
        gamma(static_cast<double>(m)) * gamma(ce) * rgamma(a + m) *
        rgamma(b + m) * fin;
    const auto s1 =
        run_log_series(rgamma(static_cast<double>(m) + 1.0), digamma(a + m),
                       digamma(b + m), digamma(static_cast<double>(m) + 1.0),
                       a + m, b + m, m, &abs_last);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double coef2 = -sign * gamma(ce) * rgamma(a) * rgamma(b) *
                         std::pow(w, static_cast<double>(m));
    const double t2 = coef2 * s1.value;
    value = t1 + t2;
    terms = static_cast<std::size_t>(m) + s1.terms;
    tail = std::abs(coef2) * s1.tail + eps * (std::abs(t1) + std::abs(t2));
  } else {
    const int mu = -m;
    const double ce = a + b - static_cast<double>(mu);
    double q = 1.0, fin = 0.0;
    for (int k = 0; k < mu; ++k) {
      fin += q;
      if (k + 1 < mu)
        q *= (a - mu + k) * (b - mu + k) /
             ((k + 1.0) * (1.0 - static_cast<double>(mu) + k)) * w;
    }
    const double t1 = gamma(static_cast<double>(mu)) * gamma(ce) * rgamma(a) *
                      rgamma(b) * std::pow(w, -static_cast<double>(mu)) * fin;
    const auto s1 =
        run_log_series(rgamma(static_cast<double>(mu) + 1.0), digamma(a),
                       digamma(b), digamma(static_cast<double>(mu) + 1.0),
                       a, b, mu, &abs_last);
    const double sign = (mu % 2 == 0) ? 1.0 : -1.0;
    const double coef2 = -sign * gamma(ce) * rgamma(a - mu) * rgamma(b - mu);
    const double t2 = coef2 * s1.value;
    value = t1 + t2;
    terms = static_cast<std::size_t>(mu) + s1.terms;
    tail = std::abs(coef2) * s1.tail + eps * (std::abs(t1) + std::abs(t2));
  }
  return {value,
          {terms, tail, SeriesDiagnostics::Branch::LogCaseConnection}};
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a,b;c;z) on z in [0,1). Direct series for
/// z <= 0.5 and for terminating parameter sets; otherwise the z -> 1-z
/// connection formula, switching to the logarithmic variant when c-a-b is
/// within 1e-8 of an integer.
inline Hyp2F1Result gauss_2f1(double a, double b, double c, double z,
                              std::size_t term_cap = kDefaultTermCap) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(z))
    throw DomainError("InvalidArgument", "2F1: non-finite input");
  if (detail::near_nonpositive_integer(c, 1e-12))
    throw DomainError("ParameterPole", "2F1: c is a non-positive integer");
  const bool terminating = detail::near_nonpositive_integer(a, 1e-12) ||
                           detail::near_nonpositive_integer(b, 1e-12);
  if (z < 0.0 || z > 1.0 || (z >= 1.0 - 1e-12 && !terminating))
    throw DomainError("SingularArgument", "2F1: z must lie in [0, 1)");
  if (z == 0.0)
    return {1.0, {1, 0.0, SeriesDiagnostics::Branch::DirectSeries}};
  if (terminating || z <= 0.5) return gauss_2f1_direct(a, b, c, z, term_cap);
  const double s = c - a - b;
  const double m = std::round(s);
  const double w = 1.0 - z;
  if (std::abs(s - m) < 1e-8)
    return detail::connection_log(a, b, static_cast<int>(m), w, term_cap);
  return detail::connection_nonint(a, b, c, w, term_cap);
}

/// Gegenbauer function C_lambda^alpha(x) of arbitrary real degree,
/// C = Gamma(lambda+2 alpha) / (Gamma(2 alpha) Gamma(lambda+1))
///     * 2F1(-lambda, lambda+2 alpha; alpha+1/2; (1-x)/2),
/// valid on -1 < x <= 1 (x = -1 only when the degree is a non-negative
/// integer and the function degenerates to a polynomial).
inline Hyp2F1Result gegenbauer_c(const GegenbauerParams& params, double x) {
  if (!(params.order > 0.0) || !std::isfinite(params.order) ||
      !std::isfinite(params.degree))
    throw DomainError("InvalidArgument",
                      "gegenbauer: requires finite degree and order > 0");
  double lam = params.degree;
  const double alpha = params.order;
  if (detail::near_integer(lam, 1e-8) && std::round(lam) < 0.0)
    throw DomainError("NegativeIntegerDegree",
                      "gegenbauer: degree within 1e-8 of a negative integer");
  if (!(x > -1.0 - 1e-12) || x > 1.0)
    throw DomainError("InvalidArgument", "gegenbauer: x must lie in (-1, 1]");
  if (x <= -1.0 + 1e-12 &&
      !(detail::near_integer(lam, 1e-12) && std::round(lam) >= 0.0))
    throw DomainError("SingularArgument",
                      "gegenbauer: x = -1 is singular for non-integer degree");
  double sign = 1.0;
  if (x < 0.0 && detail::near_integer(lam, 1e-12) && std::round(lam) >= 0.0) {
    // parity C_l(-x) = (-1)^l C_l(x): move the terminating series to the
    // small-argument side where it does not cancel
    lam = std::round(lam);
    x = -x;
    if (std::llround(lam) % 2 != 0) sign = -1.0;
  }
  const double pre =
      gamma(lam + 2.0 * alpha) * rgamma(2.0 * alpha) * rgamma(lam + 1.0);
  auto f = gauss_2f1(-lam, lam + 2.0 * alpha, alpha + 0.5, 0.5 * (1.0 - x));
  f.value *= sign * pre;
  return f;
}

/// Legendre function P_lambda(x) = 2F1(-lambda, lambda+1; 1; (1-x)/2);
/// cross-check oracle for gegenbauer_c at order 1/2.
inline double legendre_p(double degree, double x) {
  if (!std::isfinite(degree))
    throw DomainError("InvalidArgument", "legendre: non-finite degree");
  if (detail::near_integer(degree, 1e-8) && std::round(degree) < 0.0)
    throw DomainError("NegativeIntegerDegree",
                      "legendre: degree within 1e-8 of a negative integer");
  if (!(x > -1.0 - 1e-12) || x > 1.0)
    throw DomainError("InvalidArgument", "legendre: x must lie in (-1, 1]");
  if (x <= -1.0 + 1e-12 &&
      !(detail::near_integer(degree, 1e-12) && std::round(degree) >= 0.0))
    throw DomainError("SingularArgument",
                      "legendre: x = -1 is singular for non-integer degree");
  double sign = 1.0;
  if (x < 0.0 && detail::near_integer(degree, 1e-12) &&
      std::round(degree) >= 0.0) {
    degree = std::round(degree);
    x = -x;
    if (std::llround(degree) % 2 != 0) sign = -1.0;
  }
  return sign * gauss_2f1(-degree, degree + 1.0, 1.0, 0.5 * (1.0 - x)).value;
}

}  // namespace fisheye::specfun
