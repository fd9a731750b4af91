#pragma once

// Independent numerical oracles for the closed forms: finite-difference
// residuals of the defining equations, delta-source flux normalization,
// an eigenfunction-series Green's function on the sphere with Wynn-epsilon
// acceleration, near-coincidence asymptotics, and the seeded check suites
// built from them. Everything here deliberately avoids the hypergeometric
// evaluation path wherever an independent route exists (integer-degree
// Gegenbauer values come from the three-term recurrence).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fisheye/error.hpp"
#include "fisheye/geometry.hpp"
#include "fisheye/green.hpp"
#include "fisheye/specfun.hpp"

namespace fisheye::verify {

using geometry::PointRN;
using specfun::kPi;

/// Structured outcome of one oracle run. `parameters` records the inputs,
/// the seed and the tolerance semantics so a failed check can be replayed.
struct VerifyReport {
  std::string check_name;
  std::map<std::string, std::string> parameters;
  std::vector<double> measured;
  std::vector<double> expected;
  double tolerance = 0.0;
  bool passed = false;
  double runtime_ms = 0.0;
};

/// Deterministic uniform generator (SplitMix64 core). Independent of any
/// library distribution so that reports are reproducible bit-identically
/// across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1 + 1e-300)) * std::cos(2.0 * kPi * u2);
  }

 private:
  // xorshift-multiplied SplitMix64; small, portable, reproducible
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

namespace detail {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - t0_)
        .count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point t0_ = clock::now();
};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Integer-degree Gegenbauer polynomial C_l^alpha(x) by the three-term
/// recurrence; independent of the hypergeometric representation.
inline double gegenbauer_recurrence(int l, double alpha, double x) {
  if (l < 0)
    throw DomainError("InvalidArgument", "gegenbauer_recurrence: l >= 0");
  if (l == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * alpha * x;
  for (int k = 2; k <= l; ++k) {
    const double next =
        (2.0 * (k - 1.0 + alpha) * x * curr - (k - 2.0 + 2.0 * alpha) * prev) /
        static_cast<double>(k);
    prev = curr;
    curr = next;
  }
  return curr;
}

namespace detail {

// Wynn epsilon table as a rolling counter-diagonal in extended precision.
// Exactly repeated partial sums are skipped (a plateau carries no new
// information and its reciprocal difference would poison the table). Two
// adjacent entries of an even column agreeing to rounding means the
// transformation has converged and that entry is the answer.
inline double wynn_epsilon_core(std::span<const long double> partial_sums) {
  if (partial_sums.empty())
    throw DomainError("InvalidArgument", "wynn_epsilon: empty sequence");
  constexpr long double eps10 =
      10.0L * std::numeric_limits<long double>::epsilon();
  constexpr long double huge = 1.0L / std::numeric_limits<long double>::min();
  std::vector<long double> diag;
  diag.reserve(partial_sums.size());
  long double best = partial_sums[0];
  for (long double s : partial_sums) {
    diag.push_back(s);
    long double prev = 0.0L;
    bool skipped = false;
    for (std::size_t j = diag.size() - 1; j > 0; --j) {
      const long double diff = diag[j] - diag[j - 1];
      const long double keep = diag[j - 1];
      const std::size_t column = diag.size() - 1 - j;
      if (j + 1 == diag.size() && diff == 0.0L) {
        diag.pop_back();  // exact plateau in the raw sums
        skipped = true;
        break;
      }
      if (column >= 2 && column % 2 == 0 &&
          std::abs(diff) <= eps10 * std::abs(diag[j]))
        return static_cast<double>(diag[j]);
      diag[j - 1] = (diff == 0.0L) ? huge : prev + 1.0L / diff;
      prev = keep;
    }
    if (!skipped) best = (diag.size() % 2 == 1) ? diag[0] : diag[1];
  }
  const double out = static_cast<double>(best);
  if (!std::isfinite(out))
    throw DomainError("AccelerationDiverged",
                      "wynn_epsilon: accelerated estimate is not finite");
  return out;
}

}  // namespace detail

/// Wynn epsilon acceleration of a sequence of partial sums; returns the
/// deepest even-column estimate.
inline double wynn_epsilon(std::span<const double> partial_sums) {
  std::vector<long double> sums(partial_sums.begin(), partial_sums.end());
  return detail::wynn_epsilon_core(sums);
}

/// Central-difference Laplacian of a scalar field at r (2N+1-point stencil).
template <typename Field>
double fd_laplacian(Field&& f, const PointRN& r, double h) {
  if (!(h > 0.0))
    throw DomainError("InvalidArgument", "fd_laplacian: h must be positive");
  const double g0 = f(r);
  double lap = 0.0;
  for (int i = 0; i < r.dim(); ++i) {
    PointRN p = r;
    PointRN q = r;
    p[i] += h;
    q[i] -= h;
    lap += (f(p) - 2.0 * g0 + f(q)) / (h * h);
  }
  return lap;
}

/// Residual of [Laplacian + potential] applied to the fish-eye Green's
/// function at an off-source point; O(h^2) for the true solution.
inline double fd_residual_rn(const green::FishEyeMedium& m,
                             const PointRN& source, const PointRN& r,
                             double h) {
  if (!(h > 0.0))
    throw DomainError("InvalidArgument", "fd_residual_rn: h must be positive");
  if (geometry::dist(r, source) < 10.0 * h)
    throw DomainError("TooCloseToSource",
                      "fd_residual_rn: point within 10 h of the source");
  auto field = [&](const PointRN& p) {
    return green::fisheye_green(m, p, source).value;
  };
  return fd_laplacian(field, r, h) + green::potential(m, r) * field(r);
}

/// Discrete Laplace-Beltrami operator on S^2 in (theta, phi) coordinates,
/// second-order central differences. Rejects points within 2h of a pole
/// where the coordinate chart degenerates.
template <typename Field>
double laplace_beltrami_s2(Field&& g, double theta, double phi, double h) {
  if (!(h > 0.0))
    throw DomainError("InvalidArgument",
                      "laplace_beltrami_s2: h must be positive");
  if (theta <= 2.0 * h || theta >= kPi - 2.0 * h)
    throw DomainError("PolarCap",
                      "laplace_beltrami_s2: theta within 2h of a pole");
  const double g0 = g(theta, phi);
  const double gtp = g(theta + h, phi);
  const double gtm = g(theta - h, phi);
  const double gpp = g(theta, phi + h);
  const double gpm = g(theta, phi - h);
  const double d2t = (gtp - 2.0 * g0 + gtm) / (h * h);
  const double dt = (gtp - gtm) / (2.0 * h);
  const double d2p = (gpp - 2.0 * g0 + gpm) / (h * h);
  const double st = std::sin(theta);
  return d2t + (std::cos(theta) / st) * dt + d2p / (st * st);
}

/// Residual of the S^2 Helmholtz equation at (theta, phi) for the sphere
/// Green's function with source (theta_p, phi_p): discrete Laplace-Beltrami
/// operator plus lambda(lambda+1) times the function.
inline double fd_residual_sphere2(double lambda, double theta, double phi,
                                  double theta_p, double phi_p, double h) {
  auto cos_gamma = [&](double t, double p) {
    double c = std::cos(t) * std::cos(theta_p) +
               std::sin(t) * std::sin(theta_p) * std::cos(p - phi_p);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
  };
  if (!(h > 0.0))
    throw DomainError("InvalidArgument",
                      "fd_residual_sphere2: h must be positive");
  if (std::acos(cos_gamma(theta, phi)) < 10.0 * h)
    throw DomainError("TooCloseToSource",
                      "fd_residual_sphere2: geodesic distance below 10 h");
  auto g = [&](double t, double p) {
    return green::sphere_green(lambda, 2, cos_gamma(t, p)).value;
  };
  return laplace_beltrami_s2(g, theta, phi, h) +
         lambda * (lambda + 1.0) * g(theta, phi);
}

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out[static_cast<std::size_t>(i)] = {-x, w};
    out[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  return out;
}

}  // namespace detail

// Flux of grad(field) through the eps-sphere around `source`. N = 2 uses an
// res_a-node trapezoid rule on the circle (spectrally accurate for periodic
// integrands); N = 3 an res_a x res_b Gauss-Legendre x uniform product rule.
// The normal derivative is a central difference of step eps * 1e-3.
template <typename Field>
double flux_quadrature(Field&& field, const PointRN& source, double eps,
                       int res_a, int res_b) {
  const int n = source.dim();
  const double delta = 1e-3 * eps;
  auto normal_derivative = [&](const std::vector<double>& dir) {
    std::vector<double> op(source.coords()), om(source.coords());
    for (std::size_t i = 0; i < dir.size(); ++i) {
      op[i] += (eps + delta) * dir[i];
      om[i] += (eps - delta) * dir[i];
    }
    return (field(PointRN(op)) - field(PointRN(om))) / (2.0 * delta);
  };
  double total = 0.0;
  if (n == 2) {
    for (int i = 0; i < res_a; ++i) {
      const double phi = 2.0 * kPi * i / res_a;
      total += normal_derivative({std::cos(phi), std::sin(phi)});
    }
    return total * (2.0 * kPi * eps / res_a);
  }
  const auto nodes = detail::gauss_legendre(res_a);
  for (const auto& [u, w] : nodes) {
    const double st = std::sqrt(1.0 - u * u);
    double ring = 0.0;
    for (int j = 0; j < res_b; ++j) {
      const double phi = 2.0 * kPi * j / res_b;
      ring += normal_derivative({st * std::cos(phi), st * std::sin(phi), u});
    }
    total += w * ring * (2.0 * kPi / res_b);
  }
  return total * eps * eps;
}

/// Outward flux of grad G through a sphere of radius eps around the source;
/// the divergence theorem sends it to 1 as eps -> 0. The quadrature is a
/// 256-node trapezoid rule on the circle for N = 2 and a 64 x 128
/// Gauss-Legendre x uniform product rule for N = 3; a half-resolution pass
/// guards against quadrature failure.
inline double flux_normalization(const green::FishEyeMedium& m,
                                 const PointRN& source, double eps,
                                 double tol = 1e-3) {
  green::validate(m);
  const int n = m.dimension;
  if (n != 2 && n != 3)
    throw DomainError("InvalidArgument",
                      "flux_normalization: implemented for N in {2, 3}");
  if (!(eps > 0.0))
    throw DomainError("InvalidArgument",
                      "flux_normalization: eps must be positive");
  auto field = [&](const PointRN& p) {
    return green::fisheye_green(m, p, source).value;
  };
  const double full = (n == 2) ? flux_quadrature(field, source, eps, 256, 0)
                               : flux_quadrature(field, source, eps, 64, 128);
  const double half = (n == 2) ? flux_quadrature(field, source, eps, 128, 0)
                               : flux_quadrature(field, source, eps, 32, 64);
  if (std::abs(full - half) > tol)
    throw DomainError("QuadratureFailure",
                      "flux_normalization: adjacent resolutions differ by " +
                          detail::fmt(std::abs(full - half)));
  return full;
}

/// Eigenfunction-series Green's function on S^N (N in {2,3}): partial sums
/// of (2L+N-1)/((N-1) S_N) C_L^((N-1)/2)(cos) / [lambda(lambda+N-1) -
/// L(L+N-1)], epsilon-accelerated over the trailing window. Returns the
/// accelerated value and a report comparing it with the closed form.
inline std::pair<double, VerifyReport> series_green_sphere(
    double lambda, int n, double cos_angle, std::size_t l_max,
    std::size_t window = 40) {
  detail::Stopwatch clock;
  if (n < 2)
    throw DomainError("InvalidArgument", "series_green_sphere: N >= 2");
  if (std::abs(lambda - std::round(lambda)) < 0.05)
    throw DomainError("PoleProximity",
                      "series_green_sphere: lambda must sit at distance >= "
                      "0.05 from the integers");
  if (l_max < 200)
    throw DomainError("InvalidArgument", "series_green_sphere: L_max >= 200");
  if (window < 4 || window > l_max)
    throw DomainError("InvalidArgument",
                      "series_green_sphere: window must lie in [4, L_max]");
  // the series and the Gegenbauer recurrence run in extended precision:
  // the tail terms are ~1/L_max and double-rounding noise in the partial
  // sums would set the acceleration floor well above the 1e-6 target
  const long double alpha = 0.5L * (n - 1);
  const long double area = geometry::sphere_area(n);
  const long double eigen =
      static_cast<long double>(lambda) * (lambda + n - 1.0L);
  // snap a right angle: with x exactly zero the odd-degree terms vanish
  // exactly and the plateau compression sees a regular stride, instead of
  // interleaved ~1e-17 noise terms that poison the epsilon table
  const long double x = (std::abs(cos_angle) < 1e-12) ? 0.0L : cos_angle;
  long double sum = 0.0L;
  long double c_prev = 1.0L;
  long double c_curr = 2.0L * alpha * x;
  std::vector<long double> tail;
  tail.reserve(window);
  for (std::size_t l = 0; l <= l_max; ++l) {
    long double cl;
    if (l == 0) {
      cl = 1.0L;
    } else if (l == 1) {
      cl = c_curr;
    } else {
      const long double ld = static_cast<long double>(l);
      const long double next = (2.0L * (ld - 1.0L + alpha) * x * c_curr -
                                (ld - 2.0L + 2.0L * alpha) * c_prev) /
                               ld;
      c_prev = c_curr;
      c_curr = next;
      cl = next;
    }
    const long double ld = static_cast<long double>(l);
    sum += (2.0L * ld + n - 1.0L) / ((n - 1.0L) * area) * cl /
           (eigen - ld * (ld + n - 1.0L));
    if (l + window > l_max) tail.push_back(sum);
  }
  const double accelerated = detail::wynn_epsilon_core(tail);
  long double spread = 0.0L;
  for (long double s : tail)
    spread = std::max(spread, std::abs(s - tail.back()));
  if (std::abs(accelerated - static_cast<double>(tail.back())) >
      10.0 * (static_cast<double>(spread) + 1.0))
    throw DomainError("AccelerationDiverged",
                      "series_green_sphere: accelerated estimate left the "
                      "partial-sum window");

  const double closed = green::sphere_green(lambda, n, cos_angle).value;
  VerifyReport rep;
  rep.check_name = "series-vs-closed-form";
  rep.parameters = {{"lambda", detail::fmt(lambda)},
                    {"N", std::to_string(n)},
                    {"cos_angle", detail::fmt(cos_angle)},
                    {"L_max", std::to_string(l_max)},
                    {"window", std::to_string(window)},
                    {"tolerance_kind", "absolute"}};
  rep.measured = {accelerated};
  rep.expected = {closed};
  rep.tolerance = 1e-6;
  rep.passed = std::abs(accelerated - closed) <= rep.tolerance;
  rep.runtime_ms = clock.ms();
  return {accelerated, rep};
}

/// Ratio of the fish-eye Green's function against the free-space Laplacian
/// Green's function with unit +delta source near coincidence. N = 3 compares
/// G(r'+s e, r') with -1/(4 pi s); N = 2 compares the increment
/// G(s) - G(2s) with -(ln 2)/(2 pi). Tends to 1 as s -> 0.
inline double near_coincidence_asymptote(const green::FishEyeMedium& m,
                                         const PointRN& source, double s,
                                         const PointRN& direction) {
  green::validate(m);
  const int n = m.dimension;
  if (n != 2 && n != 3)
    throw DomainError("InvalidArgument",
                      "near_coincidence_asymptote: N in {2, 3}");
  if (!(s > 0.0) || s > 1e-2 * m.radius)
    throw DomainError("InvalidArgument",
                      "near_coincidence_asymptote: need 0 < s <= 1e-2 rho");
  const double dn = direction.norm();
  if (!(dn > 0.0))
    throw DomainError("InvalidArgument",
                      "near_coincidence_asymptote: zero direction");
  const PointRN unit = (1.0 / dn) * direction;
  const double g1 =
      green::fisheye_green(m, source + s * unit, source).value;
  if (n == 3) return g1 / (-1.0 / (4.0 * kPi * s));
  const double g2 =
      green::fisheye_green(m, source + (2.0 * s) * unit, source).value;
  return (g1 - g2) / (-std::log(2.0) / (2.0 * kPi));
}

struct OrderFit {
  double order = 0.0;
  bool degenerate = false;  // residuals at the rounding floor; fit unreliable
};

/// Least-squares slope of log|residual| against log h.
inline OrderFit convergence_order(
    std::span<const std::pair<double, double>> residuals) {
  if (residuals.size() < 3)
    throw DomainError("InvalidArgument",
                      "convergence_order: need at least 3 samples");
  for (std::size_t i = 1; i < residuals.size(); ++i)
    if (!(residuals[i].first < residuals[i - 1].first))
      throw DomainError("InvalidArgument",
                        "convergence_order: h values must strictly decrease");
  OrderFit fit;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto count = static_cast<double>(residuals.size());
  for (const auto& [h, res] : residuals) {
    const double mag = std::abs(res);
    if (mag < 1e-14) fit.degenerate = true;
    const double x = std::log(h);
    const double y = std::log(std::max(mag, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.order = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return fit;
}

// ---------------------------------------------------------------------------
// Seeded check suites. Each suite returns VerifyReport records whose measured
// values are bit-identical for a fixed seed.
// ---------------------------------------------------------------------------

namespace detail {

inline double sample_offint_lambda(Rng& rng, int lo = -2, int hi = 5) {
  return rng.uniform_int(lo, hi) + rng.uniform(0.05, 0.95);
}

inline PointRN sample_point(Rng& rng, int n, double scale) {
  std::vector<double> c(static_cast<std::size_t>(n));
  for (double& v : c) v = rng.uniform(-scale, scale);
  return PointRN(std::move(c));
}

inline green::FishEyeMedium sample_medium(Rng& rng, int n, double rho_lo,
                                          double rho_hi) {
  const double rho = rng.uniform(rho_lo, rho_hi);
  const double lam = sample_offint_lambda(rng);
  return {n, rho, lam + 0.5 * n - 1.0, 1e-8};
}

}  // namespace detail

inline std::vector<VerifyReport> suite_pathways(std::uint64_t seed,
                                                std::size_t configs = 1000) {
  detail::Stopwatch clock;
  Rng rng(seed);
  static constexpr int dims[] = {2, 3, 4, 5};
  double worst = 0.0;
  for (std::size_t i = 0; i < configs; ++i) {
    const int n = dims[i % 4];
    auto m = detail::sample_medium(rng, n, 0.1, 10.0);
    PointRN r = detail::sample_point(rng, n, 2.0 * m.radius);
    PointRN rp = detail::sample_point(rng, n, 2.0 * m.radius);
    while (geometry::dist(r, rp) < 1e-6 * m.radius)
      rp = detail::sample_point(rng, n, 2.0 * m.radius);
    const double a = green::fisheye_green(m, r, rp).value;
    const double b = green::fisheye_green_via_sphere(m, r, rp).value;
    const double rel =
        std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    worst = std::max(worst, rel);
  }
  VerifyReport rep;
  rep.check_name = "pathway-equivalence";
  rep.parameters = {{"seed", std::to_string(seed)},
                    {"configs", std::to_string(configs)},
                    {"dimensions", "2,3,4,5"},
                    {"tolerance_kind", "relative"}};
  rep.measured = {worst};
  rep.expected = {0.0};
  rep.tolerance = 1e-10;
  rep.passed = worst <= rep.tolerance;
  rep.runtime_ms = clock.ms();
  return {rep};
}

inline std::vector<VerifyReport> suite_fd_rn(std::uint64_t seed,
                                             std::size_t points_per_dim = 10) {
  Rng rng(seed);
  std::vector<VerifyReport> out;
  for (int n : {2, 3}) {
    detail::Stopwatch clock;
    std::vector<double> orders;
    bool all_in_range = true;
    for (std::size_t j = 0; j < points_per_dim; ++j) {
      auto m = detail::sample_medium(rng, n, 0.5, 2.0);
      const PointRN source = detail::sample_point(rng, n, 0.8 * m.radius);
      PointRN r = source;
      while (geometry::dist(r, source) < 0.3 * m.radius ||
             geometry::dist(r, source) > 1.2 * m.radius)
        r = detail::sample_point(rng, n, 1.5 * m.radius);
      std::vector<std::pair<double, double>> samples;
      for (double hf : {4e-3, 2e-3, 1e-3}) {
        const double h = hf * m.radius;
        samples.emplace_back(h, fd_residual_rn(m, source, r, h));
      }
      const auto fit = convergence_order(samples);
      orders.push_back(fit.order);
      if (fit.degenerate || fit.order < 1.8 || fit.order > 2.2)
        all_in_range = false;
    }
    VerifyReport rep;
    rep.check_name = "fd-residual-rn-order-N" + std::to_string(n);
    rep.parameters = {{"seed", std::to_string(seed)},
                      {"N", std::to_string(n)},
                      {"points", std::to_string(points_per_dim)},
                      {"h_over_rho", "4e-3,2e-3,1e-3"},
                      {"tolerance_kind", "absolute"}};
    rep.measured = orders;
    rep.expected = {2.0};
    rep.tolerance = 0.2;
    rep.passed = all_in_range;
    rep.runtime_ms = clock.ms();
    out.push_back(std::move(rep));
  }
  return out;
}

inline std::vector<VerifyReport> suite_fd_sphere(std::uint64_t seed,
                                                 std::size_t points = 10) {
  detail::Stopwatch clock;
  Rng rng(seed);
  std::vector<double> orders;
  bool all_in_range = true;
  for (std::size_t j = 0; j < points; ++j) {
    const double lambda = detail::sample_offint_lambda(rng, 0, 3);
    const double theta_p = rng.uniform(0.6, kPi - 0.6);
    const double phi_p = rng.uniform(0.0, 2.0 * kPi);
    double theta = 0.0, phi = 0.0;
    for (;;) {
      theta = rng.uniform(0.4, kPi - 0.4);
      phi = rng.uniform(0.0, 2.0 * kPi);
      const double cg = std::cos(theta) * std::cos(theta_p) +
                        std::sin(theta) * std::sin(theta_p) *
                            std::cos(phi - phi_p);
      const double gd = std::acos(std::min(1.0, std::max(-1.0, cg)));
      if (gd > 0.3 && gd < kPi - 0.3) break;
    }
    std::vector<std::pair<double, double>> samples;
    for (double h : {4e-3, 2e-3, 1e-3})
      samples.emplace_back(h,
                           fd_residual_sphere2(lambda, theta, phi, theta_p,
                                               phi_p, h));
    const auto fit = convergence_order(samples);
    orders.push_back(fit.order);
    if (fit.degenerate || fit.order < 1.8 || fit.order > 2.2)
      all_in_range = false;
  }
  VerifyReport rep;
  rep.check_name = "fd-residual-sphere2-order";
  rep.parameters = {{"seed", std::to_string(seed)},
                    {"points", std::to_string(points)},
                    {"h", "4e-3,2e-3,1e-3"},
                    {"tolerance_kind", "absolute"}};
  rep.measured = orders;
  rep.expected = {2.0};
  rep.tolerance = 0.2;
  rep.passed = all_in_range;
  rep.runtime_ms = clock.ms();
  return {rep};
}

inline std::vector<VerifyReport> suite_flux(std::uint64_t seed,
                                            std::size_t configs_per_dim = 10) {
  Rng rng(seed);
  std::vector<VerifyReport> out;
  for (int n : {2, 3}) {
    detail::Stopwatch clock;
    std::vector<double> fluxes;
    bool all_ok = true;
    for (std::size_t j = 0; j < configs_per_dim; ++j) {
      auto m = detail::sample_medium(rng, n, 0.5, 2.0);
      const PointRN source = detail::sample_point(rng, n, 0.8 * m.radius);
      const double flux =
          flux_normalization(m, source, 1e-3 * m.radius, 1e-3);
      fluxes.push_back(flux);
      if (std::abs(flux - 1.0) > 1e-3) all_ok = false;
    }
    VerifyReport rep;
    rep.check_name = "flux-normalization-N" + std::to_string(n);
    rep.parameters = {{"seed", std::to_string(seed)},
                      {"N", std::to_string(n)},
                      {"configs", std::to_string(configs_per_dim)},
                      {"eps_over_rho", "1e-3"},
                      {"tolerance_kind", "absolute"}};
    rep.measured = fluxes;
    rep.expected = {1.0};
    rep.tolerance = 1e-3;
    rep.passed = all_ok;
    rep.runtime_ms = clock.ms();
    out.push_back(std::move(rep));
  }
  return out;
}

inline std::vector<VerifyReport> suite_series(std::uint64_t seed) {
  std::vector<VerifyReport> out;
  static constexpr double lambdas[] = {0.3, 0.5, 1.75, 2.6};
  const double gammas[] = {kPi / 6.0, kPi / 2.0, 2.0 * kPi / 3.0,
                           5.0 * kPi / 6.0};
  for (int n : {2, 3}) {
    detail::Stopwatch clock;
    double worst = 0.0;
    bool all_ok = true;
    for (double lambda : lambdas) {
      for (double g : gammas) {
        auto [acc, rep] =
            series_green_sphere(lambda, n, std::cos(g), 2000, 40);
        const double dev = std::abs(acc - rep.expected[0]);
        worst = std::max(worst, dev);
        if (!rep.passed) all_ok = false;
      }
    }
    VerifyReport rep;
    rep.check_name = "series-oracle-N" + std::to_string(n);
    rep.parameters = {{"seed", std::to_string(seed)},
                      {"N", std::to_string(n)},
                      {"lambdas", "0.3,0.5,1.75,2.6"},
                      {"gammas", "pi/6,pi/2,2pi/3,5pi/6"},
                      {"L_max", "2000"},
                      {"tolerance_kind", "absolute"}};
    rep.measured = {worst};
    rep.expected = {0.0};
    rep.tolerance = 1e-6;
    rep.passed = all_ok && worst <= rep.tolerance;
    rep.runtime_ms = clock.ms();
    out.push_back(std::move(rep));
  }
  return out;
}

inline std::vector<VerifyReport> suite_asymptote(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VerifyReport> out;

  {
    detail::Stopwatch clock;
    auto m = detail::sample_medium(rng, 3, 0.5, 2.0);
    const PointRN source = detail::sample_point(rng, 3, 0.5 * m.radius);
    const PointRN e1{1.0, 0.0, 0.0};
    const double ratio =
        near_coincidence_asymptote(m, source, 1e-4 * m.radius, e1);
    VerifyReport rep;
    rep.check_name = "near-coincidence-ratio-N3";
    rep.parameters = {{"seed", std::to_string(seed)},
                      {"s_over_rho", "1e-4"},
                      {"tolerance_kind", "relative"}};
    rep.measured = {ratio};
    rep.expected = {1.0};
    rep.tolerance = 1e-2;
    rep.passed = std::abs(ratio - 1.0) <= rep.tolerance;
    rep.runtime_ms = clock.ms();
    out.push_back(std::move(rep));
  }
  {
    detail::Stopwatch clock;
    auto m = detail::sample_medium(rng, 2, 0.5, 2.0);
    const PointRN source = detail::sample_point(rng, 2, 0.5 * m.radius);
    const PointRN e{0.6, 0.8};
    const double ratio =
        near_coincidence_asymptote(m, source, 1e-4 * m.radius, e);
    VerifyReport rep;
    rep.check_name = "near-coincidence-log-step-N2";
    rep.parameters = {{"seed", std::to_string(seed)},
                      {"s_over_rho", "1e-4"},
                      {"tolerance_kind", "relative"}};
    rep.measured = {ratio};
    rep.expected = {1.0};
    rep.tolerance = 1e-2;
    rep.passed = std::abs(ratio - 1.0) <= rep.tolerance;
    rep.runtime_ms = clock.ms();
    out.push_back(std::move(rep));
  }
  {
    detail::Stopwatch clock;
    auto m = detail::sample_medium(rng, 3, 0.5, 2.0);
    const PointRN source = detail::sample_point(rng, 3, 0.5 * m.radius);
    const double r1 = near_coincidence_asymptote(m, source, 1e-4 * m.radius,
                                                 PointRN{1.0, 0.0, 0.0});
    const double r2 = near_coincidence_asymptote(
        m, source, 1e-4 * m.radius, PointRN{0.0, 0.6, 0.8});
    VerifyReport rep;
    rep.check_name = "near-coincidence-isotropy-N3";
    rep.parameters = {{"seed", std::to_string(seed)},
                      {"s_over_rho", "1e-4"},
                      {"tolerance_kind", "absolute"}};
    rep.measured = {std::abs(r1 - r2)};
    rep.expected = {0.0};
    rep.tolerance = 1e-3;
    rep.passed = std::abs(r1 - r2) <= rep.tolerance;
    rep.runtime_ms = clock.ms();
    out.push_back(std::move(rep));
  }
  return out;
}

/// Run a named suite: one of pathways, fd-rn, fd-sphere, flux, series,
/// asymptote, all.
inline std::vector<VerifyReport> run_suite(std::string_view name,
                                           std::uint64_t seed) {
  if (name == "pathways") return suite_pathways(seed);
  if (name == "fd-rn") return suite_fd_rn(seed);
  if (name == "fd-sphere") return suite_fd_sphere(seed);
  if (name == "flux") return suite_flux(seed);
  if (name == "series") return suite_series(seed);
  if (name == "asymptote") return suite_asymptote(seed);
  if (name == "all") {
    std::vector<VerifyReport> out;
    for (const char* s :
         {"pathways", "fd-rn", "fd-sphere", "flux", "series", "asymptote"}) {
      auto part = run_suite(s, seed);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return out;
  }
  throw DomainError("InvalidArgument",
                    "unknown verification suite: " + std::string(name));
}

}  // namespace fisheye::verify
