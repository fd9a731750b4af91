#pragma once

// Physics core: the fish-eye medium model and the scalar-wave Green's
// functions. Two independent arithmetic routes are kept on purpose:
//
//   * the closed form directly in R^N coordinates, and
//   * the conformal route through the Green's function of the Helmholtz
//     operator on the hypersphere composed with the stereographic weights.
//
// Their agreement to ~1e-12 relative is the library's principal self-check.

#include <cmath>
#include <string>

#include "fisheye/error.hpp"
#include "fisheye/geometry.hpp"
#include "fisheye/specfun.hpp"

namespace fisheye::green {

using geometry::PointRN;
using specfun::kPi;

/// Medium definition: dimension N >= 2, fish-eye radius rho > 0, wave
/// degree nu (real). `pole_guard` is the distance from an integer at which
/// the derived sphere degree lambda = nu - N/2 + 1 counts as resonant.
struct FishEyeMedium {
  int dimension = 2;
  double radius = 1.0;
  double degree = 0.5;
  double pole_guard = 1e-8;
};

enum class Pathway { ClosedForm, ViaSphere };

inline const char* to_string(Pathway p) {
  return p == Pathway::ClosedForm ? "closed-form" : "via-sphere";
}

/// Scalar Green's-function value plus evaluation diagnostics.
struct GreenValue {
  double value = 0.0;
  Pathway pathway = Pathway::ClosedForm;
  specfun::SeriesDiagnostics diagnostics;
};

/// lambda = nu - N/2 + 1.
inline double degree_map(const FishEyeMedium& m) {
  return m.degree - 0.5 * static_cast<double>(m.dimension) + 1.0;
}

inline void validate(const FishEyeMedium& m) {
  if (m.dimension < 2)
    throw DomainError("InvalidArgument", "medium: dimension must be >= 2");
  if (!(m.radius > 0.0) || !std::isfinite(m.radius))
    throw DomainError("InvalidArgument", "medium: radius must be positive");
  if (!std::isfinite(m.degree))
    throw DomainError("InvalidArgument", "medium: degree must be finite");
  if (!(m.pole_guard >= 0.0))
    throw DomainError("InvalidArgument", "medium: pole guard must be >= 0");
  const double lam = degree_map(m);
  if (std::abs(lam - std::round(lam)) < m.pole_guard)
    throw DomainError("PoleProximity",
                      "medium: lambda = nu - N/2 + 1 = " + std::to_string(lam) +
                          " lies within the pole guard of an integer");
}

/// The medium potential 4 nu (nu+1) rho^2 / (r^2 + rho^2)^2.
inline double potential(const FishEyeMedium& m, const PointRN& r) {
  validate(m);
  const double den = r.norm_sq() + m.radius * m.radius;
  return 4.0 * m.degree * (m.degree + 1.0) * m.radius * m.radius / (den * den);
}

/// Effective local wavenumber k(r) = 2 sqrt(nu(nu+1)) rho / (r^2 + rho^2),
/// the square root of the potential.
inline double refractive_profile(const FishEyeMedium& m, const PointRN& r) {
  validate(m);
  const double s = m.degree * (m.degree + 1.0);
  if (s < 0.0)
    throw DomainError("NegativeSquare",
                      "refractive profile undefined: nu(nu+1) < 0");
  return 2.0 * std::sqrt(s) * m.radius / (r.norm_sq() + m.radius * m.radius);
}

/// Green's function of the Helmholtz operator on the unit hypersphere S^N:
/// pi * C_lambda^((N-1)/2)(-cos) / ((N-1) S_N sin(pi lambda)).
inline GreenValue sphere_green(double lambda, int n, double cos_angle,
                               double pole_guard = 1e-8) {
  if (n < 2)
    throw DomainError("InvalidArgument", "sphere_green: requires N >= 2");
  if (!std::isfinite(lambda) || !std::isfinite(cos_angle))
    throw DomainError("InvalidArgument", "sphere_green: non-finite input");
  if (std::abs(lambda - std::round(lambda)) < pole_guard)
    throw DomainError("PoleProximity",
                      "sphere_green: lambda within the pole guard of an "
                      "integer (discrete spectrum)");
  if (cos_angle >= 1.0 - 1e-12)
    throw DomainError("CoincidentPoints",
                      "sphere_green: coincident points (cos angle >= 1)");
  if (cos_angle < -1.0)
    throw DomainError("InvalidArgument", "sphere_green: cos angle < -1");
  const double alpha = 0.5 * (n - 1);
  auto c = specfun::gegenbauer_c({lambda, alpha}, -cos_angle);
  const double value = kPi * c.value /
                       ((n - 1) * geometry::sphere_area(n) *
                        specfun::detail::sin_pi(lambda));
  return {value, Pathway::ViaSphere, c.diagnostics};
}

namespace detail {
inline void check_pair(const FishEyeMedium& m, const PointRN& r,
                       const PointRN& rp) {
  validate(m);
  if (r.dim() != m.dimension || rp.dim() != m.dimension)
    throw DomainError("InvalidArgument",
                      "point dimension does not match the medium");
  if (geometry::dist(r, rp) < 1e-12 * m.radius)
    throw DomainError("CoincidentPoints",
                      "observation and source points coincide");
}
}  // namespace detail

/// Closed form of the fish-eye Green's function in R^N coordinates.
inline GreenValue fisheye_green(const FishEyeMedium& m, const PointRN& r,
                                const PointRN& rp) {
  detail::check_pair(m, r, rp);
  const int n = m.dimension;
  const double rho = m.radius;
  const double lam = degree_map(m);
  const double cosang = geometry::geodesic_cos(r, rp, rho);
  const double alpha = 0.5 * (n - 1);
  auto c = specfun::gegenbauer_c({lam, alpha}, -cosang);
  const double pref =
      std::pow(2.0, n - 4) * specfun::gamma(alpha) /
      (std::pow(kPi, alpha) *
       specfun::detail::sin_pi(0.5 * static_cast<double>(n) - m.degree));
  const double halfpow = 0.5 * static_cast<double>(n) - 1.0;
  const double value = pref * std::pow(rho, n - 2) * c.value /
                       (std::pow(r.norm_sq() + rho * rho, halfpow) *
                        std::pow(rp.norm_sq() + rho * rho, halfpow));
  return {value, Pathway::ClosedForm, c.diagnostics};
}

/// Same Green's function assembled through the sphere: conformal weights
/// (2/rho)^(N-2) sin^(N-2)(theta/2) sin^(N-2)(theta'/2) times the sphere
/// Helmholtz Green's function at the geodesic angle.
inline GreenValue fisheye_green_via_sphere(const FishEyeMedium& m,
                                           const PointRN& r,
                                           const PointRN& rp) {
  detail::check_pair(m, r, rp);
  const int n = m.dimension;
  const double rho = m.radius;
  const double lam = degree_map(m);
  const double cosang = geometry::geodesic_cos(r, rp, rho);
  auto sg = sphere_green(lam, n, cosang, m.pole_guard);
  const double weight = std::pow(2.0 / rho, n - 2) *
                        std::pow(geometry::conformal_factor(r, rho), n - 2) *
                        std::pow(geometry::conformal_factor(rp, rho), n - 2);
  return {weight * sg.value, Pathway::ViaSphere, sg.diagnostics};
}

}  // namespace fisheye::green
