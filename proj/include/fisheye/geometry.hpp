#pragma once

// Stereographic-projection dictionary between R^N and the radius-rho
// hypersphere S^N: polar angles, embeddings, geodesic cosines, conformal
// factors and hypersphere areas. The projection pole sits at polar angle 0;
// r -> infinity maps to the pole and r = 0 to its antipode.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "fisheye/error.hpp"
#include "fisheye/specfun.hpp"

namespace fisheye::geometry {

using specfun::kPi;

/// Point of R^N, N >= 2, Cartesian coordinates.
class PointRN {
 public:
  explicit PointRN(std::vector<double> coords) : c_(std::move(coords)) {
    validate();
  }
  PointRN(std::initializer_list<double> coords) : c_(coords) { validate(); }

  static PointRN zero(int n) {
    return PointRN(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  }

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return c_; }

  double norm_sq() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

 private:
  void validate() const {
    if (c_.size() < 2)
      throw DomainError("InvalidArgument", "PointRN: need N >= 2 coordinates");
    for (double v : c_)
      if (!std::isfinite(v))
        throw DomainError("InvalidArgument", "PointRN: non-finite coordinate");
  }
  std::vector<double> c_;
};

namespace detail {
inline void require_same_dim(const PointRN& a, const PointRN& b) {
  if (a.dim() != b.dim())
    throw DomainError("InvalidArgument", "points have different dimensions");
}
inline void require_radius(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw DomainError("InvalidArgument", "radius must be positive and finite");
}
}  // namespace detail

inline PointRN operator+(const PointRN& a, const PointRN& b) {
  detail::require_same_dim(a, b);
  std::vector<double> c(a.coords());
  for (int i = 0; i < a.dim(); ++i) c[static_cast<std::size_t>(i)] += b[i];
  return PointRN(std::move(c));
}

inline PointRN operator-(const PointRN& a, const PointRN& b) {
  detail::require_same_dim(a, b);
  std::vector<double> c(a.coords());
  for (int i = 0; i < a.dim(); ++i) c[static_cast<std::size_t>(i)] -= b[i];
  return PointRN(std::move(c));
}

inline PointRN operator*(double s, const PointRN& p) {
  std::vector<double> c(p.coords());
  for (double& v : c) v *= s;
  return PointRN(std::move(c));
}

inline double dot(const PointRN& a, const PointRN& b) {
  detail::require_same_dim(a, b);
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double dist_sq(const PointRN& a, const PointRN& b) {
  detail::require_same_dim(a, b);
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(const PointRN& a, const PointRN& b) {
  return std::sqrt(dist_sq(a, b));
}

/// Point on the radius-rho hypersphere S^N embedded in R^{N+1}. The last
/// embedding coordinate is the projection-pole axis (pole at +rho).
struct SpherePoint {
  std::vector<double> embedding;
  double polar_angle = 0.0;  // angle from the pole axis, in [0, pi]
};

/// theta_N = 2 arccot(|r|/rho), the polar angle of the inverse
/// stereographic image of r.
inline double polar_angle_of(const PointRN& r, double rho) {
  detail::require_radius(rho);
  return 2.0 * std::atan2(rho, r.norm());
}

/// Inverse stereographic projection of r onto S^N_rho. r = 0 maps to the
/// antipode of the projection pole; the equatorial direction there is
/// immaterial since sin(theta) vanishes.
inline SpherePoint embed(const PointRN& r, double rho) {
  detail::require_radius(rho);
  const double r2 = r.norm_sq();
  const double rn = std::sqrt(r2);
  const double den = r2 + rho * rho;
  const double cos_t = (r2 - rho * rho) / den;
  const double sin_t = 2.0 * rho * rn / den;
  std::vector<double> e(static_cast<std::size_t>(r.dim()) + 1, 0.0);
  if (rn > 0.0) {
    for (int i = 0; i < r.dim(); ++i)
      e[static_cast<std::size_t>(i)] = rho * sin_t * (r[i] / rn);
  }
  e.back() = rho * cos_t;
  return {std::move(e), std::atan2(sin_t, cos_t)};
}

/// Cosine of the geodesic angle between the spherical images of r and r':
/// 1 - 2 rho^2 (r-r')^2 / ((r^2+rho^2)(r'^2+rho^2)), clamped to [-1, 1]
/// to absorb endpoint rounding.
inline double geodesic_cos(const PointRN& r, const PointRN& rp, double rho) {
  detail::require_radius(rho);
  detail::require_same_dim(r, rp);
  const double rho2 = rho * rho;
  const double v = 1.0 - 2.0 * rho2 * dist_sq(r, rp) /
                             ((r.norm_sq() + rho2) * (rp.norm_sq() + rho2));
  if (v > 1.0) return 1.0;
  if (v < -1.0) return -1.0;
  return v;
}

/// Area of the unit N-sphere, 2 pi^((N+1)/2) / Gamma((N+1)/2).
inline double sphere_area(int n) {
  if (n < 1)
    throw DomainError("InvalidArgument", "sphere_area: requires N >= 1");
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / specfun::gamma(0.5 * (n + 1));
}

/// sin(theta_N/2) = rho / sqrt(r^2 + rho^2), the plane-to-sphere conformal
/// weight.
inline double conformal_factor(const PointRN& r, double rho) {
  detail::require_radius(rho);
  return rho / std::sqrt(r.norm_sq() + rho * rho);
}

}  // namespace fisheye::geometry
