#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fisheye/geometry.hpp"
#include "fisheye/verify.hpp"

using namespace fisheye;
using geometry::PointRN;
using specfun::kPi;

namespace {

// Forward stereographic projection from the pole, used here as an
// independent check of embed(): r = rho * e_perp / (rho - e_axis).
PointRN project_back(const geometry::SpherePoint& sp, double rho) {
  const auto& e = sp.embedding;
  const double axis = e.back();
  std::vector<double> c(e.begin(), e.end() - 1);
  for (double& v : c) v *= rho / (rho - axis);
  return PointRN(std::move(c));
}

PointRN random_point(verify::Rng& rng, int n, double scale) {
  std::vector<double> c(static_cast<std::size_t>(n));
  for (double& v : c) v = rng.uniform(-scale, scale);
  return PointRN(std::move(c));
}

}  // namespace

TEST_CASE("polar_angle_of: anchors") {
  const PointRN unit{1.0, 0.0};
  CHECK(geometry::polar_angle_of(unit, 1.0) ==
        Catch::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(geometry::polar_angle_of(PointRN::zero(2), 1.0) ==
        Catch::Approx(kPi).epsilon(1e-14));
  const PointRN far{1e8, 0.0};
  CHECK(geometry::polar_angle_of(far, 1.0) ==
        Catch::Approx(2e-8).epsilon(1e-6));
  CHECK_THROWS_AS(geometry::polar_angle_of(unit, 0.0), DomainError);
}

TEST_CASE("embed: anchors and round trip") {
  const auto equator = geometry::embed(PointRN{1.0, 0.0}, 1.0);
  CHECK(equator.polar_angle == Catch::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(equator.embedding.back() == Catch::Approx(0.0).margin(1e-15));

  const auto antipode = geometry::embed(PointRN::zero(2), 1.0);
  CHECK(antipode.polar_angle == Catch::Approx(kPi).epsilon(1e-14));
  CHECK(antipode.embedding.back() == Catch::Approx(-1.0).epsilon(1e-14));

  verify::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const double rho = rng.uniform(0.2, 5.0);
    const PointRN r = random_point(rng, n, 3.0 * rho);
    const auto sp = geometry::embed(r, rho);

    // invariants of the type
    double norm_sq = 0.0;
    for (double v : sp.embedding) norm_sq += v * v;
    REQUIRE(std::abs(std::sqrt(norm_sq) - rho) <= 1e-12 * rho);
    REQUIRE(std::abs(std::cos(sp.polar_angle) - sp.embedding.back() / rho) <=
            1e-12);

    // round trip through the independent forward projection
    const PointRN back = project_back(sp, rho);
    REQUIRE(geometry::dist(back, r) <= 1e-12 * (1.0 + r.norm()));
  }
}

TEST_CASE("geodesic_cos: anchors") {
  const double rho = 1.0;
  const PointRN a{1.0, 0.0};
  const PointRN b{0.0, 1.0};
  CHECK(geometry::geodesic_cos(a, a, rho) == 1.0);
  CHECK(geometry::geodesic_cos(a, b, rho) == Catch::Approx(0.0).margin(1e-15));
  // inversion image through the fish-eye sphere is antipodal
  const PointRN p{0.3, -0.4};
  const double p2 = p.norm_sq();
  const PointRN q = (-rho * rho / p2) * p;
  CHECK(geometry::geodesic_cos(p, q, rho) == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("geodesic_cos: embedding dot product agreement") {
  verify::Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const double rho = rng.uniform(0.2, 5.0);
    const PointRN r = random_point(rng, n, 2.5 * rho);
    const PointRN rp = random_point(rng, n, 2.5 * rho);
    const auto er = geometry::embed(r, rho);
    const auto erp = geometry::embed(rp, rho);
    double d = 0.0;
    for (std::size_t k = 0; k < er.embedding.size(); ++k)
      d += er.embedding[k] * erp.embedding[k];
    d /= rho * rho;
    const double g = geometry::geodesic_cos(r, rp, rho);
    CAPTURE(n, rho, d, g);
    REQUIRE(std::abs(d - g) <= 1e-12);
  }
}

TEST_CASE("geodesic_cos: polar-angle composition agreement") {
  // cos gamma = cos t cos t' + sin t sin t' cos(planar angle)
  verify::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const double rho = rng.uniform(0.2, 5.0);
    PointRN r = random_point(rng, n, 2.5 * rho);
    PointRN rp = random_point(rng, n, 2.5 * rho);
    if (r.norm() < 1e-3 || rp.norm() < 1e-3) continue;
    const double t = geometry::polar_angle_of(r, rho);
    const double tp = geometry::polar_angle_of(rp, rho);
    const double planar = geometry::dot(r, rp) / (r.norm() * rp.norm());
    const double composed =
        std::cos(t) * std::cos(tp) + std::sin(t) * std::sin(tp) * planar;
    const double direct = geometry::geodesic_cos(r, rp, rho);
    REQUIRE(std::abs(composed - direct) <= 1e-12);
  }
}

TEST_CASE("geodesic_cos: symmetry and scale covariance") {
  verify::Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const double rho = rng.uniform(0.2, 5.0);
    const PointRN r = random_point(rng, n, 2.0 * rho);
    const PointRN rp = random_point(rng, n, 2.0 * rho);
    REQUIRE(geometry::geodesic_cos(r, rp, rho) ==
            geometry::geodesic_cos(rp, r, rho));
    const double base = geometry::geodesic_cos(r, rp, rho);
    for (double s : {1e-3, 1.0, 1e3}) {
      REQUIRE(std::abs(geometry::geodesic_cos(s * r, s * rp, s * rho) - base) <=
              1e-14);
    }
  }
}

TEST_CASE("projection trig identities") {
  verify::Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    const double rho = rng.uniform(0.2, 5.0);
    const PointRN r = random_point(rng, 3, 3.0 * rho);
    const double r2 = r.norm_sq();
    const double den = r2 + rho * rho;
    const double c = (r2 - rho * rho) / den;
    const double s = 2.0 * rho * r.norm() / den;
    REQUIRE(std::abs(c * c + s * s - 1.0) <= 1e-14);
    // conformal factor is sin of half the polar angle
    const double t = geometry::polar_angle_of(r, rho);
    REQUIRE(std::abs(geometry::conformal_factor(r, rho) - std::sin(0.5 * t)) <=
            1e-14);
  }
}

TEST_CASE("sphere_area: anchors") {
  CHECK(geometry::sphere_area(1) == Catch::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(geometry::sphere_area(2) == Catch::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(geometry::sphere_area(3) ==
        Catch::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(geometry::sphere_area(4) ==
        Catch::Approx(8.0 * kPi * kPi / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(geometry::sphere_area(0), DomainError);
}

TEST_CASE("conformal_factor: anchors") {
  CHECK(geometry::conformal_factor(PointRN::zero(2), 1.0) == 1.0);
  CHECK(geometry::conformal_factor(PointRN{1.0, 0.0}, 1.0) ==
        Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  const double s3 = std::sqrt(3.0);
  CHECK(geometry::conformal_factor(PointRN{s3, 0.0}, 1.0) ==
        Catch::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("PointRN: validation") {
  CHECK_THROWS_AS(PointRN(std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(PointRN({1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(geometry::dot(PointRN{1.0, 2.0}, PointRN{1.0, 2.0, 3.0}),
                  DomainError);
}
