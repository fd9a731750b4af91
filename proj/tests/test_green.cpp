#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fisheye/green.hpp"
#include "fisheye/verify.hpp"

using namespace fisheye;
using geometry::PointRN;
using green::FishEyeMedium;
using specfun::kPi;

namespace {

PointRN random_point(verify::Rng& rng, int n, double scale) {
  std::vector<double> c(static_cast<std::size_t>(n));
  for (double& v : c) v = rng.uniform(-scale, scale);
  return PointRN(std::move(c));
}

// Random rotation via Gram-Schmidt on a Gaussian matrix.
std::vector<std::vector<double>> random_rotation(verify::Rng& rng, int n) {
  std::vector<std::vector<double>> q(
      static_cast<std::size_t>(n),
      std::vector<double>(static_cast<std::size_t>(n)));
  for (auto& row : q)
    for (double& v : row) v = rng.normal();
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < q.size(); ++k) d += q[i][k] * q[j][k];
      for (std::size_t k = 0; k < q.size(); ++k) q[i][k] -= d * q[j][k];
    }
    double norm = 0.0;
    for (double v : q[i]) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : q[i]) v /= norm;
  }
  return q;
}

PointRN rotate_point(const std::vector<std::vector<double>>& q, const PointRN& p) {
  std::vector<double> out(q.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = 0; k < q.size(); ++k) out[i] += q[i][k] * p[(int)k];
  return PointRN(std::move(out));
}

FishEyeMedium medium_from_lambda(int n, double rho, double lambda) {
  return {n, rho, lambda + 0.5 * n - 1.0, 1e-8};
}

}  // namespace

TEST_CASE("degree_map") {
  CHECK(green::degree_map({2, 1.0, 0.5, 1e-8}) == Catch::Approx(0.5));
  CHECK(green::degree_map({4, 1.0, 1.0, 1e-8}) == Catch::Approx(0.0));
  CHECK(green::degree_map({3, 1.0, 2.25, 1e-8}) == Catch::Approx(1.75));
}

TEST_CASE("potential: anchors") {
  const FishEyeMedium m{3, 2.0, 1.3, 1e-8};
  const double nu = m.degree;
  CHECK(green::potential(m, PointRN::zero(3)) ==
        Catch::Approx(4.0 * nu * (nu + 1.0) / (m.radius * m.radius))
            .epsilon(1e-14));
  CHECK(green::potential(m, PointRN{2.0, 0.0, 0.0}) ==
        Catch::Approx(nu * (nu + 1.0) / (m.radius * m.radius)).epsilon(1e-14));
  const FishEyeMedium free_medium{3, 2.0, 0.0, 0.0};
  CHECK(green::potential(free_medium, PointRN{0.3, 0.1, -0.2}) == 0.0);
}

TEST_CASE("refractive_profile: anchors and guard") {
  const FishEyeMedium m{2, 1.5, 0.8, 1e-8};
  const double k0 = 2.0 * std::sqrt(0.8 * 1.8) / 1.5;
  CHECK(green::refractive_profile(m, PointRN::zero(2)) ==
        Catch::Approx(k0).epsilon(1e-14));
  CHECK(green::refractive_profile(m, PointRN{1.5, 0.0}) ==
        Catch::Approx(0.5 * k0).epsilon(1e-14));
  CHECK(green::refractive_profile(m, PointRN{1e8, 0.0}) ==
        Catch::Approx(0.0).margin(1e-14));
  const FishEyeMedium bad{2, 1.0, -0.5 + 1e-3, 1e-8};
  CHECK_THROWS_AS(green::refractive_profile(bad, PointRN::zero(2)),
                  DomainError);
}

TEST_CASE("sphere_green: N=2 reduction to the Legendre function") {
  // G = P_lambda(-cos gamma) / (4 sin(pi lambda)); at lambda = 1/2,
  // gamma = pi/2 this is P_{1/2}(0)/4
  const auto g = green::sphere_green(0.5, 2, 0.0);
  const double want = specfun::legendre_p(0.5, 0.0) / 4.0;
  CHECK(g.value == Catch::Approx(want).epsilon(1e-12));
  CHECK(want == Catch::Approx(0.53935260118838 / 4.0).epsilon(1e-10));
}

TEST_CASE("sphere_green: antipodal endpoint identity") {
  for (int n : {2, 3, 4, 5}) {
    for (double lam : {0.3, 0.7, 1.4, 2.6}) {
      const double want =
          kPi * specfun::gamma(lam + n - 1.0) /
          ((n - 1.0) * geometry::sphere_area(n) *
           specfun::detail::sin_pi(lam) * specfun::gamma(n - 1.0) *
           specfun::gamma(lam + 1.0));
      const auto got = green::sphere_green(lam, n, -1.0);
      CAPTURE(n, lam);
      REQUIRE(got.value == Catch::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("sphere_green: N=3 closed form at right angle") {
  // C_lambda^1(cos t) = sin((lambda+1) t)/sin t with t = pi/2 here
  const auto g = green::sphere_green(0.5, 3, 0.0);
  CHECK(g.value == Catch::Approx(std::sqrt(2.0) / (8.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("sphere_green: guards") {
  CHECK_THROWS_AS(green::sphere_green(1.0, 2, 0.0), DomainError);
  CHECK_THROWS_AS(green::sphere_green(2.0 + 1e-9, 2, 0.0), DomainError);
  CHECK_THROWS_AS(green::sphere_green(0.5, 2, 1.0), DomainError);
  try {
    green::sphere_green(-1.0 + 1e-10, 3, 0.2);
    FAIL("expected PoleProximity");
  } catch (const DomainError& e) {
    CHECK(e.guard() == "PoleProximity");
  }
  try {
    green::sphere_green(0.5, 3, 1.0 - 1e-14);
    FAIL("expected CoincidentPoints");
  } catch (const DomainError& e) {
    CHECK(e.guard() == "CoincidentPoints");
  }
}

TEST_CASE("fisheye_green: N=2 anchor value") {
  const FishEyeMedium m{2, 1.0, 0.5, 1e-8};
  const auto g = green::fisheye_green(m, PointRN{1.0, 0.0}, PointRN{0.0, 1.0});
  const double want = specfun::legendre_p(0.5, 0.0) / 4.0;
  CHECK(g.value == Catch::Approx(want).epsilon(1e-12));
  CHECK(g.pathway == green::Pathway::ClosedForm);
}

TEST_CASE("fisheye_green: guards") {
  const FishEyeMedium m{2, 1.0, 0.5, 1e-8};
  const PointRN p{0.3, 0.4};
  CHECK_THROWS_AS(green::fisheye_green(m, p, p), DomainError);
  try {
    green::fisheye_green(m, p, p);
    FAIL("expected CoincidentPoints");
  } catch (const DomainError& e) {
    CHECK(e.guard() == "CoincidentPoints");
  }
  const FishEyeMedium resonant{2, 1.0, 1.0, 1e-8};  // lambda = 1
  CHECK_THROWS_AS(green::fisheye_green(resonant, p, PointRN{1.0, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(
      green::fisheye_green(m, PointRN{1.0, 0.0, 0.0}, PointRN{0.0, 1.0, 0.0}),
      DomainError);
}

TEST_CASE("pathway equivalence on random configurations") {
  verify::Rng rng(314159);
  for (int i = 0; i < 400; ++i) {
    const int n = 2 + i % 4;
    const double rho = rng.uniform(0.1, 10.0);
    const double lam = rng.uniform_int(-2, 5) + rng.uniform(0.05, 0.95);
    const auto m = medium_from_lambda(n, rho, lam);
    PointRN r = random_point(rng, n, 2.0 * rho);
    PointRN rp = random_point(rng, n, 2.0 * rho);
    while (geometry::dist(r, rp) < 1e-6 * rho)
      rp = random_point(rng, n, 2.0 * rho);
    const auto a = green::fisheye_green(m, r, rp);
    const auto b = green::fisheye_green_via_sphere(m, r, rp);
    const double rel = std::abs(a.value - b.value) /
                       std::max({std::abs(a.value), std::abs(b.value), 1e-300});
    CAPTURE(n, rho, lam, a.value, b.value);
    REQUIRE(rel <= 1e-10);
    REQUIRE(b.pathway == green::Pathway::ViaSphere);
  }
}

TEST_CASE("N=2 is the bare sphere Green's function") {
  verify::Rng rng(5150);
  for (int i = 0; i < 50; ++i) {
    const double rho = rng.uniform(0.3, 3.0);
    const double lam = rng.uniform_int(0, 3) + rng.uniform(0.1, 0.9);
    const auto m = medium_from_lambda(2, rho, lam);
    const PointRN r = random_point(rng, 2, 2.0 * rho);
    const PointRN rp = random_point(rng, 2, 2.0 * rho);
    if (geometry::dist(r, rp) < 1e-3 * rho) continue;
    const double cosang = geometry::geodesic_cos(r, rp, rho);
    const auto via = green::fisheye_green_via_sphere(m, r, rp);
    const auto sphere = green::sphere_green(lam, 2, cosang);
    REQUIRE(via.value == Catch::Approx(sphere.value).epsilon(1e-14));
  }
}

TEST_CASE("source/observer symmetry and rotation invariance") {
  verify::Rng rng(2718);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 4;
    const double rho = rng.uniform(0.3, 3.0);
    const double lam = rng.uniform_int(-1, 4) + rng.uniform(0.05, 0.95);
    const auto m = medium_from_lambda(n, rho, lam);
    PointRN r = random_point(rng, n, 2.0 * rho);
    PointRN rp = random_point(rng, n, 2.0 * rho);
    if (geometry::dist(r, rp) < 1e-4 * rho) continue;
    const double fwd = green::fisheye_green(m, r, rp).value;
    const double bwd = green::fisheye_green(m, rp, r).value;
    REQUIRE(std::abs(fwd - bwd) <= 1e-12 * std::max(std::abs(fwd), 1e-300));

    const auto q = random_rotation(rng, n);
    const double rot =
        green::fisheye_green(m, rotate_point(q, r), rotate_point(q, rp)).value;
    REQUIRE(std::abs(fwd - rot) <= 1e-12 * std::max(std::abs(fwd), 1e-300));
  }
}

TEST_CASE("scale homogeneity G(s r, s r', s rho) = s^(2-N) G") {
  verify::Rng rng(161803);
  for (int i = 0; i < 120; ++i) {
    const int n = 2 + i % 4;
    const double rho = rng.uniform(0.3, 3.0);
    const double lam = rng.uniform_int(-1, 4) + rng.uniform(0.05, 0.95);
    const auto m = medium_from_lambda(n, rho, lam);
    PointRN r = random_point(rng, n, 2.0 * rho);
    PointRN rp = random_point(rng, n, 2.0 * rho);
    if (geometry::dist(r, rp) < 1e-4 * rho) continue;
    const double base = green::fisheye_green(m, r, rp).value;
    for (double s : {0.5, 2.0, 10.0}) {
      auto ms = m;
      ms.radius = s * rho;
      const double scaled =
          green::fisheye_green(ms, s * r, s * rp).value;
      const double want = std::pow(s, 2.0 - n) * base;
      CAPTURE(n, s, base, scaled);
      REQUIRE(std::abs(scaled - want) <=
              1e-12 * std::max(std::abs(want), 1e-300));
    }
  }
}

TEST_CASE("N=2 reduction to P_nu(-cos)/(4 sin(pi nu))") {
  verify::Rng rng(777777);
  for (int i = 0; i < 100; ++i) {
    const double rho = rng.uniform(0.3, 3.0);
    const double nu = rng.uniform_int(0, 3) + rng.uniform(0.05, 0.95);
    const FishEyeMedium m{2, rho, nu, 1e-8};
    PointRN r = random_point(rng, 2, 2.0 * rho);
    PointRN rp = random_point(rng, 2, 2.0 * rho);
    if (geometry::dist(r, rp) < 1e-4 * rho) continue;
    const double cosang = geometry::geodesic_cos(r, rp, rho);
    const double got = green::fisheye_green(m, r, rp).value;
    const double want = specfun::legendre_p(nu, -cosang) /
                        (4.0 * specfun::detail::sin_pi(nu));
    REQUIRE(std::abs(got - want) <= 1e-10 * std::max(std::abs(want), 1e-300));
  }
}

TEST_CASE("pole structure: residue at integer lambda") {
  // (lambda - L) * G_lambda(cos g) -> C_L^((N-1)/2)(cos g) / ((N-1) S_N).
  // The angles keep cos g away from the roots of the target polynomials,
  // where a relative comparison would be meaningless.
  for (int n : {2, 3}) {
    for (int l : {0, 1, 2}) {
      for (double cosg : {0.8, -0.85}) {
        const double target = verify::gegenbauer_recurrence(l, 0.5 * (n - 1),
                                                            cosg) /
                              ((n - 1.0) * geometry::sphere_area(n));
        double prev_err = std::numeric_limits<double>::infinity();
        for (double eps : {1e-2, 1e-3, 1e-4}) {
          const double lambda = l + eps;
          const double scaled =
              eps * green::sphere_green(lambda, n, cosg).value;
          const double err = std::abs(scaled - target) /
                             std::max(std::abs(target), 1e-300);
          CAPTURE(n, l, eps, cosg, scaled, target);
          REQUIRE(err < prev_err + 1e-12);  // converging toward the residue
          prev_err = err;
          if (eps == 1e-4) REQUIRE(err <= 5e-4);  // 3 significant digits
        }
      }
    }
  }
}

TEST_CASE("free-space limit near coincidence (nu -> 0, N = 3)") {
  // with the potential almost switched off the Green's function approaches
  // the free-space -1/(4 pi s) profile near the source
  const FishEyeMedium m{3, 1.0, 1e-3, 1e-8};  // lambda = -1/2 + 1e-3
  const PointRN src{0.2, -0.1, 0.05};
  const double s = 1e-4;
  const double g =
      green::fisheye_green(m, src + s * PointRN{1.0, 0.0, 0.0}, src).value;
  CHECK(g == Catch::Approx(-1.0 / (4.0 * kPi * s)).epsilon(1e-2));
}

TEST_CASE("GreenValue diagnostics propagate") {
  const FishEyeMedium m{3, 1.0, 1.3, 1e-8};
  const auto g = green::fisheye_green(m, PointRN{0.4, 0.0, 0.0},
                                      PointRN{0.0, 0.5, 0.0});
  CHECK(g.diagnostics.terms_used >= 1);
  CHECK(g.diagnostics.tail_estimate >= 0.0);
}
