#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eis/errors.hpp"
#include "eis/geometry.hpp"
#include "eis/rng.hpp"

using namespace eis;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent O(|A||B|) double loop used as the Hausdorff oracle.
double hausdorff_bruteforce(const std::vector<Vec2>& A, const std::vector<Vec2>& B) {
  double dab = 0.0;
  for (const auto& a : A) {
    double best = 1e300;
    for (const auto& b : B) best = std::min(best, (a - b).norm());
    dab = std::max(dab, best);
  }
  double dba = 0.0;
  for (const auto& b : B) {
    double best = 1e300;
    for (const auto& a : A) best = std::min(best, (a - b).norm());
    dba = std::max(dba, best);
  }
  return std::max(dab, dba);
}

std::vector<Vec2> random_points(int n, Rng& rng, double scale) {
  std::vector<Vec2> pts(n);
  for (auto& p : pts) p = scale * Vec2(rng.gauss(), rng.gauss());
  return pts;
}

ShapeState random_shape(Rng& rng, int M) {
  ShapeState sh;
  sh.a0 = 0.3 * rng.gauss();
  sh.a = 0.3 * Eigen::VectorXd::NullaryExpr(M, [&](int) { return rng.gauss(); });
  sh.b = 0.3 * Eigen::VectorXd::NullaryExpr(M, [&](int) { return rng.gauss(); });
  sh.z = Vec2(rng.gauss(), rng.gauss());
  sh.s = 1.2;
  return sh;
}

}  // namespace

TEST_CASE("starlike boundary: zero coefficients give the unit circle") {
  ShapeState sh;
  sh.a = Eigen::VectorXd::Zero(4);
  sh.b = Eigen::VectorXd::Zero(4);
  const auto curve = starlike_boundary(sh, 64);
  const Vec2 p = curve.at(2.0 * kPi);  // theta = 0 mod 2 pi
  CHECK(p.x() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.y() == doctest::Approx(0.0).scale(1).epsilon(1e-13));
}

TEST_CASE("starlike boundary: constant log-radius ln 2 with offset center") {
  ShapeState sh;
  sh.a0 = std::sqrt(2.0 * kPi) * std::log(2.0);
  sh.a = Eigen::VectorXd::Zero(3);
  sh.b = Eigen::VectorXd::Zero(3);
  sh.z = Vec2(1.0, 1.0);
  const auto curve = starlike_boundary(sh, 64);
  const Vec2 p = curve.at(kPi / 2.0);
  CHECK(p.x() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(p.y() == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("starlike boundary derivative matches central finite differences") {
  auto rng = Rng::stream(42, 1);
  for (int rep = 0; rep < 5; ++rep) {
    const ShapeState sh = random_shape(rng, 6);
    const auto curve = starlike_boundary(sh, 32);
    const double h = 1e-6;
    for (int i = 0; i < curve.size(); i += 5) {
      const double t = curve.theta(i);
      const Vec2 fd = (curve.at(t + h) - curve.at(t - h)) / (2.0 * h);
      CHECK((fd - curve.deriv(i)).norm() <= 1e-6);
    }
  }
}

TEST_CASE("preset boundary points from the parameterizations") {
  const Vec2 kite = preset_point(PresetKind::Kite, 0.0);
  CHECK(kite.x() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(kite.y() == doctest::Approx(3.0).epsilon(1e-14));

  const Vec2 peanut = preset_point(PresetKind::Peanut, 0.0);
  CHECK(peanut.x() == doctest::Approx(-1.2).epsilon(1e-14));
  CHECK(peanut.y() == doctest::Approx(3.0).epsilon(1e-14));

  const Vec2 pear = preset_point(PresetKind::Pear, kPi / 2.0);
  CHECK(pear.x() == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(pear.y() == doctest::Approx(3.0 + 2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("preset boundary derivatives match finite differences") {
  for (auto kind : {PresetKind::Kite, PresetKind::Peanut, PresetKind::Pear}) {
    const auto curve = preset_boundary(kind, 64);
    const double h = 1e-6;
    for (int i = 0; i < curve.size(); i += 7) {
      const double t = curve.theta(i);
      const Vec2 fd = (curve.at(t + h) - curve.at(t - h)) / (2.0 * h);
      CHECK((fd - curve.deriv(i)).norm() <= 1e-6);
      const Vec2 fd2 = (curve.at(t + h) - 2.0 * curve.at(t) + curve.at(t - h)) / (h * h);
      CHECK((fd2 - curve.deriv2(i)).norm() <= 1e-3);
    }
  }
}

TEST_CASE("hausdorff: identity, concentric circles, brute-force equality") {
  auto rng = Rng::stream(7, 2);
  const auto A = random_points(50, rng, 2.0);
  CHECK(hausdorff(A, A) == 0.0);

  const auto c1 = circle_boundary(Vec2(0.3, -0.2), 1.0, 2048).sample(2048);
  const auto c2 = circle_boundary(Vec2(0.3, -0.2), 2.0, 2048).sample(2048);
  CHECK(hausdorff(c1, c2) == doctest::Approx(1.0).epsilon(1e-3));

  const auto B = random_points(50, rng, 3.0);
  CHECK(hausdorff(A, B) == hausdorff_bruteforce(A, B));
}

TEST_CASE("hausdorff rejects empty input") {
  std::vector<Vec2> empty, one{Vec2(0, 0)};
  CHECK_THROWS_AS(hausdorff(empty, one), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff(one, empty), std::invalid_argument);
}

TEST_CASE("hausdorff is symmetric and satisfies the triangle inequality") {
  auto rng = Rng::stream(11, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto A = random_points(20, rng, 1.5);
    const auto B = random_points(25, rng, 1.5);
    const auto C = random_points(15, rng, 1.5);
    const double ab = hausdorff(A, B), ba = hausdorff(B, A);
    CHECK(ab == ba);
    CHECK(ab <= hausdorff(A, C) + hausdorff(C, B) + 1e-12);
  }
}

TEST_CASE("circle coefficients recovered from ln r reproduce the circle") {
  // circle radius 2 center (1,1): p = ln 2 constant => a0 = sqrt(2 pi) ln 2
  ShapeState sh;
  sh.a0 = std::sqrt(2.0 * kPi) * std::log(2.0);
  sh.a = Eigen::VectorXd::Zero(6);
  sh.b = Eigen::VectorXd::Zero(6);
  sh.z = Vec2(1.0, 1.0);
  const auto rebuilt = starlike_boundary(sh, 256).sample(256);
  const auto truth = circle_boundary(Vec2(1.0, 1.0), 2.0, 256).sample(256);
  CHECK(hausdorff(rebuilt, truth) <= 1e-12);
}

TEST_CASE("outward normal points away from the center on a circle") {
  const auto curve = circle_boundary(Vec2(0.5, -1.0), 1.7, 64);
  for (int i = 0; i < curve.size(); ++i) {
    CHECK((curve.point(i) - Vec2(0.5, -1.0)).dot(curve.normal(i)) > 0.0);
    // tangent/normal orientation contract: tau = rot90(nu)
    const Vec2 nu = curve.normal(i), tau = curve.tangent(i);
    CHECK(tau.x() == doctest::Approx(-nu.y()).epsilon(1e-14));
    CHECK(tau.y() == doctest::Approx(nu.x()).epsilon(1e-14));
    CHECK(nu.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("starlike r_max validation") {
  ShapeState sh;
  sh.a0 = std::sqrt(2.0 * kPi) * 2.5;  // r = e^{2.5} > 10
  sh.a = Eigen::VectorXd::Zero(2);
  sh.b = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(starlike_boundary(sh, 64), ShapeError);
  CHECK_NOTHROW(starlike_boundary(sh, 64, 20.0));
}

TEST_CASE("shape vector round trip") {
  auto rng = Rng::stream(3, 9);
  const ShapeState sh = random_shape(rng, 6);
  const auto xi = sh.to_vector();
  CHECK(xi.size() == 15);
  const ShapeState back = ShapeState::from_vector(xi, sh.s);
  CHECK((back.to_vector() - xi).norm() == 0.0);
  CHECK(back.z == sh.z);
}
