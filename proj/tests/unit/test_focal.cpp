#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "peabody4d/error.hpp"
#include "peabody4d/focal.hpp"
#include "peabody4d/skeleton.hpp"

using namespace peabody4d;

namespace {

const ModelConstants& C() {
  static const ModelConstants c = compute_model_constants();
  return c;
}

const Simplex4& S() {
  static const Simplex4 s = build_simplex(C());
  return s;
}

const ChainRadii& chain() {
  static const ChainRadii ch = base_chain(C(), S());
  return ch;
}

Point4 omega() {
  const double t = std::sqrt(1.5) - C().x1;
  return Point4(C().x0 - 2 * t / 3, -C().y0 / 2 - std::sqrt(5.0) * t / 3, 0, 0);
}

}  // namespace

TEST_CASE("standard pair validates as focal") {
  const FocalPair pair = standard_focal_pair(1.5);
  CHECK(validate_focal_pair(pair).max() <= 1e-12);
  const Isometry4 m = isometry_from_vertex_permutation(S().vertices(), {2, 4, 0, 1, 3});
  CHECK(validate_focal_pair(pair.transformed(m)).max() <= 1e-12);
}

TEST_CASE("focal sum identity") {
  const Quadric e = standard_ellipse(1.5);
  const Quadric h = standard_hyperboloid(1.5);
  const Point4 mirror(C().x0, -C().y0, 0, 0);
  CHECK(std::abs(focal_sum_residual(e, h, S().p[0], S().p[1], S().p[2], mirror)) <= 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> xs(1.0, 2.5);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    worst = std::max(worst, std::abs(focal_sum_residual(
                                e, h, ellipse_point(e, ang(rng)), ellipse_point(e, ang(rng)),
                                hyperboloid_point(h, xs(rng), ang(rng)),
                                hyperboloid_point(h, xs(rng), ang(rng)))));
  }
  CHECK(worst <= 1e-10);

  // Moving the hyperboloid focus by 1e-3 breaks the identity.
  const double a = std::sqrt(1.5) + 1e-3;
  const Quadric h_bad = standard_hyperboloid(a * a);
  worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    worst = std::max(worst, std::abs(focal_sum_residual(
                                e, h_bad, ellipse_point(e, ang(rng)), ellipse_point(e, ang(rng)),
                                hyperboloid_point(h_bad, xs(rng), ang(rng)),
                                hyperboloid_point(h_bad, xs(rng), ang(rng)))));
  }
  CHECK(worst > 1e-5);

  const Point4 left = -hyperboloid_point(h, 1.3, 0.5);
  try {
    focal_sum_residual(e, h, S().p[0], S().p[1], S().p[2], left);
    FAIL("expected NotSameComponent");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotSameComponent);
  }
}

TEST_CASE("focal constant identity") {
  const FocalPair pair = standard_focal_pair(1.5);
  CHECK(focal_constant(pair) == doctest::Approx(-0.2247449).epsilon(1e-6));
  CHECK(std::abs(focal_const_residual(pair, S().p[0], S().p[2])) <= 1e-12);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> xs(1.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Point4 ae = ellipse_point(pair.ellipse, ang(rng));
    const Point4 ah = hyperboloid_point(pair.hyperboloid, xs(rng), ang(rng));
    worst = std::max(worst, std::abs(focal_const_residual(pair, ae, ah)));
  }
  CHECK(worst <= 1e-10);

  try {
    focal_const_residual(pair, S().p[0], -S().p[2]);
    FAIL("expected WrongComponent");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::WrongComponent);
  }
}

TEST_CASE("elliptic Steiner radius") {
  CHECK(std::abs(steiner_radius_elliptic(chain(), S().p[0])) <= 1e-12);
  CHECK(std::abs(steiner_radius_elliptic(chain(), S().p[1])) <= 1e-12);
  const Point4 mid(std::sqrt(1.5), 0, 0, 0);
  CHECK(steiner_radius_elliptic(chain(), mid) == doctest::Approx(0.0189417).epsilon(1e-5));
  double best = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double r = steiner_radius_elliptic(chain(), chain().arc.at(i / 400.0));
    CHECK(r >= 0.0);
    CHECK(r <= 0.019);
    best = std::max(best, r);
  }
  CHECK(best == doctest::Approx(steiner_radius_elliptic(chain(), mid)).epsilon(1e-12));
  try {
    steiner_radius_elliptic(chain(), S().p[2]);
    FAIL("expected OffArc");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::OffArc);
  }
}

TEST_CASE("hyperbolic Steiner radius") {
  for (int i : {2, 3, 4}) CHECK(std::abs(steiner_radius_hyperbolic(chain(), S().p[i])) <= 1e-12);
  CHECK(steiner_radius_hyperbolic(chain(), omega()) == doctest::Approx(0.0189414).epsilon(1e-5));
  CHECK((omega() - chain().focus_h).norm() == doctest::Approx(0.2360683).epsilon(1e-6));
  // A sheet point beyond p3 along the same azimuth is outside the patch.
  const Point4 outside = hyperboloid_point(chain().patch.hyperboloid, 1.2, 0.0);
  try {
    steiner_radius_hyperbolic(chain(), outside);
    FAIL("expected OffPatch");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::OffPatch);
  }
}

TEST_CASE("sum of Steiner radii and distance is the width") {
  CHECK(std::abs(constante_residual(chain(), S().p[2], S().p[0])) <= 1e-14);
  const Point4 mid(std::sqrt(1.5), 0, 0, 0);
  CHECK(std::abs(constante_residual(chain(), omega(), mid)) <= 1e-10);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const Point4 x = chain().patch.at((i % 10 + 0.5) / 10.0, 2 * std::numbers::pi * (i / 10 + 0.5 * (j % 2)) / 10.0);
      const Point4 y = chain().arc.at(j / 99.0);
      worst = std::max(worst, std::abs(constante_residual(chain(), x, y)));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("balls of the two chains stay within the width") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  auto ball_point = [&](const Point4& c, double r) {
    Vec4 d(normal(rng), normal(rng), normal(rng), normal(rng));
    return Point4(c + r * std::pow(unit(rng), 0.25) * d.normalized());
  };
  double worst = -1.0;
  for (int i = 0; i < 2000; ++i) {
    const Point4 x = chain().patch.at(unit(rng), 2 * std::numbers::pi * unit(rng));
    const Point4 y = chain().arc.at(unit(rng));
    const Point4 u = ball_point(x, hyperbolic_radius(chain(), x));
    const Point4 v = ball_point(y, elliptic_radius(chain(), y));
    worst = std::max(worst, (u - v).norm() - C().width);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Steiner chain centers trace the focal quadrics") {
  const Quadric e = standard_ellipse(1.5);
  const Quadric h = standard_hyperboloid(1.5);
  const auto [fe_plus, fe_minus] = e.foci();
  const auto [fh_plus, fh_minus] = h.foci();
  const double re_plus = (S().p[0] - fe_plus).norm();
  const double re_minus = (S().p[0] - fe_minus).norm();
  for (int i = 1; i < 40; ++i) {
    const Point4 target = chain().arc.at(i / 40.0);
    const Point4 c = elliptic_chain_center(e, re_plus, re_minus, target - fe_plus);
    CHECK(std::abs(quadric_residual(e, c).residual) <= 1e-8);
  }
  const double rh_plus = (S().p[2] - fh_plus).norm();
  const double rh_minus = (S().p[2] - fh_minus).norm();
  for (int i = 0; i < 40; ++i) {
    const Point4 target = chain().patch.at(0.1 + 0.02 * i, 0.157 * i);
    const Point4 c = hyperbolic_chain_center(h, rh_plus, rh_minus, target - fh_plus);
    CHECK(std::abs(quadric_residual(h, c).residual) <= 1e-8);
    CHECK(quadric_residual(h, c).out_of_carrier <= 1e-12);
  }
}
