#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "peabody4d/error.hpp"
#include "peabody4d/skeleton.hpp"

using namespace peabody4d;

namespace {

const FocalSkeleton& SK() {
  static const FocalSkeleton sk(compute_model_constants());
  return sk;
}

}  // namespace

TEST_CASE("simplex is regular with edge 2 z1") {
  const Simplex4& s = SK().simplex();
  const double w = SK().constants().width;
  double lo = 1e9, hi = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const double d = (s.p[i] - s.p[j]).norm();
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  CHECK(hi - lo <= 1e-12);
  CHECK(std::abs(hi - w) <= 1e-12);
  CHECK(w == doctest::Approx(0.2739515).epsilon(1e-6));
  const double y0 = SK().constants().y0;
  CHECK(std::abs((s.p[2] - s.p[3]).squaredNorm() - 3 * y0 * y0) <= 1e-15);
  Point4 g = Point4::Zero();
  for (const auto& p : s.p) g += p / 5.0;
  CHECK((g - s.centroid).norm() <= 1e-15);
  // Circumradius of a regular 4-simplex with edge w is w sqrt(2/5).
  for (const auto& p : s.p) CHECK((p - g).norm() == doctest::Approx(w * std::sqrt(0.4)).epsilon(1e-12));
  CHECK(w * std::sqrt(0.4) == doctest::Approx(0.1732613).epsilon(1e-6));
}

TEST_CASE("axis lines pass through midpoints and opposite barycenters") {
  const Simplex4& s = SK().simplex();
  for (int k = 0; k < 10; ++k) {
    const auto e = edge_list()[k];
    const auto t = complement_triangle(k);
    const Vec4 d = s.axis_direction(e[0], e[1]);
    const Vec4 v = s.barycenter(t[0], t[1], t[2]) - s.midpoint(e[0], e[1]);
    CHECK((v - v.dot(d) * d).norm() <= 1e-12);
    // The centroid is on every axis.
    const Vec4 gv = s.centroid - s.midpoint(e[0], e[1]);
    CHECK((gv - gv.dot(d) * d).norm() <= 1e-12);
  }
}

TEST_CASE("symmetry group") {
  const SymmetryGroup& G = SK().group();
  CHECK(G.size() == 120);
  const Simplex4& s = SK().simplex();
  for (const auto& g : G) {
    for (int i = 0; i < 5; ++i) CHECK((g.motion.apply(s.p[i]) - s.p[g.perm[i]]).norm() <= 1e-10);
    CHECK(g.motion.orthogonality_defect() <= 1e-12);
  }
  CHECK(G.closure_defect() <= 1e-9);
  CHECK(permutation_rank(identity_permutation()) == 0);
  CHECK(permutation_rank({4, 3, 2, 1, 0}) == 119);
  CHECK(G.find({4, 3, 2, 1, 0}).perm == Permutation{4, 3, 2, 1, 0});

  // The orbit of p12 is the set of all ten midpoints.
  const Point4 p12 = s.midpoint(0, 1);
  std::set<int> hit;
  for (const auto& g : G) {
    const Point4 q = g.motion.apply(p12);
    for (int k = 0; k < 10; ++k) {
      const auto e = edge_list()[k];
      if ((q - s.midpoint(e[0], e[1])).norm() <= 1e-12) hit.insert(k);
    }
  }
  CHECK(hit.size() == 10);
}

TEST_CASE("face indexing helpers") {
  CHECK(edge_label(0) == "(12)");
  CHECK(triangle_label(0) == "(345)");
  CHECK(edge_label(9) == "(45)");
  CHECK(triangle_label(9) == "(123)");
  CHECK(edge_index(4, 3) == 9);
  CHECK(triangle_index(2, 3, 4) == 0);
  CHECK_THROWS_AS(edge_index(1, 1), Error);
}

TEST_CASE("base edge arc") {
  const ModelConstants& c = SK().constants();
  const EllipseArc arc = base_edge_arc(c);
  const Simplex4& s = SK().simplex();
  CHECK((arc.at(0.0) - s.p[1]).norm() <= 1e-15);
  CHECK((arc.at(1.0) - s.p[0]).norm() <= 1e-15);
  CHECK((arc.at(0.5) - Point4(std::sqrt(1.5), 0, 0, 0)).norm() <= 1e-15);
  for (int i = 0; i <= 200; ++i) CHECK(arc.at(i / 200.0)(0) >= c.x1 - 1e-12);
}

TEST_CASE("base triangle patch") {
  const ModelConstants& c = SK().constants();
  const Simplex4& s = SK().simplex();
  const HyperboloidPatch patch = base_triangle_patch(c, s);
  for (int i : {2, 3, 4}) {
    CHECK(patch.contains(s.p[i], 1e-13));
    CHECK(std::abs(quadric_residual(patch.hyperboloid, s.p[i]).residual) <= 1e-13);
  }
  CHECK(patch.boundary_radius(0.0) == doctest::Approx(c.y0).epsilon(1e-13));
  // Corners at 0, 120 and 240 degrees.
  CHECK((patch.at(1.0, 0.0) - s.p[2]).norm() <= 1e-12);
  CHECK((patch.at(1.0, 2 * std::numbers::pi / 3) - s.p[4]).norm() <= 1e-12);
  CHECK((patch.at(1.0, 4 * std::numbers::pi / 3) - s.p[3]).norm() <= 1e-12);

  const CutPointReport ca = cut_point(c);
  CHECK(std::abs(ca.distance - ca.expected) <= 1e-12);
  CHECK(ca.expected == doctest::Approx(0.0231988).epsilon(1e-5));
  CHECK(ca.omega(0) == doctest::Approx(1.00924528).epsilon(1e-8));
  CHECK(ca.omega(1) == doctest::Approx(-0.09637435).epsilon(1e-7));
  CHECK((patch.at(1.0, std::numbers::pi) - ca.omega).norm() <= 1e-12);
  CHECK(SK().edge_face(9).arc.contains(ca.omega, 1e-12));

  // Around the circumcircle C only the arcs between the corners belong to the patch.
  const double rho = c.y0;
  int inside = 0;
  for (int j = 0; j < 360; ++j) {
    const double th = 2 * std::numbers::pi * j / 360;
    const Point4 q = hyperboloid_point_radial(patch.hyperboloid, rho, th);
    if (patch.contains(q, 1e-12)) ++inside;
  }
  CHECK(inside == 3);
}

TEST_CASE("rotation closure") {
  const ClosureReport r = rotation_closure(SK().constants(), 200);
  CHECK(r.total() <= 1e-10);
  CHECK(rotation_closure_check(constants_for(1.4), 200) > 1e-4);
  CHECK(rotation_closure_check(constants_for(2.0), 200) > 1e-4);
  const TangentReport t = tangent_angles(SK().constants());
  CHECK(t.expected == doctest::Approx(-0.3419987).epsilon(1e-6));
  CHECK(std::abs(t.tan_ellipse - t.expected) <= 1e-12);
  CHECK(std::abs(t.tan_rotated - t.expected) <= 1e-12);
}

TEST_CASE("focal skeleton faces") {
  const auto& faces = SK().faces();
  CHECK(faces.size() == 20);
  CHECK(faces[0].label == "(12)");
  CHECK(faces[10].label == "(345)");
  const Simplex4& s = SK().simplex();
  for (int k = 0; k < 10; ++k) {
    const auto e = edge_list()[k];
    const auto& arc = SK().edge_face(k).arc;
    const double d0 = std::min((arc.at(0) - s.p[e[0]]).norm(), (arc.at(0) - s.p[e[1]]).norm());
    const double d1 = std::min((arc.at(1) - s.p[e[0]]).norm(), (arc.at(1) - s.p[e[1]]).norm());
    CHECK(d0 <= 1e-12);
    CHECK(d1 <= 1e-12);
    CHECK(validate_focal_pair(SK().focal_pair(k)).max() <= 1e-12);
    CHECK(SK().triangle_boundary_defect(k, 96) <= 1e-9);
  }
  CHECK(SK().orbit_consistency(12) <= 1e-9);
  CHECK(SK().invariance_defect(8) <= 1e-9);
}

TEST_CASE("radius consistency on E45") {
  const FocalSkeleton& sk = SK();
  CHECK(std::abs(radius_consistency_residual(sk, sk.simplex().p[3])) <= 1e-12);
  const CutPointReport ca = cut_point(sk.constants());
  CHECK(hyperbolic_radius(sk.chain(0), ca.omega) == doctest::Approx(0.0189414).epsilon(1e-5));
  CHECK(std::abs(radius_consistency_residual(sk, ca.omega)) <= 1e-10);
  double worst = 0.0;
  const EllipseArc& e45 = sk.edge_face(9).arc;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, std::abs(radius_consistency_residual(sk, e45.at(i / 99.0))));
  CHECK(worst <= 1e-10);
  CHECK_THROWS_AS(radius_consistency_residual(sk, sk.simplex().p[0]), Error);
}

TEST_CASE("cap separation") {
  const CapSeparationReport r = cap_separation(SK(), 48);
  CHECK(r.min_side_a >= -1e-9);
  CHECK(r.min_side_b >= -1e-9);
  CHECK(r.boundary_dist <= 1e-9);
}
