#include "peabody4d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "peabody4d/error.hpp"

namespace peabody4d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_near(double angle, double center) {
  return center + std::remainder(angle - center, kTwoPi);
}

}  // namespace

Permutation identity_permutation() { return {0, 1, 2, 3, 4}; }

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out{};
  for (int i = 0; i < 5; ++i) out[i] = outer[inner[i]];
  return out;
}

Permutation inverse(const Permutation& perm) {
  Permutation out{};
  for (int i = 0; i < 5; ++i) out[perm[i]] = i;
  return out;
}

Isometry4 Isometry4::inverse() const {
  Isometry4 inv;
  inv.linear = linear.transpose();
  inv.translation = -(inv.linear * translation);
  return inv;
}

double Isometry4::orthogonality_defect() const {
  return (linear.transpose() * linear - Mat4::Identity()).cwiseAbs().maxCoeff();
}

Isometry4 operator*(const Isometry4& outer, const Isometry4& inner) {
  Isometry4 out;
  out.linear = outer.linear * inner.linear;
  out.translation = outer.linear * inner.translation + outer.translation;
  return out;
}

Isometry4 isometry_from_vertex_permutation(std::span<const Point4, 5> vertices,
                                           const Permutation& perm) {
  {
    Permutation seen{};
    for (int i = 0; i < 5; ++i) {
      if (perm[i] < 0 || perm[i] > 4 || seen[perm[i]]++) {
        throw Error(ErrorCode::InvalidArgument, "not a permutation of five vertices");
      }
    }
  }
  double d_min = std::numeric_limits<double>::infinity();
  double d_max = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const double d = (vertices[i] - vertices[j]).norm();
      d_min = std::min(d_min, d);
      d_max = std::max(d_max, d);
    }
  }
  if (!(d_min > 0.0) || d_max - d_min > 1e-10) {
    throw Error(ErrorCode::DegenerateSimplex, "vertices are not a regular simplex");
  }

  Point4 g = Point4::Zero();
  for (const auto& v : vertices) g += v;
  g /= 5.0;

  Eigen::Matrix<double, 4, 5> src;
  Eigen::Matrix<double, 4, 5> dst;
  for (int i = 0; i < 5; ++i) {
    src.col(i) = vertices[i] - g;
    dst.col(i) = vertices[perm[i]] - g;
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 5>> rank_check(src);
  const auto& sv = rank_check.singularValues();
  if (!(sv(3) > 1e-9 * sv(0))) {
    throw Error(ErrorCode::DegenerateSimplex, "centered vertices do not span 4-space");
  }

  const Mat4 cross = dst * src.transpose();
  Eigen::JacobiSVD<Mat4> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Isometry4 m;
  m.linear = svd.matrixU() * svd.matrixV().transpose();
  m.translation = g - m.linear * g;
  return m;
}

double Quadric::focal_distance() const {
  return kind == QuadricKind::Ellipse ? std::sqrt(a_sq - b_sq()) : std::sqrt(a_sq);
}

std::pair<Point4, Point4> Quadric::foci() const {
  const double c = focal_distance();
  return {frame.to_world(Point4(c, 0, 0, 0)), frame.to_world(Point4(-c, 0, 0, 0))};
}

Quadric Quadric::transformed(const Isometry4& motion) const {
  Quadric q = *this;
  q.frame.origin = motion.apply(frame.origin);
  q.frame.axes = motion.linear * frame.axes;
  return q;
}

Quadric standard_ellipse(double a_sq) { return {QuadricKind::Ellipse, Frame{}, a_sq}; }
Quadric standard_hyperbola(double a_sq) { return {QuadricKind::Hyperbola, Frame{}, a_sq}; }
Quadric standard_hyperboloid(double a_sq) { return {QuadricKind::Hyperboloid, Frame{}, a_sq}; }

QuadricResidual quadric_residual(const Quadric& q, const Point4& p) {
  const Point4 l = q.frame.to_local(p);
  const double b_sq = q.b_sq();
  switch (q.kind) {
    case QuadricKind::Ellipse:
      return {l(2) * l(2) - b_sq * (1.0 - l(0) * l(0) / q.a_sq), std::hypot(l(1), l(3))};
    case QuadricKind::Hyperbola:
      return {l(1) * l(1) - b_sq * (l(0) * l(0) - 1.0), std::hypot(l(2), l(3))};
    case QuadricKind::Hyperboloid:
      return {l(1) * l(1) + l(3) * l(3) - b_sq * (l(0) * l(0) - 1.0), std::abs(l(2))};
  }
  return {0.0, 0.0};
}

Point4 ellipse_point(const Quadric& ellipse, double t) {
  if (ellipse.kind != QuadricKind::Ellipse) {
    throw Error(ErrorCode::InvalidArgument, "ellipse_point needs an ellipse");
  }
  const double a = std::sqrt(ellipse.a_sq);
  const double b = std::sqrt(ellipse.b_sq());
  return ellipse.frame.to_world(Point4(a * std::cos(t), 0.0, b * std::sin(t), 0.0));
}

Point4 hyperboloid_point(const Quadric& hyperboloid, double x, double theta) {
  if (hyperboloid.kind != QuadricKind::Hyperboloid) {
    throw Error(ErrorCode::InvalidArgument, "hyperboloid_point needs a hyperboloid");
  }
  if (!(x >= 1.0)) {
    throw Error(ErrorCode::OutOfDomain, "x must be >= 1 on the right sheet");
  }
  const double r = std::sqrt(hyperboloid.b_sq() * (x * x - 1.0));
  return hyperboloid.frame.to_world(Point4(x, r * std::cos(theta), 0.0, r * std::sin(theta)));
}

Point4 hyperboloid_point_radial(const Quadric& hyperboloid, double r, double theta) {
  if (hyperboloid.kind != QuadricKind::Hyperboloid) {
    throw Error(ErrorCode::InvalidArgument, "hyperboloid_point needs a hyperboloid");
  }
  if (!(r >= 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "radius must be >= 0");
  }
  const double x = std::sqrt(1.0 + r * r / hyperboloid.b_sq());
  return hyperboloid.frame.to_world(Point4(x, r * std::cos(theta), 0.0, r * std::sin(theta)));
}

HalfSpace HalfSpace::transformed(const Isometry4& motion) const {
  HalfSpace h;
  h.normal = motion.linear * normal;
  h.offset = offset - h.normal.dot(motion.translation);
  return h;
}

Point4 EllipseArc::at(double u) const { return ellipse_point(ellipse, angle(u)); }

double EllipseArc::angle_of(const Point4& p) const {
  const Point4 l = ellipse.frame.to_local(p);
  const double t = std::atan2(l(2) / std::sqrt(ellipse.b_sq()), l(0) / std::sqrt(ellipse.a_sq));
  return wrap_near(t, 0.5 * (t_begin + t_end));
}

double EllipseArc::distance_bound(const Point4& p) const {
  const double t = std::clamp(angle_of(p), t_begin, t_end);
  return (p - ellipse_point(ellipse, t)).norm();
}

bool EllipseArc::contains(const Point4& p, double tol) const {
  return distance_bound(p) <= tol;
}

double HyperboloidPatch::boundary_radius(double theta) const {
  const double b_sq = hyperboloid.b_sq();
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  double best = std::numeric_limits<double>::infinity();
  for (const HalfSpace& cut : cuts) {
    // Along the azimuth the cut reads c0 + alpha x(r) + beta r with x(r) = sqrt(1 + r^2/b^2).
    const Vec4 n = hyperboloid.frame.axes.transpose() * cut.normal;
    const double c0 = cut.signed_distance(hyperboloid.frame.origin);
    const double alpha = n(0);
    const double beta = n(1) * ct + n(3) * st;
    auto f = [&](double r) { return c0 + alpha * std::sqrt(1.0 + r * r / b_sq) + beta * r; };
    const double qa = alpha * alpha / b_sq - beta * beta;
    const double qb = -2.0 * c0 * beta;
    const double qc = alpha * alpha - c0 * c0;
    double roots[2];
    int count = 0;
    if (std::abs(qa) < 1e-14 * (alpha * alpha / b_sq + beta * beta)) {
      if (qb != 0.0) roots[count++] = -qc / qb;
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (qb + std::copysign(sq, qb));
        if (q != 0.0) {
          roots[count++] = q / qa;
          roots[count++] = qc / q;
        } else {
          roots[count++] = 0.0;
        }
      }
    }
    const double scale = std::abs(c0) + std::abs(alpha) + std::abs(beta);
    for (int i = 0; i < count; ++i) {
      const double r = roots[i];
      if (r > 0.0 && r < best && std::abs(f(r)) <= 1e-9 * scale) best = r;
    }
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorCode::OffPatch, "patch is unbounded along this azimuth");
  }
  return best;
}

Point4 HyperboloidPatch::at(double s, double theta) const {
  return hyperboloid_point_radial(hyperboloid, s * boundary_radius(theta), theta);
}

double HyperboloidPatch::azimuth_of(const Point4& p) const {
  const Point4 l = hyperboloid.frame.to_local(p);
  double th = std::atan2(l(3), l(1));
  if (th < 0.0) th += kTwoPi;
  return th;
}

double HyperboloidPatch::distance_bound(const Point4& p) const {
  const Point4 l = hyperboloid.frame.to_local(p);
  const double r = std::hypot(l(1), l(3));
  const double theta = azimuth_of(p);
  const double rb = boundary_radius(theta);
  return (p - hyperboloid_point_radial(hyperboloid, std::min(r, rb), theta)).norm();
}

bool HyperboloidPatch::contains(const Point4& p, double tol) const {
  return distance_bound(p) <= tol;
}

}  // namespace peabody4d
