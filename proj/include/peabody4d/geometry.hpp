#pragma once

#include <array>
#include <span>
#include <utility>

#include <Eigen/Dense>

namespace peabody4d {

// Coordinates are ordered (x, y, z, w) throughout.
using Point4 = Eigen::Vector4d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Vertex permutation of the simplex: vertex i goes to vertex perm[i], 0-based.
using Permutation = std::array<int, 5>;

Permutation identity_permutation();
Permutation compose(const Permutation& outer, const Permutation& inner);  // outer o inner
Permutation inverse(const Permutation& perm);

// Rigid motion p -> linear * p + translation.
struct Isometry4 {
  Mat4 linear = Mat4::Identity();
  Vec4 translation = Vec4::Zero();

  static Isometry4 identity() { return {}; }

  Point4 apply(const Point4& p) const { return linear * p + translation; }
  Vec4 apply_vector(const Vec4& v) const { return linear * v; }
  Isometry4 inverse() const;
  double determinant() const { return linear.determinant(); }
  // Largest entry of |linear^T linear - I|.
  double orthogonality_defect() const;
};

Isometry4 operator*(const Isometry4& outer, const Isometry4& inner);

// Motion mapping vertex i onto vertex perm[i]. Realized as the polar factor of
// the cross-covariance of the centroid-centered vertex sets, which is exact for
// a regular simplex. Throws DegenerateSimplex if the centered vertices do not
// span 4-space or the simplex is not regular to 1e-10.
Isometry4 isometry_from_vertex_permutation(std::span<const Point4, 5> vertices,
                                           const Permutation& perm);

// Oriented frame: world = origin + axes * local. Columns of `axes` are the
// local x (principal axis), y, z and w directions.
struct Frame {
  Point4 origin = Point4::Zero();
  Mat4 axes = Mat4::Identity();

  Point4 to_world(const Point4& local) const { return origin + axes * local; }
  Point4 to_local(const Point4& world) const { return axes.transpose() * (world - origin); }
};

enum class QuadricKind {
  Ellipse,      // local {x,z}-plane: x^2/a^2 + z^2/(a^2-1) = 1, foci (+-1, 0)
  Hyperbola,    // local {x,y}-plane: x^2 - y^2/(a^2-1) = 1, foci (+-a, 0)
  Hyperboloid,  // local {x,y,w}-space: x^2 - (y^2 + w^2)/(a^2-1) = 1, foci (+-a, 0, 0)
};

struct Quadric {
  QuadricKind kind = QuadricKind::Ellipse;
  Frame frame;
  double a_sq = 1.5;

  double b_sq() const { return a_sq - 1.0; }
  double focal_distance() const;
  // Foci on the principal axis, (+, -) in local x.
  std::pair<Point4, Point4> foci() const;
  Quadric transformed(const Isometry4& motion) const;
};

Quadric standard_ellipse(double a_sq);
Quadric standard_hyperbola(double a_sq);
Quadric standard_hyperboloid(double a_sq);

struct QuadricResidual {
  double residual;        // implicit equation evaluated in the quadric's frame
  double out_of_carrier;  // distance from the carrier plane / 3-space
};

QuadricResidual quadric_residual(const Quadric& q, const Point4& p);

// Eccentric-angle parametrization of an ellipse.
Point4 ellipse_point(const Quadric& ellipse, double t);
// Point with principal coordinate x >= 1 and azimuth theta on the right sheet.
// Throws OutOfDomain for x < 1.
Point4 hyperboloid_point(const Quadric& hyperboloid, double x, double theta);
// Same sheet, parametrized by the distance r >= 0 from the axis.
Point4 hyperboloid_point_radial(const Quadric& hyperboloid, double r, double theta);

// Closed half-space {p : normal . p + offset >= 0}.
struct HalfSpace {
  Vec4 normal = Vec4::UnitX();
  double offset = 0.0;

  double signed_distance(const Point4& p) const { return normal.dot(p) + offset; }
  HalfSpace transformed(const Isometry4& motion) const;
};

// Sub-arc of an ellipse between two eccentric angles (t_begin < t_end).
struct EllipseArc {
  Quadric ellipse;
  double t_begin = 0.0;
  double t_end = 0.0;

  // u in [0, 1] maps linearly onto [t_begin, t_end].
  Point4 at(double u) const;
  double angle(double u) const { return t_begin + u * (t_end - t_begin); }
  // Eccentric angle of the projection of p into the ellipse's plane.
  double angle_of(const Point4& p) const;
  // Upper bound on the distance from p to the arc.
  double distance_bound(const Point4& p) const;
  bool contains(const Point4& p, double tol) const;
};

// Piece of the right sheet of a hyperboloid of revolution cut out by three
// half-spaces whose boundary planes lie in the hyperboloid's carrier 3-space.
// The piece is star-shaped about the sheet vertex: along each azimuth it is the
// radial interval [0, boundary_radius(theta)].
struct HyperboloidPatch {
  Quadric hyperboloid;
  std::array<HalfSpace, 3> cuts;

  double boundary_radius(double theta) const;
  // s in [0, 1] is the fraction of the boundary radius along azimuth theta.
  Point4 at(double s, double theta) const;
  // Azimuth of p about the axis, in [0, 2 pi).
  double azimuth_of(const Point4& p) const;
  bool contains(const Point4& p, double tol) const;
  // Upper bound on the distance from p to the patch.
  double distance_bound(const Point4& p) const;
};

}  // namespace peabody4d
