#pragma once

#include "peabody4d/geometry.hpp"
#include "peabody4d/numerics.hpp"

namespace peabody4d {

// An ellipse and a hyperboloid of revolution sharing a principal axis, each
// passing through the other's foci.
struct FocalPair {
  Quadric ellipse;
  Quadric hyperboloid;
  Point4 axis_point = Point4::Zero();
  Vec4 axis_dir = Vec4::UnitX();

  FocalPair transformed(const Isometry4& motion) const;
  // Focus of the ellipse on the hyperboloid's sheet, and focus of the
  // hyperboloid on the ellipse.
  Point4 ellipse_focus() const;
  Point4 hyperboloid_focus() const;
};

FocalPair standard_focal_pair(double a_sq);

struct FocalPairDefect {
  double axis_distance;         // principal axes off the shared axis line
  double carrier_orthogonality; // ellipse plane vs hyperboloid 3-space
  double focus_on_other;        // worst |residual| of a focus on the other quadric
  double max() const;
};

FocalPairDefect validate_focal_pair(const FocalPair& pair);

// Sheet index of a point on a hyperboloid: +1 right, -1 left.
int sheet_of(const Quadric& hyperboloid, const Point4& p);

// (a_e a_h + b_e b_h) - (a_h b_e + a_e b_h). Throws NotSameComponent when a_h,
// b_h sit on different sheets.
double focal_sum_residual(const Quadric& ellipse, const Quadric& hyperboloid, const Point4& a_e,
                          const Point4& b_e, const Point4& a_h, const Point4& b_h);

// |a_e a_h| - |a_h f_h| - |a_e f_e| + |f_h f_e|, with f_e, f_h the foci of
// FocalPair. Vanishes for every a_e on the ellipse and a_h on the right sheet.
// Throws WrongComponent if a_h is on the left sheet.
double focal_const_residual(const FocalPair& pair, const Point4& a_e, const Point4& a_h);
// The constant itself, -|f_h f_e|.
double focal_constant(const FocalPair& pair);

// The Steiner chain data attached to one dual pair: an ellipse arc, the
// hyperboloid patch dual to it, and the circles/spheres the chains are based on.
struct ChainRadii {
  double r_splus_e = 0.0;
  double r_splus_h = 0.0;
  Point4 focus_e = Point4::Zero();
  Point4 focus_h = Point4::Zero();
  double width = 0.0;
  EllipseArc arc;
  HyperboloidPatch patch;

  ChainRadii transformed(const Isometry4& motion) const;
};

// Unchecked radius formulas.
inline double elliptic_radius(const ChainRadii& chain, const Point4& y) {
  return chain.r_splus_e - (y - chain.focus_e).norm();
}
inline double hyperbolic_radius(const ChainRadii& chain, const Point4& x) {
  return chain.r_splus_h - (x - chain.focus_h).norm();
}

// R_y for y on the arc; throws OffArc otherwise.
double steiner_radius_elliptic(const ChainRadii& chain, const Point4& y);
// R_x for x on the patch; throws OffPatch otherwise.
double steiner_radius_hyperbolic(const ChainRadii& chain, const Point4& x);
// (|x y| + R_x + R_y) - width.
double constante_residual(const ChainRadii& chain, const Point4& x, const Point4& y);

// Center of the disk tangent internally to S+ and externally to S-, found by
// bisection along the ray from f_e in direction `dir` (in the ellipse plane).
Point4 elliptic_chain_center(const Quadric& ellipse, double r_plus, double r_minus,
                             const Vec4& dir);
// Center of the ball tangent internally to both spheres about the hyperboloid's
// foci, searched along the ray from the right focus in direction `dir`.
Point4 hyperbolic_chain_center(const Quadric& hyperboloid, double r_plus, double r_minus,
                               const Vec4& dir);

}  // namespace peabody4d
