#include "peabody4d/focal.hpp"

#include <algorithm>
#include <cmath>

#include "peabody4d/error.hpp"

namespace peabody4d {

namespace {

constexpr double kDomainTol = 1e-9;

double line_distance(const Point4& p, const Point4& origin, const Vec4& dir) {
  const Vec4 d = p - origin;
  return (d - d.dot(dir) * dir).norm();
}

// Root of a monotone function on [lo, hi] given opposite signs at the ends.
template <class F>
double bisect(F f, double lo, double hi) {
  const bool rising = f(lo) < 0.0;
  if ((f(lo) < 0.0) == (f(hi) < 0.0)) {
    throw Error(ErrorCode::NoConvergence, "tangency search bracket has no sign change");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FocalPair FocalPair::transformed(const Isometry4& motion) const {
  FocalPair out;
  out.ellipse = ellipse.transformed(motion);
  out.hyperboloid = hyperboloid.transformed(motion);
  out.axis_point = motion.apply(axis_point);
  out.axis_dir = motion.apply_vector(axis_dir);
  return out;
}

Point4 FocalPair::ellipse_focus() const {
  // Both ellipse foci are sheet vertices of the hyperboloid; take the right one.
  const auto [f1, f2] = ellipse.foci();
  return sheet_of(hyperboloid, f1) > 0 ? f1 : f2;
}

Point4 FocalPair::hyperboloid_focus() const { return hyperboloid.foci().first; }

FocalPair standard_focal_pair(double a_sq) {
  FocalPair pair;
  pair.ellipse = standard_ellipse(a_sq);
  pair.hyperboloid = standard_hyperboloid(a_sq);
  return pair;
}

double FocalPairDefect::max() const {
  return std::max({axis_distance, carrier_orthogonality, focus_on_other});
}

FocalPairDefect validate_focal_pair(const FocalPair& pair) {
  FocalPairDefect d{};
  const Quadric& e = pair.ellipse;
  const Quadric& h = pair.hyperboloid;
  for (const Quadric* q : {&e, &h}) {
    const Vec4 dir = q->frame.axes.col(0);
    d.axis_distance = std::max(d.axis_distance, line_distance(q->frame.origin, pair.axis_point,
                                                              pair.axis_dir));
    d.axis_distance = std::max(d.axis_distance, (dir - dir.dot(pair.axis_dir) * pair.axis_dir).norm());
  }
  // The ellipse's minor direction must be the normal of the hyperboloid's 3-space.
  const Vec4 e_minor = e.frame.axes.col(2);
  const Vec4 h_normal = h.frame.axes.col(2);
  d.carrier_orthogonality = 1.0 - std::abs(e_minor.dot(h_normal));
  const auto [ef1, ef2] = e.foci();
  const auto [hf1, hf2] = h.foci();
  for (const Point4& f : {ef1, ef2}) {
    const auto r = quadric_residual(h, f);
    d.focus_on_other = std::max({d.focus_on_other, std::abs(r.residual), r.out_of_carrier});
  }
  for (const Point4& f : {hf1, hf2}) {
    const auto r = quadric_residual(e, f);
    d.focus_on_other = std::max({d.focus_on_other, std::abs(r.residual), r.out_of_carrier});
  }
  return d;
}

int sheet_of(const Quadric& hyperboloid, const Point4& p) {
  return hyperboloid.frame.to_local(p)(0) >= 0.0 ? 1 : -1;
}

double focal_sum_residual(const Quadric& /*ellipse*/, const Quadric& hyperboloid,
                          const Point4& a_e, const Point4& b_e, const Point4& a_h,
                          const Point4& b_h) {
  if (sheet_of(hyperboloid, a_h) != sheet_of(hyperboloid, b_h)) {
    throw Error(ErrorCode::NotSameComponent, "a_h and b_h lie on different sheets");
  }
  return ((a_e - a_h).norm() + (b_e - b_h).norm()) - ((a_h - b_e).norm() + (a_e - b_h).norm());
}

double focal_const_residual(const FocalPair& pair, const Point4& a_e, const Point4& a_h) {
  if (sheet_of(pair.hyperboloid, a_h) < 0) {
    throw Error(ErrorCode::WrongComponent, "a_h must lie on the sheet through the ellipse focus");
  }
  const Point4 f_e = pair.ellipse_focus();
  const Point4 f_h = pair.hyperboloid_focus();
  return (a_e - a_h).norm() - (a_h - f_h).norm() - (a_e - f_e).norm() + (f_h - f_e).norm();
}

double focal_constant(const FocalPair& pair) {
  return -(pair.hyperboloid_focus() - pair.ellipse_focus()).norm();
}

ChainRadii ChainRadii::transformed(const Isometry4& motion) const {
  ChainRadii out = *this;
  out.focus_e = motion.apply(focus_e);
  out.focus_h = motion.apply(focus_h);
  out.arc.ellipse = arc.ellipse.transformed(motion);
  out.patch.hyperboloid = patch.hyperboloid.transformed(motion);
  for (auto& cut : out.patch.cuts) cut = cut.transformed(motion);
  return out;
}

double steiner_radius_elliptic(const ChainRadii& chain, const Point4& y) {
  if (!chain.arc.contains(y, kDomainTol)) {
    throw Error(ErrorCode::OffArc, "point is not on the chain's ellipse arc");
  }
  return std::max(0.0, elliptic_radius(chain, y));
}

double steiner_radius_hyperbolic(const ChainRadii& chain, const Point4& x) {
  if (!chain.patch.contains(x, kDomainTol)) {
    throw Error(ErrorCode::OffPatch, "point is not on the chain's hyperboloid patch");
  }
  return std::max(0.0, hyperbolic_radius(chain, x));
}

double constante_residual(const ChainRadii& chain, const Point4& x, const Point4& y) {
  return (x - y).norm() + steiner_radius_hyperbolic(chain, x) +
         steiner_radius_elliptic(chain, y) - chain.width;
}

Point4 elliptic_chain_center(const Quadric& ellipse, double r_plus, double r_minus,
                             const Vec4& dir) {
  const auto [f_plus, f_minus] = ellipse.foci();
  const Vec4 u = dir.normalized();
  auto g = [&](double s) {
    const Point4 c = f_plus + s * u;
    return (c - f_minus).norm() - r_minus - (r_plus - s);
  };
  return f_plus + bisect(g, 0.0, r_plus) * u;
}

Point4 hyperbolic_chain_center(const Quadric& hyperboloid, double r_plus, double r_minus,
                               const Vec4& dir) {
  const auto [f_plus, f_minus] = hyperboloid.foci();
  const Vec4 u = dir.normalized();
  auto g = [&](double s) {
    const Point4 c = f_plus + s * u;
    return (c - f_minus).norm() + (r_plus - s) - r_minus;
  };
  return f_plus + bisect(g, 0.0, r_plus) * u;
}

}  // namespace peabody4d
