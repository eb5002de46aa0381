#include "peabody4d/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "peabody4d/error.hpp"

namespace peabody4d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit vector orthogonal to the three given vectors.
Vec4 normal_to(const Vec4& a, const Vec4& b, const Vec4& c) {
  Eigen::Matrix<double, 3, 4> m;
  m.row(0) = a.transpose();
  m.row(1) = b.transpose();
  m.row(2) = c.transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(3).normalized();
}

int face_for_vertex_set(int a, int b) { return edge_index(a, b); }

// Image of a face under a vertex permutation.
int image_face(const SkeletonFace& f, const Permutation& perm) {
  const auto& e = edge_list()[f.pair];
  const int k = face_for_vertex_set(perm[e[0]], perm[e[1]]);
  return f.kind == SkeletonFace::Kind::Edge ? k : 10 + k;
}

}  // namespace

Vec4 Simplex4::axis_direction(int i, int j) const {
  int rest[3];
  int n = 0;
  for (int v = 0; v < 5; ++v) {
    if (v != i && v != j) rest[n++] = v;
  }
  return (barycenter(rest[0], rest[1], rest[2]) - midpoint(i, j)).normalized();
}

Simplex4 build_simplex(const ModelConstants& c) {
  Simplex4 s;
  const double h = 0.5 * std::sqrt(3.0) * c.y0;
  s.p[0] = Point4(c.x1, 0.0, c.z1, 0.0);
  s.p[1] = Point4(c.x1, 0.0, -c.z1, 0.0);
  s.p[2] = Point4(c.x0, c.y0, 0.0, 0.0);
  s.p[3] = Point4(c.x0, -0.5 * c.y0, 0.0, -h);
  s.p[4] = Point4(c.x0, -0.5 * c.y0, 0.0, h);
  s.centroid = Point4((2.0 * c.x1 + 3.0 * c.x0) / 5.0, 0.0, 0.0, 0.0);
  s.edge = 2.0 * c.z1;
  return s;
}

std::size_t permutation_rank(const Permutation& perm) {
  static constexpr int kFactorial[5] = {24, 6, 2, 1, 1};
  std::size_t rank = 0;
  for (int i = 0; i < 5; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 5; ++j) smaller += perm[j] < perm[i];
    rank += static_cast<std::size_t>(smaller * kFactorial[i]);
  }
  return rank;
}

SymmetryGroup::SymmetryGroup(const Simplex4& s) {
  Permutation perm = identity_permutation();
  elements_.reserve(120);
  do {
    elements_.push_back({perm, isometry_from_vertex_permutation(s.vertices(), perm)});
  } while (std::next_permutation(perm.begin(), perm.end()));
}

const SymmetryElement& SymmetryGroup::find(const Permutation& perm) const {
  return elements_.at(permutation_rank(perm));
}

double SymmetryGroup::closure_defect() const {
  double worst = 0.0;
  for (const auto& a : elements_) {
    for (const auto& b : elements_) {
      const auto& ab = find(compose(a.perm, b.perm));
      const Isometry4 prod = a.motion * b.motion;
      worst = std::max(worst, (prod.linear - ab.motion.linear).cwiseAbs().maxCoeff());
      worst = std::max(worst, (prod.translation - ab.motion.translation).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

const std::array<std::array<int, 2>, 10>& edge_list() {
  static const std::array<std::array<int, 2>, 10> edges = {{
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
  }};
  return edges;
}

std::array<int, 3> complement_triangle(int k) {
  const auto& e = edge_list().at(k);
  std::array<int, 3> t{};
  int n = 0;
  for (int v = 0; v < 5; ++v) {
    if (v != e[0] && v != e[1]) t[n++] = v;
  }
  return t;
}

int edge_index(int i, int j) {
  if (i > j) std::swap(i, j);
  const auto& edges = edge_list();
  for (int k = 0; k < 10; ++k) {
    if (edges[k][0] == i && edges[k][1] == j) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "not an edge of the simplex");
}

int triangle_index(int i, int j, int k) {
  bool used[5] = {false, false, false, false, false};
  used[i] = used[j] = used[k] = true;
  int rest[2];
  int n = 0;
  for (int v = 0; v < 5; ++v) {
    if (!used[v]) {
      if (n == 2) throw Error(ErrorCode::InvalidArgument, "not a triangle of the simplex");
      rest[n++] = v;
    }
  }
  if (n != 2) throw Error(ErrorCode::InvalidArgument, "not a triangle of the simplex");
  return edge_index(rest[0], rest[1]);
}

std::string edge_label(int k) {
  const auto& e = edge_list().at(k);
  return "(" + std::to_string(e[0] + 1) + std::to_string(e[1] + 1) + ")";
}

std::string triangle_label(int k) {
  const auto t = complement_triangle(k);
  return "(" + std::to_string(t[0] + 1) + std::to_string(t[1] + 1) + std::to_string(t[2] + 1) +
         ")";
}

Point4 SkeletonFace::sample(double u, double v) const {
  return kind == Kind::Edge ? arc.at(u) : patch.at(u, v);
}

double SkeletonFace::distance_bound(const Point4& p) const {
  return kind == Kind::Edge ? arc.distance_bound(p) : patch.distance_bound(p);
}

EllipseArc base_edge_arc(const ModelConstants& c) {
  EllipseArc arc;
  arc.ellipse = standard_ellipse(c.a_sq);
  const double t1 = std::atan2(c.z1 / std::sqrt(c.a_sq - 1.0), c.x1 / std::sqrt(c.a_sq));
  arc.t_begin = -t1;
  arc.t_end = t1;
  return arc;
}

HyperboloidPatch base_triangle_patch(const ModelConstants& c, const Simplex4& s) {
  HyperboloidPatch patch;
  patch.hyperboloid = standard_hyperboloid(c.a_sq);
  const Vec4 carrier_normal = patch.hyperboloid.frame.axes.col(2);
  const Point4 sheet_vertex = patch.hyperboloid.frame.to_world(Point4(1, 0, 0, 0));
  const int edges[3][2] = {{2, 3}, {3, 4}, {2, 4}};
  for (int m = 0; m < 3; ++m) {
    const int i = edges[m][0];
    const int j = edges[m][1];
    const Point4 mid = s.midpoint(i, j);
    Vec4 n = normal_to(carrier_normal, s.p[j] - s.p[i], s.axis_direction(i, j));
    if (n.dot(sheet_vertex - mid) < 0.0) n = -n;
    patch.cuts[m] = HalfSpace{n, -n.dot(mid)};
  }
  return patch;
}

ChainRadii base_chain(const ModelConstants& c, const Simplex4& s) {
  ChainRadii chain;
  chain.r_splus_e = c.r_splus_e;
  chain.r_splus_h = c.r_splus_h;
  chain.focus_e = Point4(c.focus_e, 0, 0, 0);
  chain.focus_h = Point4(c.focus_h, 0, 0, 0);
  chain.width = c.width;
  chain.arc = base_edge_arc(c);
  chain.patch = base_triangle_patch(c, s);
  return chain;
}

Permutation phi_permutation() { return {3, 4, 2, 0, 1}; }

ClosureReport rotation_closure(const ModelConstants& c, int samples) {
  const Simplex4 s = build_simplex(c);
  const Isometry4 phi = isometry_from_vertex_permutation(s.vertices(), phi_permutation());
  const EllipseArc arc = base_edge_arc(c);
  const HyperboloidPatch patch = base_triangle_patch(c, s);
  const HalfSpace& gamma45 = patch.cuts[1];
  ClosureReport r{0.0, 0.0};
  for (int k = 0; k < samples; ++k) {
    const double u = samples > 1 ? static_cast<double>(k) / (samples - 1) : 0.5;
    const Point4 q = phi.apply(arc.at(u));
    const auto res = quadric_residual(patch.hyperboloid, q);
    r.quadric_residual = std::max(r.quadric_residual, std::abs(res.residual));
    r.plane_distance = std::max(
        {r.plane_distance, std::abs(gamma45.signed_distance(q)), res.out_of_carrier});
  }
  return r;
}

double rotation_closure_check(const ModelConstants& c, int samples) {
  return rotation_closure(c, samples).total();
}

CutPointReport cut_point(const ModelConstants& c) {
  const Simplex4 s = build_simplex(c);
  const Point4 p45 = s.midpoint(3, 4);
  // Walk from p45 away from the barycenter p123 until the line meets H.
  const Vec4 u = -s.axis_direction(3, 4);
  const double b_sq = c.a_sq - 1.0;
  // (p + t u): y^2 + w^2 - b^2 (x^2 - 1) = 0 as a quadratic in t.
  const double qa = u(1) * u(1) + u(3) * u(3) - b_sq * u(0) * u(0);
  const double qb = 2.0 * (p45(1) * u(1) + p45(3) * u(3) - b_sq * p45(0) * u(0));
  const double qc = p45(1) * p45(1) + p45(3) * p45(3) - b_sq * (p45(0) * p45(0) - 1.0);
  const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  const double q = -0.5 * (qb + std::copysign(disc, qb));
  double t = std::numeric_limits<double>::infinity();
  for (double root : {q / qa, qc / q}) {
    if (root > 0.0) t = std::min(t, root);
  }
  CutPointReport r;
  r.omega = p45 + t * u;
  r.distance = (r.omega - p45).norm();
  r.expected = std::sqrt(c.a_sq) - c.x1;
  return r;
}

TangentReport tangent_angles(const ModelConstants& c) {
  const Simplex4 s = build_simplex(c);
  TangentReport r;
  // E: z^2 + b^2 x^2 / a^2 = b^2, tangent at p1 is orthogonal to the gradient.
  const double b_sq = c.a_sq - 1.0;
  const Eigen::Vector2d grad_e(2.0 * b_sq * c.x1 / c.a_sq, 2.0 * c.z1);  // (x, z)
  const Eigen::Vector2d v_e(grad_e(1), -grad_e(0));
  r.tan_ellipse = v_e(0) / v_e(1);

  // H cap Gamma_45 at p4, worked in (x, y, w) coordinates.
  const Point4& p4 = s.p[3];
  const Eigen::Vector3d grad_h(-2.0 * b_sq * p4(0), 2.0 * p4(1), 2.0 * p4(3));
  const HyperboloidPatch patch = base_triangle_patch(c, s);
  const Vec4& n = patch.cuts[1].normal;
  const Eigen::Vector3d eta(n(0), n(1), n(3));
  const Eigen::Vector3d t3 = grad_h.cross(eta);
  const Vec4 v(t3(0), t3(1), 0.0, t3(2));
  const Vec4 u_l = s.axis_direction(3, 4);
  r.tan_rotated = v.dot(u_l) / v(3);
  r.expected = -3.0 * c.z1 / c.x1;
  return r;
}

FocalSkeleton::FocalSkeleton(const ModelConstants& c)
    : constants_(c), simplex_(build_simplex(c)), group_(simplex_) {
  const ChainRadii base = base_chain(c, simplex_);
  const FocalPair base_pair = standard_focal_pair(c.a_sq);
  const auto& edges = edge_list();
  for (int k = 0; k < 10; ++k) {
    const auto t = complement_triangle(k);
    const Permutation gen = {edges[k][0], edges[k][1], t[0], t[1], t[2]};
    const Isometry4& m = group_.find(gen).motion;
    chains_[k] = base.transformed(m);
    pairs_[k] = base_pair.transformed(m);

    SkeletonFace& e = faces_[k];
    e.kind = SkeletonFace::Kind::Edge;
    e.pair = k;
    e.label = edge_label(k);
    e.generator = gen;
    e.motion = m;
    e.arc = chains_[k].arc;

    SkeletonFace& tri = faces_[10 + k];
    tri.kind = SkeletonFace::Kind::Triangle;
    tri.pair = k;
    tri.label = triangle_label(k);
    tri.generator = gen;
    tri.motion = m;
    tri.patch = chains_[k].patch;
  }
}

namespace {

template <class F>
void for_face_samples(const SkeletonFace& f, int n, F&& visit) {
  if (f.kind == SkeletonFace::Kind::Edge) {
    for (int i = 0; i < n; ++i) visit(f.arc.at((i + 0.5) / n));
    return;
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < n; ++j) visit(f.patch.at(static_cast<double>(i) / n, kTwoPi * (j + 0.5) / n));
  }
}

}  // namespace

double FocalSkeleton::orbit_consistency(int samples) const {
  double worst = 0.0;
  const SkeletonFace& base_edge = faces_[0];
  const SkeletonFace& base_tri = faces_[10];
  for (const auto& g : group_) {
    for (const SkeletonFace* base : {&base_edge, &base_tri}) {
      const SkeletonFace& target = faces_[image_face(*base, g.perm)];
      for_face_samples(*base, samples, [&](const Point4& p) {
        worst = std::max(worst, target.distance_bound(g.motion.apply(p)));
      });
    }
  }
  return worst;
}

double FocalSkeleton::invariance_defect(int samples) const {
  double worst = 0.0;
  for (const auto& g : group_) {
    for (const SkeletonFace& f : faces_) {
      const SkeletonFace& target = faces_[image_face(f, g.perm)];
      for_face_samples(f, samples, [&](const Point4& p) {
        worst = std::max(worst, target.distance_bound(g.motion.apply(p)));
      });
    }
  }
  return worst;
}

double FocalSkeleton::triangle_boundary_defect(int pair, int samples) const {
  const SkeletonFace& tri = triangle_face(pair);
  const auto t = complement_triangle(pair);
  const int arcs[3] = {edge_index(t[0], t[1]), edge_index(t[1], t[2]), edge_index(t[0], t[2])};
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const Point4 q = tri.patch.at(1.0, kTwoPi * j / samples);
    double best = std::numeric_limits<double>::infinity();
    for (int a : arcs) best = std::min(best, edge_face(a).arc.distance_bound(q));
    worst = std::max(worst, best);
  }
  for (int a : arcs) {
    for (int i = 0; i <= samples; ++i) {
      const Point4 q = edge_face(a).arc.at(static_cast<double>(i) / samples);
      const Point4 rim = tri.patch.at(1.0, tri.patch.azimuth_of(q));
      worst = std::max(worst, (q - rim).norm());
    }
  }
  return worst;
}

double radius_consistency_residual(const FocalSkeleton& sk, const Point4& x) {
  const int k45 = edge_index(3, 4);
  const ChainRadii& dual = sk.chain(k45);
  const double r_prime = steiner_radius_elliptic(dual, x);
  return r_prime - hyperbolic_radius(sk.chain(0), x);
}

CapSeparationReport cap_separation(const FocalSkeleton& sk, int samples) {
  const Simplex4& s = sk.simplex();
  const Vec4 n = (s.p[2] - s.p[1]).normalized();
  const Point4& p1 = s.p[0];
  auto side = [&](const Point4& q) { return n.dot(q - p1); };
  auto phi1 = [&](const ChainRadii& chain, const Point4& x) {
    const Vec4 d = x - p1;
    return Point4(x + hyperbolic_radius(chain, x) * d / d.norm());
  };
  const ChainRadii& a = sk.chain(edge_index(0, 1));  // H345 with E12
  const ChainRadii& b = sk.chain(edge_index(0, 2));  // H245 with E13
  CapSeparationReport r{std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i <= samples; ++i) {
    for (int j = 0; j < samples; ++j) {
      const double sfrac = static_cast<double>(i) / samples;
      const double th = kTwoPi * j / samples;
      r.min_side_a = std::min(r.min_side_a, side(phi1(a, a.patch.at(sfrac, th))));
      r.min_side_b = std::min(r.min_side_b, -side(phi1(b, b.patch.at(sfrac, th))));
    }
  }
  const EllipseArc& shared = sk.edge_face(edge_index(3, 4)).arc;
  for (int i = 0; i <= samples; ++i) {
    const Point4 x = shared.at(static_cast<double>(i) / samples);
    r.boundary_dist = std::max({r.boundary_dist, std::abs(side(phi1(a, x))),
                                std::abs(side(phi1(b, x)))});
  }
  return r;
}

}  // namespace peabody4d
