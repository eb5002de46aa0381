#include "peabody4d/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "peabody4d/error.hpp"
#include "peabody4d/parallel.hpp"
#include "peabody4d/sampling.hpp"

namespace peabody4d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kLeafSize = 8;
constexpr double kCapTolerance = 1e-11;

// Exit parameter of the ray o + t u from a ball, b = u.(c - o),
// k = rho^2 - |c - o|^2 >= 0. Written to avoid cancellation for b < 0.
double exit_param(double b, double k) {
  const double root = std::sqrt(std::max(0.0, b * b + k));
  if (b >= 0.0) return b + root;
  return root - b > 0.0 ? std::max(0.0, k) / (root - b) : 0.0;
}

template <class F>
double golden_min(F f, double a, double b) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 90 && b - a > 1e-12; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return std::min({fc, fd, f(0.5 * (a + b))});
}

}  // namespace

void GridSpec::validate() const {
  if (radial < 1 || angular < 3 || angular % 3 != 0 || arc < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "grid needs radial >= 1, angular a positive multiple of 3, arc >= 2");
  }
}

GridSpec parse_grid(const std::string& text) {
  const auto x = text.find('x');
  GridSpec g;
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, x);
    const std::string b = text.substr(x + 1);
    g.radial = std::stoi(a, &used_a);
    g.angular = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "grid must look like <radial>x<angular>, got '" + text + "'");
  }
  g.arc = std::max(2, 8 * g.angular / 3);
  g.validate();
  return g;
}

std::string piece_label(int piece) {
  if (piece >= 0 && piece < 5) {
    std::string s = "(";
    for (int v = 0; v < 5; ++v) {
      if (v != piece) s += std::to_string(v + 1);
    }
    return s + ")";
  }
  if (piece >= 5 && piece < 15) return triangle_label(piece - 5);
  if (piece >= 15 && piece < 25) return edge_label(piece - 15);
  throw Error(ErrorCode::UnclassifiedSample, "piece index out of range");
}

int parse_piece_label(const std::string& label) {
  for (int p = 0; p < kPieceCount; ++p) {
    if (piece_label(p) == label) return p;
  }
  return -1;
}

int piece_of_center(const BallCenter& b) {
  switch (b.kind) {
    case CenterKind::Vertex: return cap_piece(b.index);
    case CenterKind::Arc: return triangle_piece(b.index);
    case CenterKind::Patch: return edge_piece(b.index);
  }
  return -1;
}

std::string_view sample_source_name(SampleSource s) {
  switch (s) {
    case SampleSource::Phi1: return "phi1";
    case SampleSource::Phi2: return "phi2";
    case SampleSource::Vertex: return "vertex";
    case SampleSource::Cap: return "cap";
    case SampleSource::RayCast: return "ray";
  }
  return "unknown";
}

BallModel::BallModel(const FocalSkeleton& sk)
    : sk_(&sk), interior_(sk.simplex().centroid), width_(sk.constants().width) {
  for (int i = 0; i < 5; ++i) {
    centers_.push_back({sk.simplex().p[i], width_, CenterKind::Vertex, i, 0.0, 0.0});
  }
}

BallModel BallModel::reuleaux(const FocalSkeleton& sk) {
  BallModel m(sk);
  m.grid_ = GridSpec{0, 0, 0};
  m.vertices_only_ = true;
  m.build_tree();
  return m;
}

BallModel::BallModel(const FocalSkeleton& sk, const GridSpec& grid, const RadiusLaw& law)
    : BallModel(sk) {
  grid.validate();
  grid_ = grid;
  law_ = law;
  for (int k = 0; k < 10; ++k) {
    const SkeletonFace& e = sk.edge_face(k);
    for (int l = 1; l < grid.arc; ++l) {
      const double u = static_cast<double>(l) / grid.arc;
      const Point4 y = e.arc.at(u);
      centers_.push_back({y, width_ - arc_radius(k, y), CenterKind::Arc, k, u, 0.0});
    }
    const SkeletonFace& t = sk.triangle_face(k);
    const Point4 apex = t.patch.at(0.0, 0.0);
    centers_.push_back({apex, width_ - patch_radius(k, apex), CenterKind::Patch, k, 0.0, 0.0});
    // The outer ring s = 1 lies on the arcs, which carry their own nodes.
    for (int i = 1; i < grid.radial; ++i) {
      const double s = static_cast<double>(i) / grid.radial;
      for (int j = 0; j < grid.angular; ++j) {
        const double th = kTwoPi * j / grid.angular;
        const Point4 x = t.patch.at(s, th);
        centers_.push_back({x, width_ - patch_radius(k, x), CenterKind::Patch, k, s, th});
      }
    }
  }

  // Covering radius: the largest distance from a skeleton point to its
  // nearest node, measured on one face pair (all faces are congruent).
  // Patch cells are probed on a 5 x 5 lattice against their corners; outer
  // corners are not nodes but lie on an arc, within half an arc step of one.
  const SkeletonFace& e0 = sk.edge_face(0);
  double arc_step = 0.0;
  for (int l = 0; l < grid.arc; ++l) {
    arc_step = std::max(arc_step, (e0.arc.at(static_cast<double>(l) / grid.arc) -
                                   e0.arc.at(static_cast<double>(l + 1) / grid.arc)).norm());
  }
  const HyperboloidPatch& p0 = sk.triangle_face(0).patch;
  double cover = 0.0;
  for (int i = 0; i < grid.radial; ++i) {
    for (int j = 0; j < grid.angular; ++j) {
      const double s0 = static_cast<double>(i) / grid.radial;
      const double t0 = kTwoPi * j / grid.angular;
      const double ds = 1.0 / grid.radial;
      const double dt = kTwoPi / grid.angular;
      const Point4 corner[4] = {p0.at(s0, t0), p0.at(s0 + ds, t0), p0.at(s0, t0 + dt),
                                p0.at(s0 + ds, t0 + dt)};
      for (int a = 0; a <= 4; ++a) {
        for (int b = 0; b <= 4; ++b) {
          const Point4 q = p0.at(s0 + ds * a / 4.0, t0 + dt * b / 4.0);
          double near = kInf;
          for (const auto& c : corner) near = std::min(near, (q - c).norm());
          cover = std::max(cover, near);
        }
      }
    }
  }
  spacing_ = std::max(0.5 * arc_step, 1.1 * cover + 0.5 * arc_step);

  for (const auto& b : centers_) {
    if (!(b.rho - (interior_ - b.c).norm() >= 1e-6)) {
      throw Error(ErrorCode::InteriorPointNotInterior,
                  "centroid is not strictly inside every ball of the model");
    }
  }
  build_tree();
}

double BallModel::arc_radius(int pair, const Point4& y) const {
  return law_(elliptic_radius(sk_->chain(pair), y));
}

double BallModel::patch_radius(int pair, const Point4& x) const {
  return law_(hyperbolic_radius(sk_->chain(pair), x));
}

int BallModel::face_of(const BallCenter& b) const {
  if (b.kind == CenterKind::Vertex) return -1;
  return b.kind == CenterKind::Arc ? b.index : 10 + b.index;
}

// The centers are stored grouped by face (vertices first), and every face
// gets its own subtree so that per-face queries can start from it.
void BallModel::build_tree() {
  nodes_.clear();
  nodes_.reserve(4 * centers_.size() / kLeafSize + 64);
  face_root_.fill(-1);
  std::vector<int> bounds{0};
  for (int i = 1; i < static_cast<int>(centers_.size()); ++i) {
    if (face_of(centers_[i]) != face_of(centers_[i - 1])) bounds.push_back(i);
  }
  bounds.push_back(static_cast<int>(centers_.size()));
  build_groups(bounds, 0, static_cast<int>(bounds.size()) - 1);
}

int BallModel::build_groups(const std::vector<int>& bounds, int lo, int hi) {
  if (hi - lo == 1) {
    const int id = build_node(bounds[lo], bounds[lo + 1]);
    const int f = face_of(centers_[bounds[lo]]);
    if (f >= 0) face_root_[f] = id;
    return id;
  }
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(make_node(bounds[lo], bounds[hi]));
  const int mid = (lo + hi) / 2;
  const int left = build_groups(bounds, lo, mid);
  const int right = build_groups(bounds, mid, hi);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

BallModel::Node BallModel::make_node(int begin, int end) const {
  Node n;
  n.begin = begin;
  n.end = end;
  Point4 m = Point4::Zero();
  n.rho_min = kInf;
  for (int i = begin; i < end; ++i) {
    m += centers_[i].c;
    n.rho_min = std::min(n.rho_min, centers_[i].rho);
  }
  n.m = m / (end - begin);
  n.r = 0.0;
  for (int i = begin; i < end; ++i) n.r = std::max(n.r, (centers_[i].c - n.m).norm());
  return n;
}

int BallModel::build_node(int begin, int end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(make_node(begin, end));
  if (end - begin <= kLeafSize) return id;
  Point4 lo = Point4::Constant(kInf);
  Point4 hi = Point4::Constant(-kInf);
  for (int i = begin; i < end; ++i) {
    lo = lo.cwiseMin(centers_[i].c);
    hi = hi.cwiseMax(centers_[i].c);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(centers_.begin() + begin, centers_.begin() + mid, centers_.begin() + end,
                   [axis](const BallCenter& a, const BallCenter& b) {
                     if (a.c(axis) != b.c(axis)) return a.c(axis) < b.c(axis);
                     // Deterministic tie break.
                     if (a.index != b.index) return a.index < b.index;
                     if (a.kind != b.kind) return a.kind < b.kind;
                     if (a.u != b.u) return a.u < b.u;
                     return a.v < b.v;
                   });
  const int left = build_node(begin, mid);
  const int right = build_node(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

BallModel::Query BallModel::slack(const Point4& p) const { return slack_in(0, p, kInf); }

// Smallest slack below cutoff within the subtree at root, index -1 if none.
BallModel::Query BallModel::slack_in(int root, const Point4& p, double cutoff) const {
  Query q{cutoff, -1};
  int stack[128];
  int top = 0;
  stack[top++] = root;
  while (top > 0) {
    const Node& n = nodes_[stack[--top]];
    if (n.rho_min - (p - n.m).norm() - n.r >= q.slack) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        const double s = centers_[i].rho - (p - centers_[i].c).norm();
        if (s < q.slack) q = {s, i};
      }
      continue;
    }
    const Node& a = nodes_[n.left];
    const Node& b = nodes_[n.right];
    const double la = a.rho_min - (p - a.m).norm() - a.r;
    const double lb = b.rho_min - (p - b.m).norm() - b.r;
    if (la < lb) {
      stack[top++] = n.right;
      stack[top++] = n.left;
    } else {
      stack[top++] = n.left;
      stack[top++] = n.right;
    }
  }
  return q;
}

int BallModel::nearest(const Point4& p) const {
  double best = kInf;
  int best_i = -1;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if ((p - n.m).norm() - n.r >= best) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        const double d = (p - centers_[i].c).norm();
        if (d < best) {
          best = d;
          best_i = i;
        }
      }
      continue;
    }
    const bool left_first = (p - nodes_[n.left].m).norm() < (p - nodes_[n.right].m).norm();
    stack.push_back(left_first ? n.right : n.left);
    stack.push_back(left_first ? n.left : n.right);
  }
  return best_i;
}

std::vector<int> BallModel::active_set(const Point4& p, double tol) const {
  std::vector<int> out;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (n.rho_min - (p - n.m).norm() - n.r > tol) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        if (centers_[i].rho - (p - centers_[i].c).norm() <= tol) out.push_back(i);
      }
      continue;
    }
    stack.push_back(n.left);
    stack.push_back(n.right);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BallModel::Hit BallModel::ray_cast(const Point4& origin, const Vec4& dir) const {
  const Vec4 u = dir.normalized();
  auto lower_bound = [&](const Node& n) {
    const Vec4 d = n.m - origin;
    const double b_lo = u.dot(d) - n.r;
    const double far = d.norm() + n.r;
    const double k_lo = std::max(0.0, n.rho_min * n.rho_min - far * far);
    return exit_param(b_lo, k_lo);
  };
  double best = kInf;
  int best_i = -1;
  int stack[128];
  double bound[128];
  int top = 0;
  stack[top] = 0;
  bound[top++] = lower_bound(nodes_[0]);
  while (top > 0) {
    --top;
    if (bound[top] >= best) continue;
    const Node& n = nodes_[stack[top]];
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        const Vec4 d = centers_[i].c - origin;
        const double k = centers_[i].rho * centers_[i].rho - d.squaredNorm();
        if (k <= 0.0) {
          throw Error(ErrorCode::InteriorPointNotInterior, "ray origin lies outside a ball");
        }
        const double t = exit_param(u.dot(d), k);
        if (t < best) {
          best = t;
          best_i = i;
        }
      }
      continue;
    }
    const double la = lower_bound(nodes_[n.left]);
    const double lb = lower_bound(nodes_[n.right]);
    if (la < lb) {
      stack[top] = n.right;
      bound[top++] = lb;
      stack[top] = n.left;
      bound[top++] = la;
    } else {
      stack[top] = n.left;
      bound[top++] = la;
      stack[top] = n.right;
      bound[top++] = lb;
    }
  }
  return {origin + best * u, best, best_i};
}

double BallModel::refine_arc(int pair, double u0, const Point4& p) const {
  const EllipseArc& arc = sk_->edge_face(pair).arc;
  const double h = 2.0 / grid_.arc;
  auto f = [&](double u) {
    const Point4 y = arc.at(u);
    return width_ - arc_radius(pair, y) - (p - y).norm();
  };
  return golden_min(f, std::max(0.0, u0 - h), std::min(1.0, u0 + h));
}

double BallModel::refine_patch(int pair, double s0, double th0, const Point4& p) const {
  const HyperboloidPatch& patch = sk_->triangle_face(pair).patch;
  auto f = [&](double s, double th) {
    const Point4 x = patch.at(std::clamp(s, 0.0, 1.0), th);
    return width_ - patch_radius(pair, x) - (p - x).norm();
  };
  double hs = 1.0 / grid_.radial;
  double ht = kTwoPi / grid_.angular;
  double s = s0, th = th0;
  double best = f(s, th);
  for (int iter = 0; iter < 2000 && hs > 1e-9; ++iter) {
    double bs = s, bt = th, bv = best;
    for (int a = -1; a <= 1; ++a) {
      for (int b = -1; b <= 1; ++b) {
        if (a == 0 && b == 0) continue;
        const double cs = std::clamp(s + a * hs, 0.0, 1.0);
        const double ct = th + b * ht;
        const double v = f(cs, ct);
        if (v < bv) {
          bv = v;
          bs = cs;
          bt = ct;
        }
      }
    }
    if (bv < best) {
      best = bv;
      s = bs;
      th = bt;
    } else {
      hs *= 0.5;
      ht *= 0.5;
    }
  }
  return best;
}

double BallModel::continuous_slack(const Point4& p) const {
  const Query q = slack(p);
  if (vertices_only_) return q.slack;
  const double tau = 2.1 * spacing_;
  if (q.slack >= tau) return q.slack;
  double best = q.slack;
  // Refine every face whose best node is nearly tight.
  for (int f = 0; f < 20; ++f) {
    if (face_root_[f] < 0) continue;
    const Query seed = slack_in(face_root_[f], p, tau);
    if (seed.index < 0) continue;
    const BallCenter& b = centers_[seed.index];
    const double v = f < 10 ? refine_arc(b.index, b.u, p) : refine_patch(b.index, b.u, b.v, p);
    best = std::min(best, v);
  }
  return best;
}

Point4 phi1(const ChainRadii& chain, const Point4& x, const Point4& y, const RadiusLaw& law) {
  const Vec4 d = x - y;
  const double n = d.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::DomainError, "phi1 needs x != y");
  return x + law(hyperbolic_radius(chain, x)) * d / n;
}

Point4 phi2(const ChainRadii& chain, const Point4& x, const Point4& y, const RadiusLaw& law) {
  const Vec4 d = y - x;
  const double n = d.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::DomainError, "phi2 needs x != y");
  return y + law(elliptic_radius(chain, y)) * d / n;
}

namespace {

struct PhiLattice {
  std::vector<std::array<double, 2>> xs;  // (s, theta)
  std::vector<double> us;
};

PhiLattice phi_lattice(const PhiGrid& grid) {
  PhiLattice lat;
  const bool on_nodes = grid.offset == 0.0;
  const int stride = std::max(1, grid.stride);
  for (int i = 0; i < grid.radial; i += stride) {
    const double s = (i + grid.offset) / grid.radial;
    for (int j = 0; j < grid.angular; j += stride) {
      if (on_nodes && i == 0 && j > 0) break;  // the apex once
      lat.xs.push_back({s, kTwoPi * (j + grid.offset) / grid.angular});
    }
  }
  for (int l = 0; l <= grid.arc; l += stride) {
    if (on_nodes && (l == 0 || l == grid.arc)) continue;  // simplex vertices
    if (!on_nodes && l == grid.arc) break;
    lat.us.push_back((l + grid.offset) / grid.arc);
  }
  return lat;
}

}  // namespace

std::size_t phi_sample_count(const PhiGrid& grid) {
  const PhiLattice lat = phi_lattice(grid);
  return 20 * lat.xs.size() * lat.us.size();
}

std::vector<BoundarySample> phi_samples(const BallModel& model, const PhiGrid& grid) {
  const FocalSkeleton& sk = model.skeleton();
  const PhiLattice lat = phi_lattice(grid);
  const auto& xs = lat.xs;
  const auto& us = lat.us;
  const std::size_t per_pair = xs.size() * us.size();
  std::vector<BoundarySample> out(20 * per_pair);
  parallel_for(10 * per_pair, [&](std::size_t idx) {
    const int k = static_cast<int>(idx / per_pair);
    const std::size_t r = idx % per_pair;
    const auto& xp = xs[r / us.size()];
    const double u = us[r % us.size()];
    const ChainRadii& chain = sk.chain(k);
    const Point4 x = sk.triangle_face(k).patch.at(xp[0], xp[1]);
    const Point4 y = sk.edge_face(k).arc.at(u);
    for (int which = 0; which < 2; ++which) {
      BoundarySample& s = out[2 * idx + which];
      s.pair = k;
      s.params = {xp[0], xp[1], u};
      s.x = x;
      s.y = y;
      if (which == 0) {
        s.source = SampleSource::Phi1;
        s.piece = triangle_piece(k);
        s.point = phi1(chain, x, y, model.law());
      } else {
        s.source = SampleSource::Phi2;
        s.piece = edge_piece(k);
        s.point = phi2(chain, x, y, model.law());
      }
      const auto q = model.slack(s.point);
      s.slack = q.slack;
      s.active_center = q.index;
    }
  });
  return out;
}

BoundarySample ray_sample(const BallModel& model, const Vec4& u, bool verify_caps) {
  const auto hit = model.ray_cast(u);
  const BallCenter& b = model.centers()[hit.index];
  BoundarySample s;
  s.point = hit.point;
  s.active_center = hit.index;
  s.piece = piece_of_center(b);
  s.slack = b.rho - (hit.point - b.c).norm();
  s.source = SampleSource::RayCast;
  if (b.kind == CenterKind::Vertex && verify_caps &&
      model.continuous_slack(hit.point) >= -kCapTolerance) {
    s.source = SampleSource::Cap;
  }
  return s;
}

std::vector<BoundarySample> ray_samples(const BallModel& model, std::size_t count,
                                        std::uint64_t skip, bool verify_caps) {
  std::vector<BoundarySample> out(count);
  parallel_for(count, [&](std::size_t i) {
    out[i] = ray_sample(model, halton_direction(skip + i), verify_caps);
  });
  return out;
}

std::vector<BoundarySample> vertex_samples(const BallModel& model) {
  std::vector<BoundarySample> out;
  const auto& centers = model.centers();
  for (int i = 0; i < 5; ++i) {
    const int j = (i + 1) % 5;
    BoundarySample s;
    s.point = model.skeleton().simplex().p[i];
    s.source = SampleSource::Vertex;
    s.piece = cap_piece(j);
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (centers[c].kind == CenterKind::Vertex && centers[c].index == j) {
        s.active_center = static_cast<int>(c);
      }
    }
    s.slack = model.slack(s.point).slack;
    out.push_back(s);
  }
  return out;
}

std::vector<BoundarySample> sample_theta(const BallModel& model, std::size_t n) {
  std::vector<BoundarySample> out = vertex_samples(model);
  if (n <= out.size()) {
    out.resize(n);
    return out;
  }
  // Envelope images on the model's own nodes, thinned to about half the budget.
  const std::size_t budget = (n - out.size()) / 2;
  const GridSpec& g = model.grid();
  if (!model.vertices_only() && budget > 0) {
    PhiGrid pg{g.radial, g.angular, g.arc, 0.0, 1};
    while (phi_sample_count(pg) > budget && pg.stride < g.arc) ++pg.stride;
    if (phi_sample_count(pg) <= budget) {
      const auto phi = phi_samples(model, pg);
      out.insert(out.end(), phi.begin(), phi.end());
    }
  }
  const auto rays = ray_samples(model, n - out.size());
  out.insert(out.end(), rays.begin(), rays.end());
  return out;
}

Point4 binormal_partner(const BallModel& model, const BoundarySample& s) {
  switch (s.source) {
    case SampleSource::Phi1:
      return phi2(model.skeleton().chain(s.pair), s.x, s.y, model.law());
    case SampleSource::Phi2:
      return phi1(model.skeleton().chain(s.pair), s.x, s.y, model.law());
    default:
      break;
  }
  if (s.piece < 0 || s.active_center < 0 ||
      s.active_center >= static_cast<int>(model.centers().size())) {
    throw Error(ErrorCode::UnclassifiedSample, "sample carries no face label");
  }
  const BallCenter& b = model.centers()[s.active_center];
  const Vec4 d = b.c - s.point;
  return b.c + (model.width() - b.rho) * d / d.norm();
}

double width_in_direction(const std::vector<BoundarySample>& samples, const Vec4& u,
                          std::size_t min_samples) {
  if (samples.size() < min_samples) {
    throw Error(ErrorCode::TooFewSamples, "width needs at least " + std::to_string(min_samples) +
                                              " samples, got " + std::to_string(samples.size()));
  }
  double lo = kInf, hi = -kInf;
  for (const auto& s : samples) {
    const double h = s.point.dot(u);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  return hi - lo;
}

DiameterReport diameter_check(const BallModel& model, const std::vector<BoundarySample>& samples,
                              std::size_t pairs, std::uint64_t seed) {
  DiameterReport r;
  const auto& p = model.skeleton().simplex().p;
  r.vertex_pair = (p[0] - p[1]).norm();
  std::vector<Point4> exact;
  for (const auto& s : samples) {
    if (s.exact()) exact.push_back(s.point);
  }
  r.exact_samples = exact.size();
  std::vector<double> dev(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    dev[i] = std::abs((samples[i].point - binormal_partner(model, samples[i])).norm() - model.width());
  });
  for (double d : dev) r.max_partner_deviation = std::max(r.max_partner_deviation, d);
  r.max_pair_distance = r.vertex_pair;
  if (exact.size() >= 2) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, exact.size() - 1);
    for (std::size_t k = 0; k < pairs; ++k) {
      const double d = (exact[pick(rng)] - exact[pick(rng)]).norm();
      r.max_pair_distance = std::max(r.max_pair_distance, d);
    }
    r.pairs = pairs;
  }
  return r;
}

ConvergenceStudy convergence_study(const FocalSkeleton& sk, const GridSpec& coarse, int stride,
                                   const RadiusLaw& law) {
  ConvergenceStudy st;
  st.coarse = coarse;
  const BallModel m1(sk, coarse, law);
  const BallModel m2(sk, coarse.refined(), law);
  const auto samples =
      phi_samples(m1, PhiGrid{coarse.radial, coarse.angular, coarse.arc, 1.0 / 3.0, stride});
  st.samples = samples.size();
  std::vector<double> fine(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { fine[i] = m2.slack(samples[i].point).slack; });
  st.residual_coarse = -kInf;
  st.residual_fine = -kInf;
  st.min_slack = kInf;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    st.residual_coarse = std::max(st.residual_coarse, samples[i].slack);
    st.residual_fine = std::max(st.residual_fine, fine[i]);
    st.min_slack = std::min({st.min_slack, samples[i].slack, fine[i]});
  }
  st.ratio = st.residual_coarse / st.residual_fine;
  return st;
}

}  // namespace peabody4d
