#pragma once

#include <array>
#include <string>
#include <vector>

#include "peabody4d/focal.hpp"
#include "peabody4d/geometry.hpp"
#include "peabody4d/numerics.hpp"

namespace peabody4d {

struct Simplex4 {
  std::array<Point4, 5> p;
  Point4 centroid;
  double edge = 0.0;

  Point4 midpoint(int i, int j) const { return 0.5 * (p[i] + p[j]); }
  Point4 barycenter(int i, int j, int k) const { return (p[i] + p[j] + p[k]) / 3.0; }
  // Axis l_ij: unit direction from the midpoint of p_i p_j towards the
  // barycenter of the complementary triangle.
  Vec4 axis_direction(int i, int j) const;
  std::span<const Point4, 5> vertices() const { return std::span<const Point4, 5>(p); }
};

Simplex4 build_simplex(const ModelConstants& c);

struct SymmetryElement {
  Permutation perm;
  Isometry4 motion;
};

// The 120 motions, indexed by the lexicographic rank of their permutation.
class SymmetryGroup {
 public:
  explicit SymmetryGroup(const Simplex4& s);

  std::size_t size() const { return elements_.size(); }
  const SymmetryElement& operator[](std::size_t i) const { return elements_[i]; }
  const SymmetryElement& find(const Permutation& perm) const;
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  // Largest entry of motion(a o b) - motion(a) motion(b) over all pairs.
  double closure_defect() const;

 private:
  std::vector<SymmetryElement> elements_;
};

std::size_t permutation_rank(const Permutation& perm);

// Edges {i,j} in lexicographic order, 0-based. Dual pair k couples edge k with
// the triangle on the three remaining vertices.
const std::array<std::array<int, 2>, 10>& edge_list();
std::array<int, 3> complement_triangle(int edge_index);
int edge_index(int i, int j);
int triangle_index(int i, int j, int k);  // index of the edge it is dual to

// "(12)" / "(345)" with 1-based vertex numbers.
std::string edge_label(int edge_index);
std::string triangle_label(int edge_index);

struct SkeletonFace {
  enum class Kind { Edge, Triangle };
  Kind kind = Kind::Edge;
  int pair = 0;  // dual pair index, see edge_list()
  std::string label;
  Permutation generator{};  // smallest permutation carrying the base face here
  Isometry4 motion;
  EllipseArc arc;             // edge faces
  HyperboloidPatch patch;     // triangle faces

  Point4 sample(double u, double v) const;  // arc: u; patch: (s, theta)
  double distance_bound(const Point4& p) const;
};

EllipseArc base_edge_arc(const ModelConstants& c);
HyperboloidPatch base_triangle_patch(const ModelConstants& c, const Simplex4& s);
ChainRadii base_chain(const ModelConstants& c, const Simplex4& s);

// Permutation fixing vertex 3 and sending 1 -> 4, 2 -> 5 (0-based {3,4,2,0,1}).
Permutation phi_permutation();

struct ClosureReport {
  double quadric_residual;  // max |H residual| over samples of Phi(E12)
  double plane_distance;    // max distance to Gamma_45 (and the carrier 3-space)
  double total() const { return quadric_residual + plane_distance; }
};

// Samples Phi(E12) and measures how far it is from H and from Gamma_45.
ClosureReport rotation_closure(const ModelConstants& c, int samples = 200);
double rotation_closure_check(const ModelConstants& c, int samples = 200);

// The cut point omega on E45 closest to p45 along the axis line, together
// with the distance |omega - p45|.
struct CutPointReport {
  Point4 omega;
  double distance;
  double expected;  // sqrt(a^2) - x1
};
CutPointReport cut_point(const ModelConstants& c);

struct TangentReport {
  double tan_ellipse;   // slope of E at p1 against e_z
  double tan_rotated;   // slope of H cap Gamma_45 at p4 against e_w
  double expected;      // -3 z1 / x1
};
TangentReport tangent_angles(const ModelConstants& c);

class FocalSkeleton {
 public:
  explicit FocalSkeleton(const ModelConstants& c);

  const ModelConstants& constants() const { return constants_; }
  const Simplex4& simplex() const { return simplex_; }
  const SymmetryGroup& group() const { return group_; }
  // Faces 0..9 are edges in edge_list() order, 10..19 the dual triangles.
  const std::array<SkeletonFace, 20>& faces() const { return faces_; }
  const SkeletonFace& edge_face(int k) const { return faces_[k]; }
  const SkeletonFace& triangle_face(int k) const { return faces_[10 + k]; }
  const ChainRadii& chain(int pair) const { return chains_[pair]; }
  const FocalPair& focal_pair(int pair) const { return pairs_[pair]; }

  // Well-definedness: all motions carrying the base face onto face f agree on
  // samples (largest distance bound).
  double orbit_consistency(int samples_per_face) const;
  // Largest distance bound from motion(face samples) to the image face, over
  // the whole group.
  double invariance_defect(int samples_per_face) const;
  // Two-sided distance between the sampled boundary of H_ijk and the three edge arcs.
  double triangle_boundary_defect(int pair, int samples) const;

 private:
  ModelConstants constants_;
  Simplex4 simplex_;
  SymmetryGroup group_;
  std::array<SkeletonFace, 20> faces_;
  std::array<ChainRadii, 10> chains_;
  std::array<FocalPair, 10> pairs_;
};

// R'_x (elliptic radius of the chain on E45) - R_x (hyperbolic radius of the
// base chain) for x on E45. Throws OffArc if x is not on E45.
double radius_consistency_residual(const FocalSkeleton& sk, const Point4& x);

struct CapSeparationReport {
  double min_side_a;      // min signed distance of (345)_1 samples (should be >= 0)
  double min_side_b;      // min of the negated signed distance of (245)_1 samples
  double boundary_dist;   // max |signed distance| of the shared boundary samples
};
// Hyperplane through p1, p4, p5 and the centroid; (345)_1 and (245)_1 are the
// images phi1(H_ijk x {p1}).
CapSeparationReport cap_separation(const FocalSkeleton& sk, int samples);

}  // namespace peabody4d
