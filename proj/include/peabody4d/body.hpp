#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "peabody4d/skeleton.hpp"

namespace peabody4d {

// Resolution of the skeleton sampling that carries the ball centers.
// Patches use nodes s = i/radial (i < radial), theta = 2 pi j/angular; arcs
// use the interior nodes u = l/arc. angular must be a multiple of 3.
struct GridSpec {
  int radial = 64;
  int angular = 96;
  int arc = 256;

  GridSpec refined() const { return {2 * radial, 2 * angular, 2 * arc}; }
  void validate() const;
};

// Parses "<radial>x<angular>", the arc count follows as 8/3 * angular.
GridSpec parse_grid(const std::string& text);

// Steiner radius used for the balls and the envelope maps, r -> r + perturbation.
// The perturbation exists only to exercise the failing paths of the verifiers.
struct RadiusLaw {
  double perturbation = 0.0;
  double operator()(double r) const { return r + perturbation; }
};

// 25 boundary pieces: caps 0..4 (cap i lies on the sphere about p_i),
// triangle wedges 5..14 and edge wedges 15..24, both indexed by dual pair.
constexpr int kPieceCount = 25;
inline int cap_piece(int vertex) { return vertex; }
inline int triangle_piece(int pair) { return 5 + pair; }
inline int edge_piece(int pair) { return 15 + pair; }
std::string piece_label(int piece);
int parse_piece_label(const std::string& label);  // -1 if unknown

enum class CenterKind : std::uint8_t { Vertex, Arc, Patch };

struct BallCenter {
  Point4 c;
  double rho;
  CenterKind kind;
  int index;      // vertex number or dual pair
  double u, v;    // arc: (u, 0); patch: (s, theta)
};

// Face label of a boundary point whose tight ball has this center.
int piece_of_center(const BallCenter& b);

class BallModel {
 public:
  // The skeleton must outlive the model.
  BallModel(const FocalSkeleton& sk, const GridSpec& grid, const RadiusLaw& law = {});
  // Only the five vertex balls: the Reuleaux simplex.
  static BallModel reuleaux(const FocalSkeleton& sk);

  const FocalSkeleton& skeleton() const { return *sk_; }
  const GridSpec& grid() const { return grid_; }
  const RadiusLaw& law() const { return law_; }
  const std::vector<BallCenter>& centers() const { return centers_; }
  const Point4& interior_point() const { return interior_; }
  double width() const { return width_; }
  // Bound on the distance from any skeleton point to the nearest center.
  double max_spacing() const { return spacing_; }
  bool vertices_only() const { return vertices_only_; }

  struct Query {
    double slack;
    int index;
  };
  // min over centers of rho - |p - c|, with the minimizing center.
  Query slack(const Point4& p) const;
  // Index of the center closest to p.
  int nearest(const Point4& p) const;
  // Centers with rho - |p - c| <= tol.
  std::vector<int> active_set(const Point4& p, double tol) const;

  struct Hit {
    Point4 point;
    double t;
    int index;
  };
  // Exit point of the ray origin + t u (t > 0). origin must be interior.
  Hit ray_cast(const Point4& origin, const Vec4& u) const;
  Hit ray_cast(const Vec4& u) const { return ray_cast(interior_, u); }

  // Slack against the continuous family of balls over the whole skeleton:
  // faces whose nodes come within `2.1 max_spacing` of tight are refined by
  // local minimization starting at the best node.
  double continuous_slack(const Point4& p) const;

  // Steiner radius and ball radius at a skeleton point, under the model's law.
  double arc_radius(int pair, const Point4& y) const;
  double patch_radius(int pair, const Point4& x) const;

 private:
  struct Node {
    Point4 m;
    double r;
    double rho_min;
    int left = -1, right = -1;
    int begin = 0, end = 0;
  };
  BallModel(const FocalSkeleton& sk);
  void build_tree();
  Node make_node(int begin, int end) const;
  int build_node(int begin, int end);
  int build_groups(const std::vector<int>& bounds, int lo, int hi);
  int face_of(const BallCenter& b) const;
  Query slack_in(int root, const Point4& p, double cutoff) const;
  double refine_arc(int pair, double u0, const Point4& p) const;
  double refine_patch(int pair, double s0, double th0, const Point4& p) const;

  const FocalSkeleton* sk_;
  GridSpec grid_;
  RadiusLaw law_;
  std::vector<BallCenter> centers_;
  std::vector<Node> nodes_;
  std::array<int, 20> face_root_{};  // subtree per skeleton face, -1 if empty
  Point4 interior_;
  double width_ = 0.0;
  double spacing_ = 0.0;
  bool vertices_only_ = false;
};

enum class SampleSource : std::uint8_t { Phi1, Phi2, Vertex, Cap, RayCast };
std::string_view sample_source_name(SampleSource s);

struct BoundarySample {
  Point4 point;
  int piece = -1;
  int active_center = -1;
  SampleSource source = SampleSource::RayCast;
  int pair = -1;                   // dual pair for envelope samples
  std::array<double, 3> params{};  // (s, theta, u) for envelope samples
  Point4 x = Point4::Zero();       // patch point of an envelope sample
  Point4 y = Point4::Zero();       // arc point of an envelope sample
  double slack = 0.0;              // against the ball model

  // Points of the true boundary (envelope images, vertices, verified caps).
  bool exact() const { return source != SampleSource::RayCast; }
};

// phi1 = x + R_x (x - y)/|x - y| and phi2 = y + R_y (y - x)/|y - x| for the
// chain of the given dual pair. Throws DomainError if x == y.
Point4 phi1(const ChainRadii& chain, const Point4& x, const Point4& y, const RadiusLaw& law = {});
Point4 phi2(const ChainRadii& chain, const Point4& x, const Point4& y, const RadiusLaw& law = {});

// Parameter lattice for envelope samples: s = (i + offset)/radial,
// theta = 2 pi (j + offset)/angular, u = (l + offset)/arc, with i, j, l
// stepping by `stride` (i < radial, 0 < l < arc when offset is 0).
struct PhiGrid {
  int radial = 8;
  int angular = 12;
  int arc = 8;
  double offset = 0.0;
  int stride = 1;
};

std::vector<BoundarySample> phi_samples(const BallModel& model, const PhiGrid& grid);
std::size_t phi_sample_count(const PhiGrid& grid);
BoundarySample ray_sample(const BallModel& model, const Vec4& u, bool verify_caps = true);
std::vector<BoundarySample> ray_samples(const BallModel& model, std::size_t count,
                                        std::uint64_t skip = 1, bool verify_caps = true);
std::vector<BoundarySample> vertex_samples(const BallModel& model);

// n samples: the five vertices, envelope images on a strided subset of the
// model nodes (about half the budget), and low-discrepancy ray casts for the rest.
std::vector<BoundarySample> sample_theta(const BallModel& model, std::size_t n);

// Other endpoint of the binormal through the sample. Throws UnclassifiedSample
// for samples without a piece.
Point4 binormal_partner(const BallModel& model, const BoundarySample& s);

// max <p,u> - min <p,u>. Throws TooFewSamples below min_samples.
double width_in_direction(const std::vector<BoundarySample>& samples, const Vec4& u,
                          std::size_t min_samples = 10000);

struct DiameterReport {
  double max_pair_distance = 0.0;    // random pair sweep over exact samples
  double max_partner_deviation = 0.0;// | |s - partner(s)| - width |
  double vertex_pair = 0.0;          // |p1 p2|
  std::size_t pairs = 0;
  std::size_t exact_samples = 0;
};
DiameterReport diameter_check(const BallModel& model, const std::vector<BoundarySample>& samples,
                              std::size_t pairs, std::uint64_t seed);

struct ConvergenceStudy {
  GridSpec coarse;
  double residual_coarse = 0.0;  // max slack of staggered envelope samples
  double residual_fine = 0.0;
  double min_slack = 0.0;        // min over both levels, should be >= -1e-9
  double ratio = 0.0;
  std::size_t samples = 0;
};
// Envelope samples sitting a third of a coarse cell off the coarse nodes,
// measured against the coarse model and against its 2x refinement.
ConvergenceStudy convergence_study(const FocalSkeleton& sk, const GridSpec& coarse, int stride,
                                   const RadiusLaw& law = {});

}  // namespace peabody4d
