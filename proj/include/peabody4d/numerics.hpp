#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace peabody4d {

// Scalar data of the focally embedded simplex.
//
// The ellipse lives in the {x,z}-plane with foci (+-1,0,0,0) and semi-axes
// sqrt(a_sq), sqrt(a_sq - 1); the hyperboloid of revolution lives in the
// {x,y,w}-space with vertex (1,0,0,0) and foci (+-sqrt(a_sq),0,0,0).
// Simplex vertices are
//   p1 = (x1, 0, z1, 0),  p2 = (x1, 0, -z1, 0),
//   p3 = (x0, y0, 0, 0),  p4/p5 = (x0, -y0/2, 0, -+sqrt(3)/2 y0).
struct ModelConstants {
  double a_sq = 0.0;
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double z1 = 0.0;
  double width = 0.0;     // 2 z1, also the simplex edge length
  double focus_e = 0.0;   // |f_e|, ellipse focal distance
  double focus_h = 0.0;   // |f_h|, hyperboloid focal distance
  double r_splus_e = 0.0; // radius of the circle about f_e through p1, p2
  double r_splus_h = 0.0; // radius of the sphere about f_h through p3, p4, p5
};

// One named constant together with the closed form it was evaluated from.
struct ConstantRecord {
  std::string symbol;
  double value;
  std::string exact_form;
};

// a_sq = 3/2 instance, every scalar evaluated from its radical closed form.
ModelConstants compute_model_constants();

// Symbol table for the a_sq = 3/2 instance (used for reporting).
std::vector<ConstantRecord> describe_constants(const ModelConstants& c);

struct FocalEmbedding {
  double x0;
  double x1;
  double y0;
  double z1;
};

// Solves for the unique 1 < x0 < x1 < a making the simplex regular for the
// focal pair z^2 = (a^2-1)(1 - x^2/a^2), y^2 + w^2 = (a^2-1)(x^2 - 1).
// Throws Error{NoConvergence} when the bracket carries no sign change and
// Error{InvalidArgument} for a_sq <= 1.
FocalEmbedding solve_focal_embedding(double a_sq);

// Full constant set for a general a_sq, assembled from the solver output.
ModelConstants constants_for(double a_sq);

enum class ToleranceKind { AlgebraicIdentity, GeometricResidual, SampledWidth, Diameter };

double tolerance_policy(ToleranceKind kind);
ToleranceKind parse_tolerance_kind(std::string_view name);
std::string_view tolerance_kind_name(ToleranceKind kind);

// Default tolerances with optional per-kind overrides (CLI --tol, config files).
class TolerancePolicy {
 public:
  double get(ToleranceKind kind) const;
  void set(ToleranceKind kind, double value);
  // Parses "<kind>=<value>".
  void apply_override(std::string_view assignment);

 private:
  std::map<ToleranceKind, double> overrides_;
};

}  // namespace peabody4d
