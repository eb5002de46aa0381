#include "peabody4d/numerics.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "peabody4d/error.hpp"

namespace peabody4d {

namespace {

// Bisection on a bracket with f(lo) > 0 > f(hi); returns the midpoint of the
// final bracket.
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "bracket [" << lo << ", " << hi << "] has no sign change (" << f_lo << ", " << f_hi
        << ")";
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ModelConstants compute_model_constants() {
  const double sqrt10 = std::sqrt(10.0);
  ModelConstants c;
  c.a_sq = 1.5;
  c.x0 = std::sqrt((41.0 - 4.0 * sqrt10) / 27.0);
  c.y0 = std::sqrt((7.0 - 2.0 * sqrt10) / 27.0);
  c.x1 = std::sqrt((11.0 + 2.0 * sqrt10) / 12.0);
  c.width = std::sqrt(7.0 - 2.0 * sqrt10) / 3.0;
  c.z1 = 0.5 * c.width;
  c.focus_e = 1.0;
  c.focus_h = std::sqrt(1.5);
  // |p1 - f_e|^2 = (x1 - 1)^2 + z1^2 and |p3 - f_h|^2 = (x0 - sqrt(3/2))^2 + y0^2.
  c.r_splus_e = std::hypot(c.x1 - c.focus_e, c.z1);
  c.r_splus_h = std::hypot(c.x0 - c.focus_h, c.y0);
  return c;
}

std::vector<ConstantRecord> describe_constants(const ModelConstants& c) {
  return {
      {"a_sq", c.a_sq, "3/2"},
      {"x0", c.x0, "sqrt((41 - 4 sqrt(10)) / 27)"},
      {"x1", c.x1, "sqrt((11 + 2 sqrt(10)) / 12)"},
      {"y0", c.y0, "sqrt((7 - 2 sqrt(10)) / 27)"},
      {"z1", c.z1, "(sqrt(3) / 2) y0"},
      {"width", c.width, "sqrt(7 - 2 sqrt(10)) / 3"},
      {"focus_e", c.focus_e, "1"},
      {"focus_h", c.focus_h, "sqrt(3/2)"},
      {"r_splus_e", c.r_splus_e, "sqrt((x1 - 1)^2 + z1^2)"},
      {"r_splus_h", c.r_splus_h, "sqrt((x0 - sqrt(3/2))^2 + y0^2)"},
  };
}

FocalEmbedding solve_focal_embedding(double a_sq) {
  if (!(a_sq > 1.0) || !std::isfinite(a_sq)) {
    throw Error(ErrorCode::InvalidArgument, "a_sq must be a finite number > 1");
  }
  const double b_sq = a_sq - 1.0;
  const double a = std::sqrt(a_sq);
  const double sqrt3_2 = 0.5 * std::sqrt(3.0);

  auto y0_of = [&](double x0) { return std::sqrt(b_sq * (x0 * x0 - 1.0)); };
  auto z1_of = [&](double x1) { return std::sqrt(std::max(0.0, b_sq * (1.0 - x1 * x1 / a_sq))); };

  // Inner solve: x1 in (0, a) with z1(x1) = (sqrt(3)/2) y0, i.e. the
  // equilateral triangle p3 p4 p5 has the same side as the edge p1 p2.
  auto x1_of = [&](double x0) {
    const double target = sqrt3_2 * y0_of(x0);
    if (!(target > 0.0)) return a;
    return bisect_decreasing([&](double x1) { return z1_of(x1) - target; }, 0.0, a);
  };

  // Outer solve on t = x0^2: edge equality |p1 p3| = |p1 p2| reduces to
  // (x1 - x0)^2 = (5/4) y0^2. The upper end of the bracket is where x1 = x0.
  const double t_hi = 7.0 * a_sq / (4.0 + 3.0 * a_sq);
  auto edge_gap = [&](double t) {
    const double x0 = std::sqrt(t);
    const double x1 = x1_of(x0);
    const double y0 = y0_of(x0);
    return (x1 - x0) * (x1 - x0) - 1.25 * y0 * y0;
  };
  const double t = bisect_decreasing(edge_gap, 1.0, t_hi);

  FocalEmbedding e;
  e.x0 = std::sqrt(t);
  e.x1 = x1_of(e.x0);
  e.y0 = y0_of(e.x0);
  e.z1 = z1_of(e.x1);
  const double ratio_residual = e.z1 - sqrt3_2 * e.y0;
  const double edge_residual = (e.x1 - e.x0) * (e.x1 - e.x0) - 1.25 * e.y0 * e.y0;
  if (std::abs(ratio_residual) > 1e-12 || std::abs(edge_residual) > 1e-12 || !(e.x1 > e.x0)) {
    throw Error(ErrorCode::NoConvergence, "focal embedding residuals did not settle");
  }
  return e;
}

ModelConstants constants_for(double a_sq) {
  const FocalEmbedding e = solve_focal_embedding(a_sq);
  ModelConstants c;
  c.a_sq = a_sq;
  c.x0 = e.x0;
  c.x1 = e.x1;
  c.y0 = e.y0;
  c.z1 = e.z1;
  c.width = 2.0 * e.z1;
  c.focus_e = 1.0;
  c.focus_h = std::sqrt(a_sq);
  c.r_splus_e = std::hypot(c.x1 - c.focus_e, c.z1);
  c.r_splus_h = std::hypot(c.x0 - c.focus_h, c.y0);
  return c;
}

double tolerance_policy(ToleranceKind kind) {
  switch (kind) {
    case ToleranceKind::AlgebraicIdentity: return 1e-12;
    case ToleranceKind::GeometricResidual: return 1e-10;
    case ToleranceKind::SampledWidth: return 1e-3;
    case ToleranceKind::Diameter: return 1e-9;
  }
  throw Error(ErrorCode::UnknownKind, "unhandled tolerance kind");
}

ToleranceKind parse_tolerance_kind(std::string_view name) {
  if (name == "algebraic-identity" || name == "algebraic") return ToleranceKind::AlgebraicIdentity;
  if (name == "geometric-residual" || name == "geometric") return ToleranceKind::GeometricResidual;
  if (name == "sampled-width" || name == "width") return ToleranceKind::SampledWidth;
  if (name == "diameter") return ToleranceKind::Diameter;
  throw Error(ErrorCode::UnknownKind, "unknown tolerance kind '" + std::string(name) + "'");
}

std::string_view tolerance_kind_name(ToleranceKind kind) {
  switch (kind) {
    case ToleranceKind::AlgebraicIdentity: return "algebraic-identity";
    case ToleranceKind::GeometricResidual: return "geometric-residual";
    case ToleranceKind::SampledWidth: return "sampled-width";
    case ToleranceKind::Diameter: return "diameter";
  }
  return "unknown";
}

double TolerancePolicy::get(ToleranceKind kind) const {
  if (auto it = overrides_.find(kind); it != overrides_.end()) return it->second;
  return tolerance_policy(kind);
}

void TolerancePolicy::set(ToleranceKind kind, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be a positive finite number");
  }
  overrides_[kind] = value;
}

void TolerancePolicy::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument,
                "tolerance override must look like <kind>=<value>, got '" +
                    std::string(assignment) + "'");
  }
  const ToleranceKind kind = parse_tolerance_kind(assignment.substr(0, eq));
  const std::string value_text(assignment.substr(eq + 1));
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(value_text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value_text.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad tolerance value '" + value_text + "'");
  }
  set(kind, value);
}

}  // namespace peabody4d
