#include "peabody4d/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "json.hpp"
#include "peabody4d/error.hpp"
#include "peabody4d/focal.hpp"
#include "peabody4d/parallel.hpp"
#include "peabody4d/sampling.hpp"
#include "peabody4d/skeleton.hpp"

namespace peabody4d {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Measure {
  double value;
  std::size_t samples;
};

class Runner {
 public:
  explicit Runner(VerificationReport& report) : report_(report) {}

  void check(const std::string& name, const std::string& claim, Comparison cmp, double tol,
             const std::function<Measure()>& fn, double upper = 0.0) {
    CheckRecord rec;
    rec.name = name;
    rec.claim = claim;
    rec.comparison = cmp;
    rec.tolerance = tol;
    rec.upper = upper;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Measure m = fn();
      rec.value = m.value;
      rec.samples = m.samples;
      switch (cmp) {
        case Comparison::AtMost: rec.pass = m.value <= tol; break;
        case Comparison::AtLeast: rec.pass = m.value >= tol; break;
        case Comparison::Within: rec.pass = m.value >= tol && m.value <= upper; break;
      }
    } catch (const std::exception& e) {
      rec.value = kNaN;
      rec.pass = false;
      rec.error = e.what();
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report_.checks.push_back(std::move(rec));
  }

 private:
  VerificationReport& report_;
};

void focal_suite(Runner& run, const VerifyOptions& o) {
  const double geo = o.tolerances.get(ToleranceKind::GeometricResidual);
  const double alg = o.tolerances.get(ToleranceKind::AlgebraicIdentity);
  const std::size_t n = std::clamp<std::size_t>(o.samples, 500, 100000);
  const Quadric e = standard_ellipse(o.a_sq);
  const Quadric h = standard_hyperboloid(o.a_sq);
  const double a = std::sqrt(o.a_sq);

  run.check("focal.pair", "the ellipse and hyperboloid share an axis and pass through each other's foci",
            Comparison::AtMost, alg, [&] {
              return Measure{validate_focal_pair(standard_focal_pair(o.a_sq)).max(), 1};
            });

  auto sum_sweep = [&](const Quadric& hq, std::uint64_t salt) {
    std::mt19937_64 rng(o.seed ^ salt);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> xs(1.0, 1.0 + 2.0 * a);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point4 ae = ellipse_point(e, ang(rng));
      const Point4 be = ellipse_point(e, ang(rng));
      const Point4 ah = hyperboloid_point(hq, xs(rng), ang(rng));
      const Point4 bh = hyperboloid_point(hq, xs(rng), ang(rng));
      worst = std::max(worst, std::abs(focal_sum_residual(e, hq, ae, be, ah, bh)));
    }
    return worst;
  };
  run.check("focal.sum", "|a_e a_h| + |b_e b_h| = |a_h b_e| + |a_e b_h| on focal quadrics",
            Comparison::AtMost, geo, [&] { return Measure{sum_sweep(h, 0x51), n}; });
  run.check("focal.sum_negative_control", "moving the hyperboloid focus by 1e-3 breaks the sum identity",
            Comparison::AtLeast, 1e-5, [&] {
              const double b = a + 1e-3;
              return Measure{sum_sweep(standard_hyperboloid(b * b), 0x52), n};
            });
  run.check("focal.constant",
            "|a_e a_h| - |a_h f_h| - |a_e f_e| is constant over the ellipse and the right sheet",
            Comparison::AtMost, geo, [&] {
              const FocalPair pair = standard_focal_pair(o.a_sq);
              std::mt19937_64 rng(o.seed ^ 0x53);
              std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
              std::uniform_real_distribution<double> xs(1.0, 1.0 + 2.0 * a);
              double worst = 0.0;
              for (std::size_t i = 0; i < n; ++i) {
                const Point4 ae = ellipse_point(pair.ellipse, ang(rng));
                const Point4 ah = hyperboloid_point(pair.hyperboloid, xs(rng), ang(rng));
                worst = std::max(worst, std::abs(focal_const_residual(pair, ae, ah)));
              }
              return Measure{worst, n};
            });
}

void chain_checks(Runner& run, const VerifyOptions& o, const FocalSkeleton& sk) {
  const double geo = o.tolerances.get(ToleranceKind::GeometricResidual);
  run.check("focal.steiner_sum", "|x y| + R_x + R_y equals the width on a 100 x 100 grid",
            Comparison::AtMost, geo, [&] {
              const ChainRadii& ch = sk.chain(0);
              double worst = 0.0;
              for (int i = 0; i < 100; ++i) {
                const Point4 x = ch.patch.at((i % 10 + 0.5) / 10.0, kTwoPi * (i / 10 + 0.5) / 10.0);
                for (int j = 0; j < 100; ++j) {
                  worst = std::max(worst, std::abs(constante_residual(ch, x, ch.arc.at(j / 99.0))));
                }
              }
              return Measure{worst, 10000};
            });
}

void skeleton_suite(Runner& run, const VerifyOptions& o, const FocalSkeleton& sk) {
  const double alg = o.tolerances.get(ToleranceKind::AlgebraicIdentity);
  const double geo = o.tolerances.get(ToleranceKind::GeometricResidual);
  const double diam = o.tolerances.get(ToleranceKind::Diameter);
  const ModelConstants& c = sk.constants();

  if (o.a_sq == 1.5) {
    run.check("constants.closed_forms", "the solver reproduces the radical closed forms (relative error)",
              Comparison::AtMost, alg, [&] {
                const ModelConstants ref = compute_model_constants();
                const FocalEmbedding s = solve_focal_embedding(1.5);
                double worst = 0.0;
                for (auto [u, v] : {std::pair{s.x0, ref.x0}, {s.x1, ref.x1}, {s.y0, ref.y0}, {s.z1, ref.z1}}) {
                  worst = std::max(worst, std::abs(u - v) / v);
                }
                return Measure{worst, 4};
              });
  }
  run.check("simplex.regularity", "the ten edges have length 2 z1", Comparison::AtMost, alg, [&] {
    double worst = 0.0;
    for (const auto& e : edge_list()) {
      worst = std::max(worst, std::abs((sk.simplex().p[e[0]] - sk.simplex().p[e[1]]).norm() - c.width));
    }
    return Measure{worst, 10};
  });
  run.check("group.closure", "the 120 vertex permutations act as a group of isometries",
            Comparison::AtMost, 1e-9, [&] { return Measure{sk.group().closure_defect(), 120}; });
  run.check("skeleton.rotation_closure", "the rotated ellipse arc lies on the hyperboloid and in the cut plane",
            Comparison::AtMost, geo, [&] { return Measure{rotation_closure(c, 200).total(), 200}; });
  run.check("skeleton.cut_point", "the cut point on the axis is at distance sqrt(a^2) - x1 from the edge midpoint",
            Comparison::AtMost, alg, [&] {
              const CutPointReport r = cut_point(c);
              return Measure{std::abs(r.distance - r.expected), 1};
            });
  run.check("skeleton.tangent_slope", "the arc and the rotated curve meet with slope -3 z1 / x1",
            Comparison::AtMost, alg, [&] {
              const TangentReport t = tangent_angles(c);
              return Measure{std::max(std::abs(t.tan_ellipse - t.expected), std::abs(t.tan_rotated - t.expected)), 2};
            });
  run.check("skeleton.closure_negative_control", "rotation closure fails at a^2 = 1.4",
            Comparison::AtLeast, 1e-4,
            [&] { return Measure{rotation_closure_check(constants_for(1.4), 200), 200}; });
  run.check("skeleton.radius_consistency", "both Steiner radii agree along the shared arc",
            Comparison::AtMost, geo, [&] {
              const EllipseArc& arc = sk.edge_face(9).arc;
              double worst = 0.0;
              for (int i = 0; i < 100; ++i) {
                worst = std::max(worst, std::abs(radius_consistency_residual(sk, arc.at(i / 99.0))));
              }
              return Measure{worst, 100};
            });
  run.check("skeleton.boundary", "each patch is bounded by the three arcs of its triangle",
            Comparison::AtMost, diam, [&] {
              double worst = 0.0;
              for (int k = 0; k < 10; ++k) worst = std::max(worst, sk.triangle_boundary_defect(k, 96));
              return Measure{worst, 960};
            });
  run.check("skeleton.invariance", "the 120 motions map the skeleton into itself",
            Comparison::AtMost, diam, [&] {
              return Measure{std::max(sk.orbit_consistency(12), sk.invariance_defect(8)), 120 * 20 * 64};
            });
  run.check("skeleton.cap_separation",
            "a hyperplane separates the two wedge pieces over p1 and contains their common boundary",
            Comparison::AtMost, diam, [&] {
              const CapSeparationReport r = cap_separation(sk, 48);
              return Measure{std::max({-r.min_side_a, -r.min_side_b, r.boundary_dist}), 48 * 48};
            });
}

void body_suite(Runner& run, const VerifyOptions& o, const FocalSkeleton& sk) {
  const double alg = o.tolerances.get(ToleranceKind::AlgebraicIdentity);
  const double diam = o.tolerances.get(ToleranceKind::Diameter);
  const double sampled = o.tolerances.get(ToleranceKind::SampledWidth);
  const double w = sk.constants().width;
  const RadiusLaw law{o.perturbation};

  run.check("body.binormal_length", "|phi1 - phi2| = 2 z1 on a 64 x 64 grid of every dual pair",
            Comparison::AtMost, alg, [&] {
              std::vector<double> worst(10, 0.0);
              parallel_for(10, [&](std::size_t k) {
                const auto& t = sk.triangle_face(static_cast<int>(k));
                const auto& e = sk.edge_face(static_cast<int>(k));
                for (int i = 0; i < 64; ++i) {
                  for (int j = 0; j < 64; ++j) {
                    const Point4 x = t.patch.at((i + 0.5) / 64, kTwoPi * (j + 0.5) / 64);
                    const Point4 y = e.arc.at((j + 0.5) / 64);
                    const double len = (phi1(sk.chain(k), x, y, law) - phi2(sk.chain(k), x, y, law)).norm();
                    worst[k] = std::max(worst[k], std::abs(len - w));
                  }
                }
              });
              return Measure{*std::max_element(worst.begin(), worst.end()), 10 * 64 * 64};
            });

  std::unique_ptr<BallModel> model;
  run.check("body.interior", "the centroid lies inside every ball (min slack)", Comparison::AtLeast, 1e-6, [&] {
    model = std::make_unique<BallModel>(sk, o.grid, law);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& b : model->centers()) lo = std::min(lo, b.rho - (model->interior_point() - b.c).norm());
    return Measure{lo, model->centers().size()};
  });
  if (!model) return;
  const BallModel& m = *model;

  std::vector<BoundarySample> samples;
  run.check("body.sample_slack", "every boundary sample is inside all balls and tight on one",
            Comparison::AtMost, diam, [&] {
              samples = sample_theta(m, std::max<std::size_t>(o.samples, 1));
              std::vector<double> s(samples.size());
              parallel_for(samples.size(), [&](std::size_t i) {
                const auto& x = samples[i];
                // envelope samples already carry the slack over every ball
                const bool full = x.source == SampleSource::Phi1 || x.source == SampleSource::Phi2;
                s[i] = std::abs(full ? x.slack : m.slack(x.point).slack);
              });
              return Measure{*std::max_element(s.begin(), s.end()), samples.size()};
            });

  run.check("body.normal_uniqueness", "on-grid envelope samples are tight on exactly one ball (violations)",
            Comparison::AtMost, 0.0, [&] {
              std::vector<int> bad(samples.size(), 0);
              std::size_t count = 0;
              for (const auto& s : samples) count += s.source == SampleSource::Phi1 || s.source == SampleSource::Phi2;
              parallel_for(samples.size(), [&](std::size_t i) {
                const auto& s = samples[i];
                if (s.source != SampleSource::Phi1 && s.source != SampleSource::Phi2) return;
                bad[i] = m.active_set(s.point, 1e-10).size() != 1;
              });
              return Measure{static_cast<double>(std::accumulate(bad.begin(), bad.end(), 0)), count};
            });

  ConvergenceStudy study;
  run.check("body.refinement_ratio", "the staggered envelope residual shrinks by 3..5 under 2x refinement",
            Comparison::Within, 3.0, [&] {
              study = convergence_study(sk, o.grid, std::max(1, o.grid.radial / 4), law);
              return Measure{study.ratio, study.samples};
            }, 5.0);
  run.check("body.envelope_inside", "staggered envelope samples are inside the ball model at both levels (min slack)",
            Comparison::AtLeast, -diam, [&] { return Measure{study.min_slack, study.samples}; });

  DiameterReport dr;
  run.check("body.diameter", "no two exact boundary samples are farther apart than 2 z1 (excess)",
            Comparison::AtMost, diam, [&] {
              dr = diameter_check(m, samples, 1000000, o.seed);
              return Measure{dr.max_pair_distance - w, dr.pairs};
            });
  run.check("body.binormal_partner", "every sample has its binormal partner at distance 2 z1",
            Comparison::AtMost, diam, [&] { return Measure{dr.max_partner_deviation, samples.size()}; });
  run.check("body.reuleaux_containment", "every sample is within 2 z1 of all five vertices (excess)",
            Comparison::AtMost, diam, [&] {
              double worst = -w;
              for (const auto& s : samples) {
                for (const auto& p : sk.simplex().p) worst = std::max(worst, (s.point - p).norm() - w);
              }
              return Measure{worst, samples.size()};
            });
  run.check("body.width", "|width(u) - 2 z1| over 1000 low-discrepancy directions", Comparison::AtMost, sampled, [&] {
    std::vector<double> dev(1000);
    parallel_for(dev.size(), [&](std::size_t i) {
      dev[i] = std::abs(width_in_direction(samples, halton_direction(samples.size() + 1 + i)) - w);
    });
    return Measure{*std::max_element(dev.begin(), dev.end()), dev.size()};
  });
  run.check("body.width_lower_bound", "width along exact binormals is at least 2 z1 (shortfall)",
            Comparison::AtMost, diam, [&] {
              std::vector<std::size_t> exact;
              for (std::size_t i = 0; i < samples.size(); ++i) {
                if (samples[i].source == SampleSource::Phi1 || samples[i].source == SampleSource::Phi2) exact.push_back(i);
              }
              const std::size_t step = std::max<std::size_t>(1, exact.size() / 1000);
              std::vector<double> gap;
              for (std::size_t k = 0; k < exact.size(); k += step) gap.push_back(0.0);
              parallel_for(gap.size(), [&](std::size_t g) {
                const auto& s = samples[exact[g * step]];
                const Vec4 u = (s.point - binormal_partner(m, s)).normalized();
                gap[g] = w - width_in_direction(samples, u);
              });
              if (gap.empty()) throw Error(ErrorCode::TooFewSamples, "no envelope samples");
              return Measure{*std::max_element(gap.begin(), gap.end()), gap.size()};
            });
  run.check("body.symmetry_samples", "motions of boundary samples stay on the model boundary (max |slack|)",
            Comparison::AtMost, 1e-8, [&] {
              const std::size_t step = std::max<std::size_t>(1, samples.size() / 1000);
              std::vector<double> worst(sk.group().size(), 0.0);
              parallel_for(worst.size(), [&](std::size_t g) {
                const Isometry4& motion = sk.group()[g].motion;
                for (std::size_t i = 0; i < samples.size(); i += step) {
                  worst[g] = std::max(worst[g], std::abs(m.slack(motion.apply(samples[i].point)).slack));
                }
              });
              return Measure{*std::max_element(worst.begin(), worst.end()), worst.size() * ((samples.size() + step - 1) / step)};
            });
  run.check("body.symmetry_centers", "motions map the ball centers and radii onto themselves",
            Comparison::AtMost, 1e-8, [&] {
              const std::size_t step = std::max<std::size_t>(1, m.centers().size() / 2000);
              std::vector<double> worst(sk.group().size(), 0.0);
              parallel_for(worst.size(), [&](std::size_t g) {
                const Isometry4& motion = sk.group()[g].motion;
                for (std::size_t i = 0; i < m.centers().size(); i += step) {
                  const auto& b = m.centers()[i];
                  const Point4 q = motion.apply(b.c);
                  const auto& o2 = m.centers()[m.nearest(q)];
                  worst[g] = std::max({worst[g], (q - o2.c).norm(), std::abs(o2.rho - b.rho)});
                }
              });
              return Measure{*std::max_element(worst.begin(), worst.end()), worst.size()};
            });
  run.check("body.census", "boundary pieces with no sample (of 25)", Comparison::AtMost, 0.0, [&] {
    std::set<int> seen;
    for (const auto& s : samples) seen.insert(s.piece);
    return Measure{static_cast<double>(kPieceCount) - static_cast<double>(seen.size()), samples.size()};
  });
}

const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::AtMost: return "<=";
    case Comparison::AtLeast: return ">=";
    case Comparison::Within: return "in";
  }
  return "?";
}

}  // namespace

bool VerificationReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

std::string VerificationReport::to_json(bool timing) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["seed"] = seed;
  j["samples"] = samples;
  j["model"] = {{"a_sq", a_sq},
                {"width", width},
                {"grid", {{"radial", grid.radial}, {"angular", grid.angular}, {"arc", grid.arc}}},
                {"perturbation", perturbation}};
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json r;
    r["name"] = c.name;
    r["claim"] = c.claim;
    if (std::isfinite(c.value)) {
      r["value"] = c.value;
    } else {
      r["value"] = nullptr;
    }
    r["comparison"] = comparison_name(c.comparison);
    if (c.comparison == Comparison::Within) {
      r["tolerance"] = {c.tolerance, c.upper};
    } else {
      r["tolerance"] = c.tolerance;
    }
    r["pass"] = c.pass;
    r["samples"] = c.samples;
    if (!c.error.empty()) r["error"] = c.error;
    if (timing) r["seconds"] = c.seconds;
    arr.push_back(std::move(r));
  }
  j["checks"] = std::move(arr);
  j["pass"] = pass();
  return j.dump(2) + "\n";
}

bool is_suite_name(const std::string& suite) {
  return suite == "all" || suite == "focal" || suite == "skeleton" || suite == "body";
}

VerificationReport run_verification(const VerifyOptions& o) {
  if (!is_suite_name(o.suite)) {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + o.suite + "' (all, focal, skeleton, body)");
  }
  o.grid.validate();
  VerificationReport r;
  r.suite = o.suite;
  r.seed = o.seed;
  r.samples = o.samples;
  r.a_sq = o.a_sq;
  r.perturbation = o.perturbation;
  r.grid = o.grid;
  Runner run(r);
  const bool all = o.suite == "all";

  std::unique_ptr<FocalSkeleton> sk;
  run.check("skeleton.construction", "the focal skeleton can be built for this a^2 (error count)",
            Comparison::AtMost, 0.0, [&] {
              sk = std::make_unique<FocalSkeleton>(o.a_sq == 1.5 ? compute_model_constants() : constants_for(o.a_sq));
              return Measure{0.0, 1};
            });
  if (sk) r.width = sk->constants().width;

  if (all || o.suite == "focal") {
    focal_suite(run, o);
    if (sk) chain_checks(run, o, *sk);
  }
  if (sk && (all || o.suite == "skeleton")) skeleton_suite(run, o, *sk);
  if (sk && (all || o.suite == "body")) body_suite(run, o, *sk);
  return r;
}

}  // namespace peabody4d
