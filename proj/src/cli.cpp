#include "peabody4d/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "peabody4d/body.hpp"
#include "peabody4d/error.hpp"
#include "peabody4d/slice.hpp"
#include "peabody4d/verify.hpp"

namespace peabody4d {

namespace {

struct Settings {
  std::string suite = "all";
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
  std::vector<std::string> tol;
  double a2 = 1.5;
  std::string grid = "64x96";
  std::string out;
  std::string format;
  bool json = false;
  bool timing = false;
  std::string hyperplane = "0,0,0,1,0";
  int resolution = 32;
  double perturb = 0.0;
};

// Writes to --out when given, else to the output stream.
void emit(const Settings& s, std::ostream& out, const std::string& text) {
  if (s.out.empty() || s.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + s.out + "' for writing");
  f << text;
  f.close();
  if (!f) throw Error(ErrorCode::IoError, "failed writing '" + s.out + "'");
}

ModelConstants constants_of(double a2) {
  return a2 == 1.5 ? compute_model_constants() : constants_for(a2);
}

int cmd_constants(const Settings& s, std::ostream& out) {
  const ModelConstants c = constants_of(s.a2);
  const std::vector<std::pair<const char*, double>> rows = {
      {"a_sq", c.a_sq},   {"x0", c.x0},           {"x1", c.x1},           {"y0", c.y0},
      {"z1", c.z1},       {"width", c.width},     {"focus_e", c.focus_e}, {"focus_h", c.focus_h},
      {"r_splus_e", c.r_splus_e}, {"r_splus_h", c.r_splus_h}};
  std::map<std::string, std::string> exact;
  if (s.a2 == 1.5) {
    for (const auto& r : describe_constants(c)) exact[r.symbol] = r.exact_form;
  }
  std::ostringstream os;
  if (s.json) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    for (const auto& [k, v] : rows) j[k] = v;
    nlohmann::ordered_json ex = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rows) {
      if (exact.count(k)) ex[k] = exact[k];
    }
    j["exact"] = ex;
    os << j.dump(2) << "\n";
  } else {
    os << std::setprecision(17);
    for (const auto& [k, v] : rows) {
      os << std::left << std::setw(10) << k << ' ' << std::setw(22) << v;
      if (exact.count(k)) os << ' ' << exact[k];
      os << "\n";
    }
  }
  emit(s, out, os.str());
  return kExitOk;
}

int cmd_verify(const Settings& s, std::ostream& out, std::ostream& err) {
  VerifyOptions o;
  o.suite = s.suite;
  o.samples = s.samples;
  o.seed = s.seed;
  o.grid = parse_grid(s.grid);
  o.a_sq = s.a2;
  o.perturbation = s.perturb;
  for (const auto& t : s.tol) o.tolerances.apply_override(t);
  if (!is_suite_name(o.suite)) {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + o.suite + "' (all, focal, skeleton, body)");
  }
  const VerificationReport r = run_verification(o);
  const std::string json = r.to_json(s.timing);
  if (!s.out.empty() && s.out != "-") {
    emit(s, out, json);
  }
  if (s.json) {
    out << json;
  } else {
    std::ostringstream os;
    for (const auto& c : r.checks) {
      os << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(36) << c.name << ' '
         << std::setprecision(6) << c.value;
      if (!c.error.empty()) os << "  (" << c.error << ")";
      os << "\n";
    }
    os << (r.pass() ? "all checks passed" : "verification failed") << "\n";
    out << os.str();
  }
  if (!r.pass()) {
    err << "failing checks:";
    for (const auto& f : r.failures()) err << ' ' << f;
    err << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_sample(const Settings& s, std::ostream& out) {
  if (!s.format.empty() && s.format != "csv") {
    throw Error(ErrorCode::InvalidArgument, "sample supports --format csv only");
  }
  if (s.samples < 1) throw Error(ErrorCode::InvalidArgument, "--samples must be >= 1");
  const FocalSkeleton sk(constants_of(s.a2));
  const BallModel model(sk, parse_grid(s.grid), RadiusLaw{s.perturb});
  const auto samples = sample_theta(model, s.samples);
  std::ostringstream os;
  write_samples_csv(os, samples);
  emit(s, out, os.str());
  return kExitOk;
}

int cmd_slice(const Settings& s, std::ostream& out) {
  SliceSpec spec = parse_hyperplane(s.hyperplane);
  spec.resolution = s.resolution;
  spec.format = parse_slice_format(s.format.empty() ? "off" : s.format);
  spec.validate();
  const FocalSkeleton sk(constants_of(s.a2));
  const BallModel model(sk, parse_grid(s.grid), RadiusLaw{s.perturb});
  const SliceMesh mesh = slice_body(model, spec);
  std::ostringstream os;
  switch (spec.format) {
    case SliceFormat::Off: write_off(os, mesh); break;
    case SliceFormat::Ply: write_ply(os, mesh); break;
    case SliceFormat::Csv: write_slice_csv(os, model, mesh); break;
  }
  emit(s, out, os.str());
  return kExitOk;
}

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownKind: return kExitUsage;
    case ErrorCode::IoError: return kExitIo;
    default: return kExitFailure;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Focal-skeleton body of constant width in R^4: constants, verification, sampling, slices.",
               "peabody4d"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value settings file (flags take precedence)");
  app.add_option("--suite", s.suite, "verify: all, focal, skeleton or body")->capture_default_str();
  app.add_option("--samples,-n", s.samples, "number of boundary samples")->capture_default_str();
  app.add_option("--seed", s.seed, "random seed")->envname("PEABODY4D_SEED")->capture_default_str();
  app.add_option("--tol", s.tol, "tolerance override <kind>=<value>")->take_all();
  app.add_option("--a2", s.a2, "squared major semi-axis of the ellipse")->capture_default_str();
  app.add_option("--grid", s.grid, "skeleton grid <radial>x<angular>")->capture_default_str();
  app.add_option("--out,-o", s.out, "output path (stdout if omitted)");
  app.add_option("--format", s.format, "sample: csv; slice: off, ply or csv");
  app.add_flag("--json", s.json, "machine-readable output");
  app.add_flag("--timing", s.timing, "include wall times in the JSON report");
  app.add_option("--hyperplane", s.hyperplane, "slice hyperplane nx,ny,nz,nw,offset")->capture_default_str();
  app.add_option("--resolution", s.resolution, "slice latitude bands")->capture_default_str();
  app.add_option("--perturb", s.perturb)->group("");  // test hook: radius law r + delta

  auto* constants = app.add_subcommand("constants", "print the model constants");
  auto* verify = app.add_subcommand("verify", "run the invariant suites and report");
  auto* sample = app.add_subcommand("sample", "write boundary samples as CSV");
  auto* slice = app.add_subcommand("slice", "write a 3D slice of the body");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*constants) return cmd_constants(s, out);
    if (*verify) return cmd_verify(s, out, err);
    if (*sample) return cmd_sample(s, out);
    if (*slice) return cmd_slice(s, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return status_of(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace peabody4d
