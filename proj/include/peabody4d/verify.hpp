#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peabody4d/body.hpp"
#include "peabody4d/numerics.hpp"

namespace peabody4d {

enum class Comparison { AtMost, AtLeast, Within };

struct CheckRecord {
  std::string name;
  std::string claim;     // what the check asserts, in words
  double value = 0.0;    // measured residual or statistic (NaN if the check threw)
  Comparison comparison = Comparison::AtMost;
  double tolerance = 0.0;
  double upper = 0.0;    // only for Within: tolerance <= value <= upper
  bool pass = false;
  std::size_t samples = 0;
  double seconds = 0.0;
  std::string error;     // set when the check raised
};

struct VerifyOptions {
  std::string suite = "all";  // all, focal, skeleton, body
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
  GridSpec grid;
  double a_sq = 1.5;
  double perturbation = 0.0;  // added to every Steiner radius of the body model
  TolerancePolicy tolerances;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double a_sq = 0.0;
  double width = 0.0;
  double perturbation = 0.0;
  GridSpec grid;
  std::vector<CheckRecord> checks;

  bool pass() const;
  // Failing check names, in order.
  std::vector<std::string> failures() const;
  // Schema 1 JSON. Wall times are included only when asked for, so that
  // reports stay byte-identical across runs.
  std::string to_json(bool timing = false) const;
};

bool is_suite_name(const std::string& suite);
// Throws InvalidArgument for unknown suites.
VerificationReport run_verification(const VerifyOptions& options);

}  // namespace peabody4d
