#pragma once

// The acceptance criteria as executable checks, shared by `moyal selftest`
// and the acceptance test binary.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace moyal::acceptance {

struct Options {
  /// Effective tolerance of each criterion is min(pinned, tol).
  std::optional<double> tol;
  /// Replaces the truncation of every criterion that uses one.
  std::optional<int> truncation;
  std::uint64_t seed = 20240611;
  /// Criteria to run (1..11); empty runs all.
  std::set<int> only;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Known to fail for a documented mathematical reason.
  bool expected_failure = false;
  double metric = 0.0;  ///< worst observed error (or count of violations)
  double tol = 0.0;
  double seconds = 0.0;
  double runtime_limit = 0.0;  ///< 0 when the criterion has none
  std::string detail;
};

std::vector<Result> run(const Options& options);

/// Grid cross-checks at M points on [-L, L]^2: f00*f00 vs f00, zbar*f00 vs
/// 2 zbar f00 on the inner half of the box, and the commuting square for
/// random elements supported on indices <= 3.
struct GridReport {
  double f00_square = 0.0;
  double zbar_f00 = 0.0;
  double commuting_square = 0.0;
  double worst() const;
};

GridReport grid_report(int points, double half_width, double theta, std::uint64_t seed);

/// "criterion 3: PASS  optimal-element saturation  (metric 1.1e-16 <= tol 1e-10)"
std::string format_line(const Result& r);

nlohmann::json to_json(const Result& r, bool with_timing);

/// True when every failure is an expected one and no expected failure passed.
bool as_expected(const std::vector<Result>& results);

}  // namespace moyal::acceptance
