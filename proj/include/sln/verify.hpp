#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sln/loss.hpp"

namespace sln {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
  /// One "PASS"/"FAIL" line per check with measured and expected values.
  std::string to_text() const;
  nlohmann::json to_json() const;
  void append(const SuiteReport& other);
};

/// centroid, svm-limit, potential-limit, meanmap, gridscan, fld-closed-form,
/// failure-example, regret, losses, rff, long-experiment, mease.
std::vector<std::string> suite_names();

/// Runs one named suite, or every suite for "all". appendixE and appendixF
/// are accepted as aliases of fld-closed-form and failure-example. Throws
/// std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name);

/// Largest gap between the declared derivative and a central difference with
/// step h, over grid points further than 10 h from every declared kink.
double max_derivative_error(const Loss& loss, std::span<const double> grid, double h = 1e-6);

}  // namespace sln
