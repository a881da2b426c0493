#pragma once

// Named reproduction suites: each runs a list of checks and reports
// pass/fail per check.

#include <functional>
#include <string>
#include <vector>

#include "bentkit/canonical.hpp"

namespace bentkit {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  unsigned threads = 0;
  CanonicalOptions canonical;
  std::function<void(const std::string& json_line)> progress;
};

// appendix-bent, appendix-snf, example1, example2, n4-oracle, and the long
// suites counts-n6 and theorem4-n6.
std::vector<std::string> suite_names();
bool is_extended_suite(const std::string& name);

// Throws NotFound for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace bentkit
