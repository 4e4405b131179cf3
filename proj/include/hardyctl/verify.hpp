#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hardyctl {
class ZeroCache;
}

namespace hardyctl::verify {

struct CheckResult {
  std::string module;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

/// Runs the full invariant suite of every module; deterministic given the
/// cache state. Roughly a minute of desk-scale computation.
std::vector<CheckResult> run_all_checks(ZeroCache* cache = nullptr);

bool all_pass(const std::vector<CheckResult>& results);

/// One line per check, aligned, PASS/FAIL first.
std::string format_matrix(const std::vector<CheckResult>& results);

nlohmann::json report_json(const std::vector<CheckResult>& results);

}  // namespace hardyctl::verify
