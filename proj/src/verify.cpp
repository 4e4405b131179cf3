#include "hardyctl/verify.hpp"

#include <cstdio>
#include <sstream>

#include "hardyctl/json_io.hpp"

namespace hardyctl::verify {

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return !results.empty();
}

std::string format_matrix(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s  %-10s %-38s measured %.3e  limit %.3e  %s\n",
                  r.pass ? "PASS" : "FAIL", r.module.c_str(), r.name.c_str(), r.measured,
                  r.threshold, r.note.c_str());
    out << line;
  }
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  out << passed << "/" << results.size() << " checks passed\n";
  return out.str();
}

nlohmann::json report_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"module", r.module},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"measured", io::decimal(r.measured)},
                   {"threshold", io::decimal(r.threshold)},
                   {"note", r.note}});
  }
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  return {{"checks", std::move(arr)},
          {"passed", passed},
          {"total", results.size()},
          {"all_pass", all_pass(results)}};
}

}  // namespace hardyctl::verify
