#pragma once

#include <functional>
#include <string>
#include <vector>

namespace weilrep {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // counts, and the first failures if any
  double seconds = 0;
};

struct CheckOptions {
  // Progress messages (per-form timings and the like); may be empty.
  std::function<void(const std::string&)> log;
};

constexpr int kCriteria = 13;
std::string criterion_name(int id);
CheckResult run_check(int id, const CheckOptions& opt = {});
std::vector<CheckResult> run_checks(const std::vector<int>& ids, const CheckOptions& opt = {});
std::string format_result(const CheckResult& r);  // "[PASS] 7 name: detail (1.2 s)"

}  // namespace weilrep
