#pragma once

// Property suites behind `gsqg verify`: each check reports an observed value
// against a pinned tolerance.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gsqg {

enum class VerifyLevel { Quick, Full };

VerifyLevel parse_verify_level(const std::string& text);
std::string to_string(VerifyLevel level);

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string relation = "<";  // how observed compares to tolerance when passing
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  std::optional<std::string> tensor_file;  // replaces the assembled tensor in the tensor suite
  std::uint64_t seed = 1;
};

/// Runs every suite for the level; progress lines go to `log` when given.
std::vector<CheckResult> run_verify(const VerifyOptions& options, std::ostream* log = nullptr);

/// Fixed-width PASS/FAIL table followed by a summary line.
void print_verify_table(std::ostream& out, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace gsqg
