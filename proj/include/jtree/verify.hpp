#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jtree {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  int failures() const;
};

/// Suites: tree, schreier, jt2p, framework, jtg, analysis.
const std::vector<std::string>& verify_suite_names();

SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed);
std::vector<SuiteResult> run_all_verify_suites(std::uint64_t seed);

}  // namespace jtree
