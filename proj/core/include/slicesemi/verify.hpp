#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace slicesemi {

struct VerifyOptions {
  std::string algebra = "H";
  int m = 2;
  std::uint64_t seed = 0;
  bool fast = false;  // reduced sample and node counts, looser tolerances
};

struct VerifyCase {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCase> cases;
  double max_residual = 0.0;
  bool pass = true;
};

std::vector<std::string> suite_names();  // algebra, slice, resolvent, semigroup, contour, all

VerifyReport run_suite(const std::string& name, const VerifyOptions& opt);

nlohmann::json report_to_json(const VerifyReport& r);

}  // namespace slicesemi
