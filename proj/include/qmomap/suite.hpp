#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qmomap/qmomap.hpp"

namespace qmomap {

struct CheckResult {
  std::string test;
  nlohmann::json inputs;
  nlohmann::json residual;  // "0" or {order: polynomial}
  bool pass = false;
  nlohmann::json extra;     // null or additional fields

  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

// Runs one verification suite; test functions are monomials of degree <= deg.
// `casimirs` are polynomials in th, used by the casimir suite.
std::vector<CheckResult> run_suite(const QmmModel& model, const std::string& suite, int deg,
                                   const std::vector<std::string>& casimirs = {});

CheckResult mc_check(const GSystem& a);

}  // namespace qmomap
