#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "xdock/core_model.hpp"

namespace xdock::detail {

// Collects violations into a ValidationReport.
class Checker {
 public:
  Checker(ValidationReport& report, double tol) : report_(report), tol_(tol) {}

  void le(const char* family, std::vector<int> idx, double lhs, double rhs) {
    if (lhs > rhs + tol_) add(family, std::move(idx), lhs, rhs);
  }
  void ge(const char* family, std::vector<int> idx, double lhs, double rhs) {
    if (lhs < rhs - tol_) add(family, std::move(idx), lhs, rhs, lhs - rhs);
  }
  void eq(const char* family, std::vector<int> idx, double lhs, double rhs) {
    if (std::abs(lhs - rhs) > tol_) add(family, std::move(idx), lhs, rhs, -std::abs(lhs - rhs));
  }
  void binary(const char* grid, std::vector<int> idx, int value) {
    if (value != 0 && value != 1) add(std::string("domain:") + grid, std::move(idx), value, 1, -1);
  }
  void nonneg(const char* grid, std::vector<int> idx, double value) {
    if (value < -tol_) add(std::string("domain:") + grid, std::move(idx), value, 0, value);
  }

 private:
  void add(std::string family, std::vector<int> idx, double lhs, double rhs) {
    add(std::move(family), std::move(idx), lhs, rhs, rhs - lhs);
  }
  void add(std::string family, std::vector<int> idx, double lhs, double rhs, double slack) {
    report_.feasible = false;
    report_.violations.push_back(Violation{std::move(family), std::move(idx), lhs, rhs, slack});
  }

  ValidationReport& report_;
  double tol_;
};

}  // namespace xdock::detail
