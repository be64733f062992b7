#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "xdock/errors.hpp"
#include "xdock/linear_model.hpp"
#include "xdock/milp_builder.hpp"

namespace xdock::detail {

inline std::vector<Term> concat(std::vector<Term> a, const std::vector<Term>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// z = a * b for binary b and 0 <= a <= big_m:
//   z <= M b,  a - z <= M (1 - b),  a - z >= 0.
inline void add_product_block(LinearModel& model, const std::string& tag, std::initializer_list<int> idx,
                              int z, int b, const std::vector<Term>& a, double big_m) {
  model.add_row(var_name(tag + "a", idx), Sense::le, 0, {{z, 1}, {b, -big_m}});
  model.add_row(var_name(tag + "b", idx), Sense::le, big_m, concat(a, {{z, -1}, {b, big_m}}));
  model.add_row(var_name(tag + "c", idx), Sense::ge, 0, concat(a, {{z, -1}}));
}

// Dense values rounded to integers; out-of-bound values throw DecodeError,
// fractional residue above 1e-4 becomes a warning.
inline std::vector<int> round_values(const LinearModel& model, const std::vector<double>& values,
                                     std::vector<std::string>& warnings) {
  std::vector<int> rounded(values.size());
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const Variable& var = model.variables()[idx];
    const double x = values[idx];
    if (!std::isfinite(x) || x < var.lower - 1e-6 || x > var.upper + 1e-6) {
      throw DecodeError("value of " + var.name + " outside its bounds");
    }
    const double nearest = std::round(x);
    if (std::abs(x - nearest) > 1e-4) warnings.push_back(var.name + " rounded from " + std::to_string(x));
    rounded[idx] = static_cast<int>(nearest);
  }
  return rounded;
}

}  // namespace xdock::detail
