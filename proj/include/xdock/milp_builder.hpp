#pragma once

#include <string>
#include <vector>

#include "xdock/instance.hpp"
#include "xdock/linear_model.hpp"
#include "xdock/solution.hpp"

namespace xdock {

struct BuildOptions {
  bool sbc = false;
};

/// Integrated model. Variable families, in order: S, SB, y, h, q, WB, V, St,
/// qy, qh, WY, LJ (and DT with sbc). Names are `<family>_<1-based indices>`,
/// e.g. `S_1_2_3_1`. Rows are `<tag>_<indices>`; see row_family().
LinearModel build_integrated(const Instance& instance, const BuildOptions& options = {});

/// Appends the ordering rows and the DT block. Throws ModelError when the
/// model already carries them or was not built by build_integrated.
void add_symmetry_breaking(LinearModel& model, const Instance& instance);

/// Constraint family of a row name: "eq9_3" -> "eq:9", "l28b_1_2" -> "eq:28",
/// "sbc38_2" -> "eq:38", "arr_1" -> "arrival".
std::string row_family(const std::string& row_name);

std::string var_name(const std::string& family, std::initializer_list<int> zero_based);

struct DecodeResult {
  Solution solution;
  std::vector<std::string> warnings;
};

/// Rounds integer variables to the nearest integer (residual above 1e-4 is
/// reported as a warning). Throws DecodeError on missing or unknown variables
/// and on values more than 1e-6 outside their bounds.
DecodeResult decode_solution(const LinearModel& model, const Instance& instance,
                             const Assignment& assignment);

/// Dense variable values of `sol` for `model` (auxiliaries taken from `sol`,
/// DT recomputed when the model has it).
std::vector<double> encode_solution(const LinearModel& model, const Instance& instance,
                                    const Solution& sol);

}  // namespace xdock
