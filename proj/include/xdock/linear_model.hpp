#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace xdock {

enum class VarType { binary, integer, continuous };
enum class Sense { le, eq, ge };

struct Variable {
  std::string name;
  double lower = 0;
  double upper = 0;
  VarType type = VarType::continuous;
};

struct Term {
  int var = 0;
  double coef = 0;
};

struct Row {
  std::string name;
  Sense sense = Sense::le;
  double rhs = 0;
  std::vector<Term> terms;  // merged, no zero coefficients, sorted by variable
};

struct ModelMetadata {
  std::string kind;         // "integrated", "step1", "step2", or empty
  std::string fingerprint;  // of the source instance
  bool sbc = false;
  std::vector<int> dims;    // m, n, k, f, r of the source instance
  std::vector<std::string> warnings;
};

/// Minimization MILP with named variables and rows. Variables and rows keep
/// the order in which they were added.
class LinearModel {
 public:
  explicit LinearModel(std::string name = "XDOCK") : name_(std::move(name)) {}

  /// Throws ModelError on duplicate names, non-finite bounds, or lower > upper.
  int add_variable(const std::string& name, double lower, double upper, VarType type);
  int add_binary(const std::string& name) { return add_variable(name, 0, 1, VarType::binary); }
  int add_integer(const std::string& name, double lower, double upper) {
    return add_variable(name, lower, upper, VarType::integer);
  }

  /// Duplicate variables in `terms` are merged, zero coefficients dropped and
  /// the rest sorted by variable index.
  int add_row(const std::string& name, Sense sense, double rhs, const std::vector<Term>& terms);

  void set_objective(const std::vector<Term>& terms, double constant = 0);

  const std::string& name() const { return name_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Term>& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }
  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  std::optional<int> find_variable(const std::string& name) const;
  int variable_index(const std::string& name) const;  // throws ModelError
  std::optional<int> find_row(const std::string& name) const;

  /// Number of rows whose name starts with `prefix`.
  int count_rows_with_prefix(const std::string& prefix) const;
  int count_variables_with_prefix(const std::string& prefix) const;

  ModelMetadata& metadata() { return meta_; }
  const ModelMetadata& metadata() const { return meta_; }

  /// Optional complete initial assignment (a warm start), by variable index.
  const std::optional<std::vector<double>>& start() const { return start_; }
  void set_start(std::vector<double> values);

  double row_activity(const Row& row, const std::vector<double>& values) const;
  double objective_value(const std::vector<double>& values) const;

  /// Rows (and bounds, reported as "bound:<var>") violated by `values`.
  std::vector<std::string> violated_rows(const std::vector<double>& values,
                                         double tolerance = 1e-9) const;

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::unordered_map<std::string, int> var_index_;
  std::vector<Row> rows_;
  std::unordered_map<std::string, int> row_index_;
  std::vector<Term> objective_;
  double objective_constant_ = 0;
  ModelMetadata meta_;
  std::optional<std::vector<double>> start_;
};

/// Name -> value map as produced by solvers and solution listings.
using Assignment = std::map<std::string, double>;

/// Dense value vector in model order; throws DecodeError on missing names
/// unless `missing_as_zero`.
std::vector<double> to_dense(const LinearModel& model, const Assignment& assignment,
                             bool missing_as_zero = false);
Assignment to_assignment(const LinearModel& model, const std::vector<double>& values);

}  // namespace xdock
