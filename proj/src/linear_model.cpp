#include "xdock/linear_model.hpp"

#include <algorithm>
#include <cmath>

#include "xdock/errors.hpp"

namespace xdock {

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& terms, int num_vars) {
  std::vector<Term> out;
  std::unordered_map<int, std::size_t> pos;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_vars) throw ModelError("term references unknown variable");
    if (!std::isfinite(t.coef)) throw ModelError("non-finite coefficient");
    auto it = pos.find(t.var);
    if (it == pos.end()) {
      pos.emplace(t.var, out.size());
      out.push_back(t);
    } else {
      out[it->second].coef += t.coef;
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0; });
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  return out;
}

}  // namespace

int LinearModel::add_variable(const std::string& name, double lower, double upper, VarType type) {
  if (name.empty()) throw ModelError("empty variable name");
  if (var_index_.count(name)) throw ModelError("duplicate variable " + name);
  if (!std::isfinite(lower) || !std::isfinite(upper)) throw ModelError("non-finite bound on " + name);
  if (lower > upper) throw ModelError("empty domain for " + name);
  if (type == VarType::binary && (lower < 0 || upper > 1)) throw ModelError("binary bounds on " + name);
  const int idx = static_cast<int>(vars_.size());
  vars_.push_back(Variable{name, lower, upper, type});
  var_index_.emplace(name, idx);
  return idx;
}

int LinearModel::add_row(const std::string& name, Sense sense, double rhs,
                         const std::vector<Term>& terms) {
  if (name.empty()) throw ModelError("empty row name");
  if (row_index_.count(name)) throw ModelError("duplicate row " + name);
  if (!std::isfinite(rhs)) throw ModelError("non-finite rhs on " + name);
  const int idx = static_cast<int>(rows_.size());
  rows_.push_back(Row{name, sense, rhs, merge_terms(terms, num_variables())});
  row_index_.emplace(name, idx);
  return idx;
}

void LinearModel::set_objective(const std::vector<Term>& terms, double constant) {
  objective_ = merge_terms(terms, num_variables());
  objective_constant_ = constant;
}

std::optional<int> LinearModel::find_variable(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

int LinearModel::variable_index(const std::string& name) const {
  auto idx = find_variable(name);
  if (!idx) throw ModelError("unknown variable " + name);
  return *idx;
}

std::optional<int> LinearModel::find_row(const std::string& name) const {
  auto it = row_index_.find(name);
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

int LinearModel::count_rows_with_prefix(const std::string& prefix) const {
  int count = 0;
  for (const Row& row : rows_) count += row.name.starts_with(prefix) ? 1 : 0;
  return count;
}

int LinearModel::count_variables_with_prefix(const std::string& prefix) const {
  int count = 0;
  for (const Variable& v : vars_) count += v.name.starts_with(prefix) ? 1 : 0;
  return count;
}

void LinearModel::set_start(std::vector<double> values) {
  if (static_cast<int>(values.size()) != num_variables()) {
    throw ModelError("start vector has wrong length");
  }
  start_ = std::move(values);
}

double LinearModel::row_activity(const Row& row, const std::vector<double>& values) const {
  double total = 0;
  for (const Term& t : row.terms) total += t.coef * values[static_cast<std::size_t>(t.var)];
  return total;
}

double LinearModel::objective_value(const std::vector<double>& values) const {
  double total = objective_constant_;
  for (const Term& t : objective_) total += t.coef * values[static_cast<std::size_t>(t.var)];
  return total;
}

std::vector<std::string> LinearModel::violated_rows(const std::vector<double>& values,
                                                    double tolerance) const {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    const double x = values[v];
    if (x < vars_[v].lower - tolerance || x > vars_[v].upper + tolerance) {
      out.push_back("bound:" + vars_[v].name);
    } else if (vars_[v].type != VarType::continuous && std::abs(x - std::round(x)) > tolerance) {
      out.push_back("integrality:" + vars_[v].name);
    }
  }
  for (const Row& row : rows_) {
    const double act = row_activity(row, values);
    bool ok = true;
    switch (row.sense) {
      case Sense::le: ok = act <= row.rhs + tolerance; break;
      case Sense::ge: ok = act >= row.rhs - tolerance; break;
      case Sense::eq: ok = std::abs(act - row.rhs) <= tolerance; break;
    }
    if (!ok) out.push_back(row.name);
  }
  return out;
}

std::vector<double> to_dense(const LinearModel& model, const Assignment& assignment,
                             bool missing_as_zero) {
  std::vector<double> values(static_cast<std::size_t>(model.num_variables()), 0.0);
  std::size_t found = 0;
  for (const auto& [name, value] : assignment) {
    auto idx = model.find_variable(name);
    if (!idx) throw DecodeError("unknown variable " + name);
    values[static_cast<std::size_t>(*idx)] = value;
    ++found;
  }
  if (!missing_as_zero && found != values.size()) {
    for (const Variable& v : model.variables()) {
      if (!assignment.count(v.name)) throw DecodeError("missing variable " + v.name);
    }
  }
  return values;
}

Assignment to_assignment(const LinearModel& model, const std::vector<double>& values) {
  Assignment out;
  for (std::size_t v = 0; v < values.size(); ++v) out.emplace(model.variables()[v].name, values[v]);
  return out;
}

}  // namespace xdock
