#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "xdock/linear_model.hpp"

namespace xdock {

/// Original names in file order. Empty when the MPS file uses the model's own
/// names (all of them fit the 8-character fixed-format fields).
struct NameMap {
  std::vector<std::string> columns;  // columns[c] is the name behind C%07d (c + 1)
  std::vector<std::string> rows;     // rows[r] is the name behind R%07d (r + 1)

  bool empty() const { return columns.empty() && rows.empty(); }
  /// Maps a file name back to the model name; unknown names pass through.
  std::string column(const std::string& file_name) const;
  std::string row(const std::string& file_name) const;
};

nlohmann::json to_json(const NameMap& map);
NameMap name_map_from_json(const nlohmann::json& doc);

/// Fixed-format MPS with INTORG/INTEND markers and explicit bounds. Names
/// longer than 8 characters switch the whole file to C%07d / R%07d names and
/// fill `names` with the table to map them back.
std::string export_mps(const LinearModel& model, NameMap* names = nullptr);

/// CPLEX-style LP text.
std::string export_lp(const LinearModel& model);

/// Parsers for the two formats above (whitespace separated fields). With a
/// non-empty `names` the mangled names are mapped back. Throw ParseError.
LinearModel read_mps(const std::string& text, const NameMap& names = {});
LinearModel read_lp(const std::string& text);

/// `name value` lines; `#` starts a comment. Comment lines of the form
/// `# key: value` are collected into `meta` (status, objective, bound, ...).
struct Listing {
  Assignment values;
  std::map<std::string, std::string> meta;
};

Listing parse_listing(const std::string& text);
/// Writes every variable (or only the non-zero ones) in model order.
std::string write_listing(const LinearModel& model, const std::vector<double>& values,
                          const std::map<std::string, std::string>& meta = {},
                          bool skip_zeros = false);

/// Shortest exact text for a model number: integers plainly, others %.12g.
std::string format_number(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace xdock
