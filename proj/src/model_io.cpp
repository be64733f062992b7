#include "xdock/model_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "xdock/errors.hpp"

namespace xdock {

namespace {

constexpr double kInfinity = 1e30;

std::string rtrim(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

double parse_number(const std::string& tok, const std::string& where) {
  std::string lower;
  for (char c : tok) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const bool neg = !lower.empty() && lower[0] == '-';
  const std::string body = (!lower.empty() && (lower[0] == '-' || lower[0] == '+')) ? lower.substr(1) : lower;
  if (body == "inf" || body == "infinity") return neg ? -kInfinity : kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    if (std::abs(v) >= kInfinity) return v < 0 ? -kInfinity : kInfinity;
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + tok + "' in " + where);
  }
}

bool needs_mangling(const LinearModel& model) {
  auto bad = [](const std::string& name) {
    if (name.size() > 8 || name == "COST" || name == "MARKER" || name == "RHS" || name == "BND") return true;
    for (char c : name) {
      if (std::isspace(static_cast<unsigned char>(c))) return true;
    }
    return false;
  };
  for (const auto& v : model.variables()) {
    if (bad(v.name)) return true;
  }
  for (const auto& r : model.rows()) {
    if (bad(r.name)) return true;
  }
  return false;
}

std::string mangled(char prefix, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%07zu", prefix, index + 1);
  return buf;
}

// Raw model data collected by the parsers before the LinearModel is built.
struct RawModel {
  std::string name = "XDOCK";
  std::vector<Variable> vars;
  std::unordered_map<std::string, int> var_index;
  struct RawRow {
    std::string name;
    Sense sense = Sense::le;
    double rhs = 0;
    std::vector<std::pair<int, double>> terms;
  };
  std::vector<RawRow> rows;
  std::unordered_map<std::string, int> row_index;
  std::vector<std::pair<int, double>> objective;
  double constant = 0;

  int var(const std::string& name, VarType type = VarType::continuous) {
    auto it = var_index.find(name);
    if (it != var_index.end()) return it->second;
    const int idx = static_cast<int>(vars.size());
    vars.push_back(Variable{name, 0, kInfinity, type});
    var_index.emplace(name, idx);
    return idx;
  }

  LinearModel build() const {
    LinearModel model(name);
    for (const auto& v : vars) model.add_variable(v.name, v.lower, v.upper, v.type);
    auto terms_of = [](const std::vector<std::pair<int, double>>& raw) {
      std::vector<Term> terms;
      for (const auto& [v, c] : raw) terms.push_back({v, c});
      return terms;
    };
    for (const auto& r : rows) model.add_row(r.name, r.sense, r.rhs, terms_of(r.terms));
    model.set_objective(terms_of(objective), constant);
    return model;
  }
};

}  // namespace

std::string NameMap::column(const std::string& file_name) const {
  if (file_name.size() == 8 && file_name[0] == 'C' &&
      file_name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t idx = std::stoul(file_name.substr(1));
    if (idx >= 1 && idx <= columns.size()) return columns[idx - 1];
  }
  return file_name;
}

std::string NameMap::row(const std::string& file_name) const {
  if (file_name.size() == 8 && file_name[0] == 'R' &&
      file_name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t idx = std::stoul(file_name.substr(1));
    if (idx >= 1 && idx <= rows.size()) return rows[idx - 1];
  }
  return file_name;
}

nlohmann::json to_json(const NameMap& map) {
  nlohmann::json doc;
  doc["columns"] = nlohmann::json::object();
  doc["rows"] = nlohmann::json::object();
  for (std::size_t c = 0; c < map.columns.size(); ++c) doc["columns"][mangled('C', c)] = map.columns[c];
  for (std::size_t r = 0; r < map.rows.size(); ++r) doc["rows"][mangled('R', r)] = map.rows[r];
  return doc;
}

NameMap name_map_from_json(const nlohmann::json& doc) {
  NameMap map;
  try {
    // Keys are C%07d / R%07d, so the sorted object order is the file order.
    for (const auto& [key, value] : doc.at("columns").items()) map.columns.push_back(value.get<std::string>());
    for (const auto& [key, value] : doc.at("rows").items()) map.rows.push_back(value.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("name map: ") + e.what());
  }
  return map;
}

std::string format_number(double value) {
  if (value == 0) return "0";
  char buf[64];
  if (std::abs(value) < 1e15 && value == std::floor(value)) {
    std::snprintf(buf, sizeof buf, "%.0f", value);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g", value);
  }
  return buf;
}

std::string export_mps(const LinearModel& model, NameMap* names) {
  const bool mangle = needs_mangling(model);
  const auto& vars = model.variables();
  const auto& rows = model.rows();
  std::vector<std::string> col_names(vars.size()), row_names(rows.size());
  for (std::size_t c = 0; c < vars.size(); ++c) col_names[c] = mangle ? mangled('C', c) : vars[c].name;
  for (std::size_t r = 0; r < rows.size(); ++r) row_names[r] = mangle ? mangled('R', r) : rows[r].name;
  if (names) {
    *names = NameMap{};
    if (mangle) {
      for (const auto& v : vars) names->columns.push_back(v.name);
      for (const auto& r : rows) names->rows.push_back(r.name);
    }
  }

  // Column-major coefficient lists, objective first.
  std::vector<std::vector<std::pair<std::string, double>>> column(vars.size());
  for (const Term& t : model.objective()) column[static_cast<std::size_t>(t.var)].push_back({"COST", t.coef});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const Term& t : rows[r].terms) column[static_cast<std::size_t>(t.var)].push_back({row_names[r], t.coef});
  }

  std::string out;
  auto line = [&out](const std::string& s) { out += rtrim(s) + "\n"; };
  line("NAME          " + model.name());
  line("ROWS");
  line(" N  COST");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const char* sense = rows[r].sense == Sense::le ? "L" : rows[r].sense == Sense::ge ? "G" : "E";
    line(std::string(" ") + sense + "  " + row_names[r]);
  }
  line("COLUMNS");
  bool in_int = false;
  int marker = 0;
  for (std::size_t c = 0; c < vars.size(); ++c) {
    const bool is_int = vars[c].type != VarType::continuous;
    if (is_int != in_int) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "MARKER%02d", marker++ % 100);
      line(std::string("    ") + pad(buf, 8) + "  'MARKER'                 " + (is_int ? "'INTORG'" : "'INTEND'"));
      in_int = is_int;
    }
    if (column[c].empty()) column[c].push_back({"COST", 0.0});
    for (const auto& [row, coef] : column[c]) {
      line("    " + pad(col_names[c], 8) + "  " + pad(row, 8) + "  " + format_number(coef));
    }
  }
  if (in_int) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "MARKER%02d", marker % 100);
    line(std::string("    ") + pad(buf, 8) + "  'MARKER'                 'INTEND'");
  }
  line("RHS");
  if (model.objective_constant() != 0) {
    line("    RHS       COST      " + format_number(-model.objective_constant()));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].rhs != 0) line("    RHS       " + pad(row_names[r], 8) + "  " + format_number(rows[r].rhs));
  }
  line("BOUNDS");
  for (std::size_t c = 0; c < vars.size(); ++c) {
    const Variable& v = vars[c];
    const std::string name = pad(col_names[c], 8);
    if (v.type == VarType::binary && v.lower == 0 && v.upper == 1) {
      line(" BV BND       " + name);
    } else if (v.lower == v.upper) {
      line(" FX BND       " + name + "  " + format_number(v.lower));
    } else {
      if (v.lower != 0) line(" LO BND       " + name + "  " + format_number(v.lower));
      line(" UP BND       " + name + "  " + format_number(v.upper));
    }
  }
  line("ENDATA");
  return out;
}

LinearModel read_mps(const std::string& text, const NameMap& names) {
  RawModel raw;
  std::string section;
  std::string objective_row;
  bool in_int = false;
  int line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    const std::string where = "MPS line " + std::to_string(line_no);
    if (line.empty() || line[0] == '*') continue;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      section = tok[0];
      if (section == "NAME") raw.name = tok.size() > 1 ? tok[1] : "";
      else if (section == "ENDATA") break;
      else if (section != "ROWS" && section != "COLUMNS" && section != "RHS" && section != "BOUNDS" &&
               section != "RANGES") {
        throw ParseError("unknown MPS section " + section);
      }
      if (section == "RANGES") throw ParseError("RANGES are not supported");
      continue;
    }
    if (section == "ROWS") {
      if (tok.size() != 2) throw ParseError("bad ROWS entry at " + where);
      if (tok[0] == "N") {
        if (objective_row.empty()) objective_row = tok[1];
        continue;
      }
      RawModel::RawRow row;
      row.name = names.row(tok[1]);
      if (tok[0] == "L") row.sense = Sense::le;
      else if (tok[0] == "G") row.sense = Sense::ge;
      else if (tok[0] == "E") row.sense = Sense::eq;
      else throw ParseError("bad row type at " + where);
      raw.row_index.emplace(tok[1], static_cast<int>(raw.rows.size()));
      raw.rows.push_back(std::move(row));
    } else if (section == "COLUMNS") {
      if (tok.size() >= 3 && tok[1] == "'MARKER'") {
        if (tok[2] == "'INTORG'") in_int = true;
        else if (tok[2] == "'INTEND'") in_int = false;
        else throw ParseError("bad marker at " + where);
        continue;
      }
      if (tok.size() != 3 && tok.size() != 5) throw ParseError("bad COLUMNS entry at " + where);
      const int v = raw.var(names.column(tok[0]), in_int ? VarType::integer : VarType::continuous);
      for (std::size_t a = 1; a + 1 < tok.size(); a += 2) {
        const double coef = parse_number(tok[a + 1], where);
        if (tok[a] == objective_row) {
          raw.objective.push_back({v, coef});
        } else {
          auto it = raw.row_index.find(tok[a]);
          if (it == raw.row_index.end()) throw ParseError("unknown row " + tok[a] + " at " + where);
          raw.rows[static_cast<std::size_t>(it->second)].terms.push_back({v, coef});
        }
      }
    } else if (section == "RHS") {
      if (tok.size() != 3 && tok.size() != 5) throw ParseError("bad RHS entry at " + where);
      for (std::size_t a = 1; a + 1 < tok.size(); a += 2) {
        const double value = parse_number(tok[a + 1], where);
        if (tok[a] == objective_row) {
          raw.constant = -value;
        } else {
          auto it = raw.row_index.find(tok[a]);
          if (it == raw.row_index.end()) throw ParseError("unknown row " + tok[a] + " at " + where);
          raw.rows[static_cast<std::size_t>(it->second)].rhs = value;
        }
      }
    } else if (section == "BOUNDS") {
      if (tok.size() < 3) throw ParseError("bad BOUNDS entry at " + where);
      auto it = raw.var_index.find(names.column(tok[2]));
      if (it == raw.var_index.end()) throw ParseError("bound on unknown column at " + where);
      Variable& var = raw.vars[static_cast<std::size_t>(it->second)];
      const std::string& type = tok[0];
      auto value = [&] {
        if (tok.size() < 4) throw ParseError("missing bound value at " + where);
        return parse_number(tok[3], where);
      };
      if (type == "UP") var.upper = value();
      else if (type == "LO") var.lower = value();
      else if (type == "FX") var.lower = var.upper = value();
      else if (type == "MI") var.lower = -kInfinity;
      else if (type == "PL") var.upper = kInfinity;
      else if (type == "FR") { var.lower = -kInfinity; var.upper = kInfinity; }
      else if (type == "BV") { var.type = VarType::binary; var.lower = 0; var.upper = 1; }
      else if (type == "LI") { var.type = VarType::integer; var.lower = value(); }
      else if (type == "UI") { var.type = VarType::integer; var.upper = value(); }
      else throw ParseError("unknown bound type " + type + " at " + where);
    } else {
      throw ParseError("data outside a section at " + where);
    }
  }
  try {
    return raw.build();
  } catch (const ModelError& e) {
    throw ParseError(std::string("MPS model: ") + e.what());
  }
}

namespace {

void append_expression(std::string& out, std::size_t& line_len, const std::vector<Term>& terms,
                       const LinearModel& model) {
  bool first = true;
  for (const Term& t : terms) {
    std::string piece;
    const double mag = std::abs(t.coef);
    piece += t.coef < 0 ? "- " : (first ? "" : "+ ");
    if (mag != 1) piece += format_number(mag) + " ";
    piece += model.variables()[static_cast<std::size_t>(t.var)].name;
    if (line_len + piece.size() + 1 > 78) {
      out += "\n  ";
      line_len = 2;
    } else {
      out += " ";
      ++line_len;
    }
    out += piece;
    line_len += piece.size();
    first = false;
  }
  if (terms.empty()) {
    // LP text has no empty rows; a zero multiple of the first column stands in.
    const std::string piece = model.num_variables() > 0 ? "0 " + model.variables()[0].name : "0";
    out += " " + piece;
    line_len += piece.size() + 1;
  }
}

}  // namespace

std::string export_lp(const LinearModel& model) {
  std::string out = "\\ Model " + model.name() + "\n";
  out += "Minimize\n obj:";
  std::size_t len = 5;
  append_expression(out, len, model.objective(), model);
  if (model.objective_constant() != 0) {
    const double c = model.objective_constant();
    out += std::string(c < 0 ? " - " : " + ") + format_number(std::abs(c));
  }
  out += "\nSubject To\n";
  for (const Row& row : model.rows()) {
    out += " " + row.name + ":";
    len = row.name.size() + 2;
    append_expression(out, len, row.terms, model);
    const char* sense = row.sense == Sense::le ? " <= " : row.sense == Sense::ge ? " >= " : " = ";
    out += sense + format_number(row.rhs) + "\n";
  }
  out += "Bounds\n";
  for (const Variable& v : model.variables()) {
    if (v.type == VarType::binary && v.lower == 0 && v.upper == 1) continue;
    if (v.lower == v.upper) {
      out += " " + v.name + " = " + format_number(v.lower) + "\n";
    } else {
      out += " " + format_number(v.lower) + " <= " + v.name + " <= " + format_number(v.upper) + "\n";
    }
  }
  std::vector<std::string> generals, binaries;
  for (const Variable& v : model.variables()) {
    if (v.type == VarType::binary && v.lower == 0 && v.upper == 1) binaries.push_back(v.name);
    else if (v.type != VarType::continuous) generals.push_back(v.name);
  }
  auto list = [&out](const char* header, const std::vector<std::string>& names) {
    if (names.empty()) return;
    out += header;
    out += "\n";
    std::size_t line_len = 0;
    for (const auto& name : names) {
      if (line_len > 0 && line_len + name.size() + 1 > 78) {
        out += "\n";
        line_len = 0;
      }
      out += " " + name;
      line_len += name.size() + 1;
    }
    out += "\n";
  };
  list("Generals", generals);
  list("Binaries", binaries);
  out += "End\n";
  return out;
}

namespace {

struct LpToken {
  enum Kind { name, number, sense, sign, colon } kind;
  std::string text;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_!\"#$%&()/,.;?@`'{}|~[]").find(c) != std::string_view::npos;
}

std::vector<LpToken> tokenize_lp(const std::string& text) {
  std::vector<LpToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ':') {
      out.push_back({LpToken::colon, ":"});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < text.size() && (text[i + 1] == '=' || text[i + 1] == '<' || text[i + 1] == '>')) {
        op += text[++i];
      }
      ++i;
      if (op == "=<" || op == "<") op = "<=";
      if (op == "=>" || op == ">") op = ">=";
      out.push_back({LpToken::sense, op});
    } else if (c == '+' || c == '-') {
      out.push_back({LpToken::sign, std::string(1, c)});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          j = k;
          while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        }
      }
      out.push_back({LpToken::number, text.substr(i, j - i)});
      i = j;
    } else if (name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      out.push_back({LpToken::name, text.substr(i, j - i)});
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in LP text");
    }
  }
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

LinearModel read_lp(const std::string& text) {
  // Drop comments, then split into sections by keyword lines.
  std::string model_name = "XDOCK";
  std::map<std::string, std::string> section_text;
  std::string section;
  for (std::string line : split_lines(text)) {
    if (!line.empty() && line[0] == '\\') {
      const auto tok = split_ws(line.substr(1));
      if (tok.size() == 2 && tok[0] == "Model") model_name = tok[1];
      continue;
    }
    if (auto cut = line.find('\\'); cut != std::string::npos) line.resize(cut);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string head = lower(tok[0]);
    const std::string two = tok.size() >= 2 ? head + " " + lower(tok[1]) : head;
    if (tok.size() == 1 && (head == "minimize" || head == "minimise" || head == "minimum" || head == "min")) {
      section = "objective";
    } else if (two == "subject to" || (tok.size() == 1 && (head == "st" || head == "s.t." || head == "such"))) {
      section = "rows";
    } else if (tok.size() == 1 && (head == "bounds" || head == "bound")) {
      section = "bounds";
    } else if (tok.size() == 1 && (head == "generals" || head == "general" || head == "gen")) {
      section = "generals";
    } else if (tok.size() == 1 && (head == "binaries" || head == "binary" || head == "bin")) {
      section = "binaries";
    } else if (tok.size() == 1 && head == "end") {
      section = "end";
    } else if (tok.size() == 1 && (head == "maximize" || head == "maximise" || head == "max")) {
      throw ParseError("maximization LP files are not supported");
    } else {
      if (section.empty() || section == "end") throw ParseError("LP text outside a section: " + line);
      section_text[section] += line + "\n";
    }
  }

  RawModel raw;
  raw.name = model_name;
  auto parse_terms = [&](const std::vector<LpToken>& toks, std::size_t& pos,
                         std::vector<std::pair<int, double>>& terms, double* constant) {
    while (pos < toks.size() && toks[pos].kind != LpToken::sense) {
      double sign = 1;
      while (pos < toks.size() && toks[pos].kind == LpToken::sign) {
        if (toks[pos].text == "-") sign = -sign;
        ++pos;
      }
      if (pos >= toks.size()) throw ParseError("dangling sign in LP expression");
      double coef = 1;
      if (toks[pos].kind == LpToken::number) {
        coef = parse_number(toks[pos].text, "LP expression");
        ++pos;
        if (pos >= toks.size() || toks[pos].kind != LpToken::name) {
          if (!constant) throw ParseError("constant term in LP row");
          *constant += sign * coef;
          continue;
        }
      }
      if (toks[pos].kind != LpToken::name) throw ParseError("expected a variable in LP expression");
      terms.push_back({raw.var(toks[pos].text), sign * coef});
      ++pos;
    }
  };

  {
    const auto toks = tokenize_lp(section_text["objective"]);
    std::size_t pos = 0;
    if (toks.size() >= 2 && toks[0].kind == LpToken::name && toks[1].kind == LpToken::colon) pos = 2;
    parse_terms(toks, pos, raw.objective, &raw.constant);
    if (pos != toks.size()) throw ParseError("relational operator in LP objective");
  }
  {
    const auto toks = tokenize_lp(section_text["rows"]);
    std::size_t pos = 0;
    while (pos < toks.size()) {
      RawModel::RawRow row;
      if (pos + 1 < toks.size() && toks[pos].kind == LpToken::name && toks[pos + 1].kind == LpToken::colon) {
        row.name = toks[pos].text;
        pos += 2;
      } else {
        row.name = "R" + std::to_string(raw.rows.size() + 1);
      }
      parse_terms(toks, pos, row.terms, nullptr);
      if (pos >= toks.size()) throw ParseError("LP row " + row.name + " lacks a relational operator");
      const std::string& op = toks[pos++].text;
      row.sense = op == "<=" ? Sense::le : op == ">=" ? Sense::ge : Sense::eq;
      double sign = 1;
      while (pos < toks.size() && toks[pos].kind == LpToken::sign) sign = toks[pos++].text == "-" ? -sign : sign;
      if (pos >= toks.size() || toks[pos].kind != LpToken::number) {
        throw ParseError("LP row " + row.name + " lacks a numeric right-hand side");
      }
      row.rhs = sign * parse_number(toks[pos++].text, "LP row " + row.name);
      raw.rows.push_back(std::move(row));
    }
  }
  for (const std::string& line : split_lines(section_text["bounds"])) {
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    auto var_of = [&](const std::string& name) -> Variable& {
      return raw.vars[static_cast<std::size_t>(raw.var(name))];
    };
    if (tok.size() == 2 && lower(tok[1]) == "free") {
      Variable& v = var_of(tok[0]);
      v.lower = -kInfinity;
      v.upper = kInfinity;
    } else if (tok.size() == 5 && tok[1] == "<=" && tok[3] == "<=") {
      Variable& v = var_of(tok[2]);
      v.lower = parse_number(tok[0], "LP bounds");
      v.upper = parse_number(tok[4], "LP bounds");
    } else if (tok.size() == 3 && (tok[1] == "=" || tok[1] == "<=" || tok[1] == ">=")) {
      Variable& v = var_of(tok[0]);
      const double value = parse_number(tok[2], "LP bounds");
      if (tok[1] == "=") v.lower = v.upper = value;
      else if (tok[1] == "<=") v.upper = value;
      else v.lower = value;
    } else {
      throw ParseError("unsupported LP bound line: " + line);
    }
  }
  for (const auto& name : split_ws(section_text["generals"])) {
    raw.vars[static_cast<std::size_t>(raw.var(name))].type = VarType::integer;
  }
  for (const auto& name : split_ws(section_text["binaries"])) {
    Variable& v = raw.vars[static_cast<std::size_t>(raw.var(name))];
    v.type = VarType::binary;
    v.lower = 0;
    v.upper = 1;
  }
  try {
    return raw.build();
  } catch (const ModelError& e) {
    throw ParseError(std::string("LP model: ") + e.what());
  }
}

Listing parse_listing(const std::string& text) {
  Listing out;
  int line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      const std::string comment = line.substr(hash + 1);
      const auto colon = comment.find(':');
      if (colon != std::string::npos) {
        const auto key = split_ws(comment.substr(0, colon));
        const auto value = split_ws(comment.substr(colon + 1));
        if (key.size() == 1) {
          std::string joined;
          for (const auto& v : value) joined += (joined.empty() ? "" : " ") + v;
          out.meta[key[0]] = joined;
        }
      }
    }
    const auto tok = split_ws(line.substr(0, hash));
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError("listing line " + std::to_string(line_no) + " is not 'name value'");
    const double value = parse_number(tok[1], "listing line " + std::to_string(line_no));
    if (!out.values.emplace(tok[0], value).second) {
      throw ParseError("listing names " + tok[0] + " twice");
    }
  }
  return out;
}

std::string write_listing(const LinearModel& model, const std::vector<double>& values,
                          const std::map<std::string, std::string>& meta, bool skip_zeros) {
  if (static_cast<int>(values.size()) != model.num_variables()) {
    throw ModelError("listing values do not match the model");
  }
  std::string out;
  for (const auto& [key, value] : meta) out += "# " + key + ": " + value + "\n";
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (skip_zeros && values[v] == 0) continue;
    out += model.variables()[v].name + " " + format_number(values[v]) + "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace xdock
