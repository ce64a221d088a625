#pragma once

// In-memory linear programs and the textual LP file format.
//
// All variables are nonnegative and unbounded above. Files are written as
//
//   \ comment
//   Maximize
//    obj: + x_0_0 + x_0_1
//   Subject To
//    cap_0: + x_0_0 + x_1_0 <= 10
//   Bounds
//    x_0_0 >= 0
//   End
//
// Every variable is listed under Bounds so that the variable set survives a
// round trip even when a variable has no nonzero coefficient.

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lbmcf/io.hpp"
#include "lbmcf/types.hpp"

namespace lbmcf {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LpTerm {
  std::int32_t variable = 0;
  double coefficient = 0.0;
  friend bool operator==(const LpTerm&, const LpTerm&) = default;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  friend bool operator==(const LpRow&, const LpRow&) = default;
};

struct LpModel {
  std::string name;
  std::vector<std::string> variables;
  std::vector<double> objective;  // dense, one coefficient per variable; maximized
  std::vector<LpRow> rows;

  std::int32_t add_variable(std::string var_name, double objective_coefficient = 0.0) {
    variables.push_back(std::move(var_name));
    objective.push_back(objective_coefficient);
    return static_cast<std::int32_t>(variables.size() - 1);
  }

  std::size_t variable_count() const { return variables.size(); }
  std::size_t row_count() const { return rows.size(); }

  friend bool operator==(const LpModel& a, const LpModel& b) {
    return a.variables == b.variables && a.objective == b.objective && a.rows == b.rows;
  }
};

namespace detail {

inline constexpr std::string_view kVacuousRowMarker = "\\ vacuous row ";

inline const char* sense_text(RowSense s) {
  switch (s) {
    case RowSense::kLessEqual: return "<=";
    case RowSense::kEqual: return "=";
    case RowSense::kGreaterEqual: return ">=";
  }
  return "?";
}

inline void write_terms(std::ostream& out, const LpModel& model, const std::vector<LpTerm>& terms) {
  constexpr int kTermsPerLine = 8;
  int on_line = 0;
  for (const LpTerm& t : terms) {
    if (on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
    const double c = t.coefficient;
    out << (c < 0 ? " - " : " + ");
    if (std::abs(c) != 1.0) out << format_double(std::abs(c)) << ' ';
    out << model.variables[static_cast<std::size_t>(t.variable)];
    ++on_line;
  }
}

}  // namespace detail

inline std::string write_lp_file(const LpModel& model) {
  std::ostringstream out;
  if (!model.name.empty()) out << "\\ " << model.name << '\n';
  out << "\\ " << model.variable_count() << " variables, " << model.row_count() << " constraints\n";
  out << "Maximize\n obj:";
  std::vector<LpTerm> objective;
  for (std::size_t j = 0; j < model.objective.size(); ++j)
    if (model.objective[j] != 0.0) objective.push_back({static_cast<std::int32_t>(j), model.objective[j]});
  if (objective.empty() && !model.variables.empty()) objective.push_back({0, 0.0});
  detail::write_terms(out, model, objective);
  out << "\nSubject To\n";
  for (const LpRow& row : model.rows) {
    if (row.terms.empty() && model.variables.empty()) {
      // Not expressible without a variable. Written as a marked comment that
      // other readers skip and parse_lp_file restores.
      out << detail::kVacuousRowMarker << row.name << ": 0 " << detail::sense_text(row.sense) << ' '
          << format_double(row.rhs) << '\n';
      continue;
    }
    out << ' ' << row.name << ':';
    if (row.terms.empty()) {
      detail::write_terms(out, model, {{0, 0.0}});
    } else {
      detail::write_terms(out, model, row.terms);
    }
    out << ' ' << detail::sense_text(row.sense) << ' ' << format_double(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) out << ' ' << v << " >= 0\n";
  out << "End\n";
  return out.str();
}

// Reads the subset of the LP format produced by write_lp_file. Zero
// coefficients are dropped.
inline LpModel parse_lp_file(std::string_view text) {
  enum class Section { kNone, kObjective, kConstraints, kBounds, kEnd };
  LpModel model;
  std::unordered_map<std::string, std::int32_t> index;
  const auto variable = [&](std::string_view name) {
    const std::string key(name);
    auto it = index.find(key);
    if (it == index.end()) it = index.emplace(key, model.add_variable(key)).first;
    return it->second;
  };

  // Continuation lines are joined onto the statement they belong to.
  Section section = Section::kNone;
  std::vector<std::pair<Section, std::pair<std::size_t, std::string>>> items;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.starts_with(detail::kVacuousRowMarker) && section == Section::kConstraints) {
      items.push_back({section, {line_no, line.substr(detail::kVacuousRowMarker.size())}});
      continue;
    }
    if (auto c = line.find('\\'); c != std::string::npos) line.erase(c);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) continue;
    std::string lower = trimmed;
    for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "maximize" || lower == "maximise" || lower == "max") { section = Section::kObjective; continue; }
    if (lower == "subject to" || lower == "st" || lower == "s.t.") { section = Section::kConstraints; continue; }
    if (lower == "bounds") { section = Section::kBounds; continue; }
    if (lower == "end") { section = Section::kEnd; continue; }
    if (section == Section::kNone || section == Section::kEnd) throw ParseError(line_no, "text outside of a section");
    const bool starts_statement = trimmed.find(':') != std::string::npos || section == Section::kBounds;
    if (starts_statement || items.empty() || items.back().first != section) {
      items.push_back({section, {line_no, trimmed}});
    } else {
      items.back().second.second += ' ' + trimmed;
    }
  }

  const auto split = [](const std::string& s) {
    std::vector<std::string> tokens;
    std::istringstream ts(s);
    std::string tok;
    while (ts >> tok) tokens.push_back(tok);
    return tokens;
  };
  const auto number = [](const std::string& tok, std::size_t ln) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError(ln, "bad number '" + tok + "'");
    return v;
  };
  const auto is_number = [](const std::string& tok) {
    return !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.');
  };
  // Parses "+ 2 x - y" into terms.
  const auto parse_expr = [&](const std::vector<std::string>& tokens, std::size_t ln) {
    std::vector<LpTerm> terms;
    double sign = 1.0;
    double coef = 1.0;
    bool have_coef = false;
    for (const auto& tok : tokens) {
      if (tok == "+") { sign = 1.0; continue; }
      if (tok == "-") { sign = -1.0; continue; }
      if (is_number(tok)) { coef = number(tok, ln); have_coef = true; continue; }
      const double c = sign * (have_coef ? coef : 1.0);
      const auto var = variable(tok);
      if (c != 0.0) terms.push_back({var, c});
      sign = 1.0;
      coef = 1.0;
      have_coef = false;
    }
    return terms;
  };

  // Bounds first so that variable order follows the declaration list.
  for (const auto& [sec, item] : items) {
    if (sec != Section::kBounds) continue;
    const auto& [ln, textline] = item;
    const auto tokens = split(textline);
    if (tokens.size() != 3 || tokens[1] != ">=" || number(tokens[2], ln) != 0.0)
      throw ParseError(ln, "unsupported bound '" + textline + "'");
    variable(tokens[0]);
  }
  for (const auto& [sec, item] : items) {
    if (sec == Section::kBounds) continue;
    const auto& [ln, textline] = item;
    const auto colon = textline.find(':');
    if (colon == std::string::npos) throw ParseError(ln, "statement needs a name");
    const std::string name = textline.substr(0, colon);
    auto tokens = split(textline.substr(colon + 1));
    if (sec == Section::kObjective) {
      const auto terms = parse_expr(tokens, ln);
      model.objective.resize(model.variables.size(), 0.0);
      for (const LpTerm& t : terms) model.objective[static_cast<std::size_t>(t.variable)] += t.coefficient;
      continue;
    }
    if (tokens.size() < 2) throw ParseError(ln, "constraint needs a sense and a right-hand side");
    LpRow row;
    row.name = name;
    const std::string sense = tokens[tokens.size() - 2];
    if (sense == "<=" || sense == "=<") row.sense = RowSense::kLessEqual;
    else if (sense == "=") row.sense = RowSense::kEqual;
    else if (sense == ">=" || sense == "=>") row.sense = RowSense::kGreaterEqual;
    else throw ParseError(ln, "unknown constraint sense '" + sense + "'");
    row.rhs = number(tokens.back(), ln);
    tokens.resize(tokens.size() - 2);
    row.terms = parse_expr(tokens, ln);
    model.rows.push_back(std::move(row));
  }
  // Objective entries may have been registered before later variables.
  model.objective.resize(model.variables.size(), 0.0);
  return model;
}

}  // namespace lbmcf
