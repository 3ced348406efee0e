// Copyright 2026 The IOA Solver Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CPLEX LP text format. Sections are written in the order Minimize,
// Subject To, Bounds, Binary, General, SOS, End. Every column appears in
// the objective (with a zero coefficient if need be) so that reading a file
// back reproduces the column order.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ioa/common.hpp"
#include "ioa/milp/model.hpp"

namespace ioa::milp {

// Replaces characters outside [A-Za-z0-9_] by '_' and prefixes names that
// would not start with a letter or underscore.
inline std::string sanitize_name(const std::string& name) {
  std::string out;
  out.reserve(name.size() + 2);
  for (char c : name)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c
                                                                          : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
    out = "v_" + out;
  // A leading 'e' followed by digits reads as an exponent in some parsers.
  if ((out[0] == 'e' || out[0] == 'E') && out.size() > 1 &&
      std::isdigit(static_cast<unsigned char>(out[1])))
    out = "v_" + out;
  return out;
}

namespace lp_detail {

inline std::string fmt(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt_term(double c, const std::string& name, bool first) {
  std::string s;
  if (c < 0 || (c == 0.0 && std::signbit(c))) {
    s = first ? "-" : "- ";
    s += fmt(-c);
  } else {
    s = first ? "" : "+ ";
    s += fmt(c);
  }
  return s + " " + name;
}

inline void write_expr(std::ostream& os, const std::vector<Term>& terms,
                       const std::vector<std::string>& names) {
  int on_line = 0;
  bool first = true;
  for (const auto& t : terms) {
    if (on_line == 6) {
      os << "\n   ";
      on_line = 0;
    }
    os << ' ' << fmt_term(t.coef, names[t.var.index], first);
    first = false;
    ++on_line;
  }
}

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline bool parse_number(const std::string& tok, double& out) {
  const std::string l = lower(tok);
  if (l == "inf" || l == "+inf" || l == "infinity" || l == "+infinity") {
    out = kInf;
    return true;
  }
  if (l == "-inf" || l == "-infinity") {
    out = -kInf;
    return true;
  }
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinary, kGeneral, kSos, kEnd };

inline Section section_of(const std::string& line, bool& maximize) {
  std::string l = lower(line);
  while (!l.empty() && std::isspace(static_cast<unsigned char>(l.back()))) l.pop_back();
  size_t b = l.find_first_not_of(" \t");
  if (b == std::string::npos) return Section::kNone;
  l = l.substr(b);
  if (l == "minimize" || l == "minimise" || l == "minimum" || l == "min")
    return maximize = false, Section::kObjective;
  if (l == "maximize" || l == "maximise" || l == "maximum" || l == "max")
    return maximize = true, Section::kObjective;
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t." ||
      l == "st.")
    return Section::kConstraints;
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "binary" || l == "binaries" || l == "bin") return Section::kBinary;
  if (l == "general" || l == "generals" || l == "gen" || l == "integer" ||
      l == "integers")
    return Section::kGeneral;
  if (l == "sos") return Section::kSos;
  if (l == "end") return Section::kEnd;
  return Section::kNone;
}

// Splits on whitespace and around the operator characters.
inline std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < text.size() && (text[i + 1] == '=' || text[i + 1] == '<' ||
                                  text[i + 1] == '>')) {
        op.push_back(text[i + 1]);
        ++i;
      }
      ++i;
      if (op == "=<" || op == "<") op = "<=";
      if (op == "=>" || op == ">") op = ">=";
      out.push_back(op);
      continue;
    }
    if (c == ':' || c == '+' || c == '-') {
      // A sign directly followed by "inf" stays attached.
      if ((c == '+' || c == '-') && i + 1 < text.size() &&
          (text[i + 1] == 'i' || text[i + 1] == 'I')) {
        size_t j = i + 1;
        while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
        std::string word = lower(text.substr(i + 1, j - i - 1));
        if (word == "inf" || word == "infinity") {
          out.push_back(text.substr(i, j - i));
          i = j;
          continue;
        }
      }
      if (c == ':' && i + 1 < text.size() && text[i + 1] == ':') {
        out.push_back("::");
        i += 2;
        continue;
      }
      out.push_back(std::string(1, c));
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size()) {
      const char d = text[j];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '<' || d == '>' ||
          d == '=' || d == ':')
        break;
      if ((d == '+' || d == '-') && j > i) {
        // Keep exponent signs inside numbers such as 1e-05.
        const char p = text[j - 1];
        const bool numeric = std::isdigit(static_cast<unsigned char>(text[i])) ||
                             text[i] == '.';
        if (!(numeric && (p == 'e' || p == 'E'))) break;
      }
      ++j;
    }
    out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_number_token(const std::string& t) {
  double v;
  return parse_number(t, v);
}

}  // namespace lp_detail

inline void write_lp(std::ostream& os, const MilpModel& model) {
  using namespace lp_detail;
  std::vector<std::string> names(model.num_vars());
  {
    std::unordered_map<std::string, int> seen;
    for (int j = 0; j < model.num_vars(); ++j) {
      std::string s = sanitize_name(model.vars()[j].name);
      if (seen.count(s)) s += "_" + std::to_string(j);
      seen[s] = j;
      names[j] = s;
    }
  }
  os << "\\ written by ioa\n";
  os << "Minimize\n obj:";
  {
    std::vector<Term> obj;
    for (int j = 0; j < model.num_vars(); ++j)
      obj.push_back({VarId{j}, model.objective()[j]});
    write_expr(os, obj, names);
    if (model.objective_offset() != 0.0) {
      const double c = model.objective_offset();
      os << (c < 0 ? " - " : " + ") << fmt(std::fabs(c));
    }
    os << "\n";
  }
  os << "Subject To\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    const auto& row = model.rows()[i];
    std::string rname = row.name.empty() ? "c" + std::to_string(i)
                                         : sanitize_name(row.name);
    os << ' ' << rname << ':';
    if (row.terms.empty() && model.num_vars() > 0)
      os << " 0 " << names[0];
    write_expr(os, row.terms, names);
    os << (row.sense == Sense::kLessEqual      ? " <= "
           : row.sense == Sense::kGreaterEqual ? " >= "
                                               : " = ")
       << fmt(row.rhs) << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.vars()[j];
    if (v.lower == -kInf && v.upper == kInf) {
      os << ' ' << names[j] << " free\n";
    } else {
      os << ' ' << fmt(v.lower) << " <= " << names[j] << " <= " << fmt(v.upper)
         << "\n";
    }
  }
  bool any_bin = false, any_gen = false;
  for (const auto& v : model.vars()) {
    any_bin |= v.type == VarType::kBinary;
    any_gen |= v.type == VarType::kInteger;
  }
  if (any_bin) {
    os << "Binary\n";
    for (int j = 0; j < model.num_vars(); ++j)
      if (model.vars()[j].type == VarType::kBinary) os << ' ' << names[j] << "\n";
  }
  if (any_gen) {
    os << "General\n";
    for (int j = 0; j < model.num_vars(); ++j)
      if (model.vars()[j].type == VarType::kInteger) os << ' ' << names[j] << "\n";
  }
  if (!model.sos1().empty()) {
    os << "SOS\n";
    for (size_t g = 0; g < model.sos1().size(); ++g) {
      os << " s" << g << ": S1::";
      int k = 1;
      for (auto v : model.sos1()[g]) os << ' ' << names[v.index] << ':' << k++;
      os << "\n";
    }
  }
  os << "End\n";
}

inline void export_lp_file(const MilpModel& model, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kIo, "cannot write " + path);
  os.precision(17);
  write_lp(os, model);
  if (!os) throw Error(ErrorCode::kIo, "write failed for " + path);
}

inline MilpModel read_lp(std::istream& is) {
  using namespace lp_detail;
  MilpModel model;
  std::map<Section, std::string> text;
  std::map<Section, int> first_line;
  Section cur = Section::kNone;
  bool maximize = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto bs = line.find('\\');
    if (bs != std::string::npos) line.erase(bs);
    bool mx = maximize;
    Section s = section_of(line, mx);
    if (s != Section::kNone) {
      maximize = mx;
      cur = s;
      if (!first_line.count(s)) first_line[s] = lineno;
      if (s == Section::kEnd) break;
      continue;
    }
    if (cur == Section::kNone) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(lineno) + ": text before a section");
      continue;
    }
    if (cur == Section::kBounds || cur == Section::kSos) {
      text[cur] += line + "\n";
    } else {
      text[cur] += line + " ";
    }
  }

  auto var_of = [&](const std::string& name) {
    VarId v = model.find(name);
    if (!v.valid()) v = model.add_variable(name, 0.0, kInf);
    return v;
  };
  auto fail = [](Section s, const std::string& what) {
    const char* sec = s == Section::kObjective     ? "objective"
                      : s == Section::kConstraints ? "constraints"
                      : s == Section::kBounds      ? "bounds"
                                                   : "section";
    return Error(ErrorCode::kParse, std::string(sec) + ": " + what);
  };

  // Linear expression: [sign] [coef] name ... Constants are collected.
  auto parse_expr = [&](const std::vector<std::string>& tok, size_t& i,
                        Section s, std::vector<Term>& terms, double& constant) {
    while (i < tok.size()) {
      const std::string& t = tok[i];
      if (t == "<=" || t == ">=" || t == "=") return;
      double sign = 1.0;
      bool saw_sign = false;
      while (i < tok.size() && (tok[i] == "+" || tok[i] == "-")) {
        if (tok[i] == "-") sign = -sign;
        saw_sign = true;
        ++i;
      }
      if (i >= tok.size()) throw fail(s, "dangling sign");
      double coef = 1.0;
      double num;
      if (parse_number(tok[i], num)) {
        coef = num;
        ++i;
        const bool next_is_name =
            i < tok.size() && tok[i] != "+" && tok[i] != "-" && tok[i] != "<=" &&
            tok[i] != ">=" && tok[i] != "=" && !is_number_token(tok[i]) &&
            !(i + 1 < tok.size() && tok[i + 1] == ":");
        if (!next_is_name) {
          constant += sign * coef;
          continue;
        }
      }
      if (i >= tok.size()) throw fail(s, "expected a variable name");
      terms.push_back({var_of(tok[i]), sign * coef});
      ++i;
      (void)saw_sign;
    }
  };

  if (text.count(Section::kObjective)) {
    auto tok = tokenize(text[Section::kObjective]);
    size_t i = 0;
    if (tok.size() >= 2 && tok[1] == ":") i = 2;
    std::vector<Term> terms;
    double constant = 0.0;
    parse_expr(tok, i, Section::kObjective, terms, constant);
    if (i != tok.size()) throw fail(Section::kObjective, "unexpected relation");
    const double sgn = maximize ? -1.0 : 1.0;
    for (const auto& t : terms) model.add_objective_coef(t.var, sgn * t.coef);
    model.set_objective_offset(sgn * constant);
  }

  if (text.count(Section::kConstraints)) {
    auto tok = tokenize(text[Section::kConstraints]);
    size_t i = 0;
    int count = 0;
    while (i < tok.size()) {
      std::string name;
      if (i + 1 < tok.size() && tok[i + 1] == ":") {
        name = tok[i];
        i += 2;
      } else {
        name = "c" + std::to_string(count);
      }
      std::vector<Term> terms;
      double constant = 0.0;
      parse_expr(tok, i, Section::kConstraints, terms, constant);
      if (i >= tok.size()) throw fail(Section::kConstraints, "row " + name + " has no relation");
      const std::string op = tok[i++];
      if (i >= tok.size()) throw fail(Section::kConstraints, "row " + name + " has no right-hand side");
      double sign = 1.0;
      while (tok[i] == "+" || tok[i] == "-") {
        if (tok[i] == "-") sign = -sign;
        ++i;
      }
      double rhs;
      if (!parse_number(tok[i], rhs))
        throw fail(Section::kConstraints, "row " + name + ": bad right-hand side '" + tok[i] + "'");
      ++i;
      const Sense sense = op == "<=" ? Sense::kLessEqual
                          : op == ">=" ? Sense::kGreaterEqual
                                       : Sense::kEqual;
      // An all-zero row is how an empty row is written.
      if (std::all_of(terms.begin(), terms.end(),
                      [](const Term& t) { return t.coef == 0.0; }))
        terms.clear();
      model.add_constraint(name, std::move(terms), sense, sign * rhs - constant);
      ++count;
    }
  }

  std::vector<bool> lower_set(model.num_vars(), false);
  if (text.count(Section::kBounds)) {
    std::istringstream ls(text[Section::kBounds]);
    std::string bl;
    while (std::getline(ls, bl)) {
      auto tok = tokenize(bl);
      // Merge detached signs in front of numbers.
      std::vector<std::string> t;
      for (size_t k = 0; k < tok.size(); ++k) {
        if ((tok[k] == "-" || tok[k] == "+") && k + 1 < tok.size() &&
            is_number_token(tok[k + 1])) {
          t.push_back(tok[k] + tok[k + 1]);
          ++k;
        } else {
          t.push_back(tok[k]);
        }
      }
      if (t.empty()) continue;
      auto set_bound = [&](const std::string& name, const std::string& op,
                           double v, bool var_on_left) {
        VarId id = var_of(name);
        auto& var = model.var(id);
        if (op == "=") {
          var.lower = var.upper = v;
          return;
        }
        const bool upper = (op == "<=") == var_on_left;
        if (upper) var.upper = v;
        else var.lower = v;
      };
      double v;
      if (t.size() == 2 && lower(t[1]) == "free") {
        VarId id = var_of(t[0]);
        model.var(id).lower = -kInf;
        model.var(id).upper = kInf;
      } else if (t.size() == 5 && parse_number(t[0], v)) {
        double hi;
        if (!parse_number(t[4], hi)) throw fail(Section::kBounds, "bad bound line '" + bl + "'");
        set_bound(t[2], t[1], v, false);
        set_bound(t[2], t[3], hi, true);
      } else if (t.size() == 3 && parse_number(t[0], v)) {
        set_bound(t[2], t[1], v, false);
      } else if (t.size() == 3 && parse_number(t[2], v)) {
        set_bound(t[0], t[1], v, true);
      } else {
        throw fail(Section::kBounds, "bad bound line '" + bl + "'");
      }
    }
  }
  auto mark = [&](Section s, VarType type) {
    if (!text.count(s)) return;
    for (const auto& name : tokenize(text[s])) {
      VarId id = model.find(name);
      if (!id.valid()) {
        id = model.add_variable(name, 0.0, type == VarType::kBinary ? 1.0 : kInf);
      }
      model.var(id).type = type;
    }
  };
  mark(Section::kBinary, VarType::kBinary);
  mark(Section::kGeneral, VarType::kInteger);
  if (text.count(Section::kSos)) {
    std::istringstream ss(text[Section::kSos]);
    std::string sl;
    while (std::getline(ss, sl)) {
      auto tok = tokenize(sl);
      if (tok.empty()) continue;
      std::vector<VarId> members;
      // name : S1 :: v:1 v:2 ...
      size_t k = 0;
      while (k < tok.size() && tok[k] != "::") ++k;
      if (k == tok.size()) throw Error(ErrorCode::kParse, "bad SOS line '" + sl + "'");
      for (++k; k < tok.size(); ++k) {
        if (tok[k] == ":") {
          ++k;
          continue;
        }
        members.push_back(var_of(tok[k]));
      }
      model.add_sos1(std::move(members));
    }
  }
  return model;
}

inline MilpModel import_lp_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kIo, "cannot read " + path);
  return read_lp(is);
}

// "name value" per line; blank lines and '#' comments are ignored. A line
// "status <word>" is reported separately.
struct SolutionFile {
  std::unordered_map<std::string, double> values;
  std::string status;
};

inline SolutionFile read_solution(std::istream& is) {
  SolutionFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name, value, extra;
    if (!(ls >> name)) continue;
    if (!(ls >> value) || (ls >> extra))
      throw Error(ErrorCode::kParse, "solution line " + std::to_string(lineno) +
                                         ": expected 'name value'");
    double v;
    if (!lp_detail::parse_number(value, v)) {
      if (name == "status") {
        out.status = value;
        continue;
      }
      throw Error(ErrorCode::kParse, "solution line " + std::to_string(lineno) +
                                         ": bad value '" + value + "'");
    }
    out.values[name] = v;
  }
  return out;
}

inline void write_solution(std::ostream& os, const MilpModel& model,
                           const std::vector<double>& x) {
  os << "# name value\n";
  char buf[64];
  for (int j = 0; j < model.num_vars(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", x[j]);
    os << sanitize_name(model.vars()[j].name) << ' ' << buf << "\n";
  }
}

}  // namespace ioa::milp
