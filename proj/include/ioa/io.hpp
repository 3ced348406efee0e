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

// JSON instance files. Layout is described in schema/instance.schema.json.

#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ioa/common.hpp"
#include "ioa/flp.hpp"
#include "ioa/problem.hpp"
#include "ioa/scurve.hpp"

namespace ioa::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct GenericInstance {
  std::string id;
  Problem problem;
};

using Instance = std::variant<FlpInstance, GenericInstance>;

namespace io_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParse, path + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

inline double num(const Json& j, const std::string& key, const std::string& path) {
  return number(field(j, key, path), path + "." + key);
}

inline double num_or(const Json& j, const std::string& key, const std::string& path,
                     double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return number(*it, path + "." + key);
}

// A bound: number, or null for an infinite one.
inline double bound_or(const Json& j, const std::string& key, const std::string& path,
                       double fallback, double infinite) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (it->is_null()) return infinite;
  return number(*it, path + "." + key);
}

inline std::string str(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

inline std::string str_or(const Json& j, const std::string& key, const std::string& path,
                          const std::string& fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) fail(path + "." + key, "expected a string");
  return it->get<std::string>();
}

inline const Json& array(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

inline std::string at(const std::string& path, size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

}  // namespace io_detail

inline Json curve_to_json(const CurveSpec& s) {
  Json j;
  j["family"] = to_string(s.kind);
  j["lower"] = s.lower;
  j["upper"] = s.upper;
  j["deflection"] = s.deflection;
  switch (s.kind) {
    case CurveKind::kPowerPower:
      j["a1"] = s.a1;
      j["b1"] = s.b1;
      j["a2"] = s.a2;
      j["b2"] = s.b2;
      break;
    case CurveKind::kPowerHyperbolic:
      j["a1"] = s.a1;
      j["b1"] = s.b1;
      j["a2"] = s.a2;
      break;
    case CurveKind::kCubic:
      j["a"] = s.a;
      j["eps"] = s.eps;
      j["w"] = s.w;
      break;
    case CurveKind::kCustom:
      throw Error(ErrorCode::kInvalidArgument, "custom curves cannot be serialised");
  }
  if (s.scale != 1.0) j["scale"] = s.scale;
  return j;
}

inline CurveSpec curve_from_json(const Json& j, const std::string& path) {
  using namespace io_detail;
  CurveSpec s;
  try {
    s.kind = curve_kind_from_string(str(j, "family", path));
  } catch (const Error& e) {
    fail(path + ".family", e.what());
  }
  if (s.kind == CurveKind::kCustom) fail(path + ".family", "custom curves need code");
  s.lower = num(j, "lower", path);
  s.upper = num(j, "upper", path);
  s.deflection = num(j, "deflection", path);
  switch (s.kind) {
    case CurveKind::kPowerPower:
      s.a1 = num(j, "a1", path);
      s.b1 = num(j, "b1", path);
      s.a2 = num(j, "a2", path);
      s.b2 = num(j, "b2", path);
      break;
    case CurveKind::kPowerHyperbolic:
      s.a1 = num(j, "a1", path);
      s.b1 = num(j, "b1", path);
      s.a2 = num(j, "a2", path);
      break;
    default:
      s.a = num(j, "a", path);
      s.eps = num_or(j, "eps", path, 0.0);
      s.w = num(j, "w", path);
      break;
  }
  s.scale = num_or(j, "scale", path, 1.0);
  return s;
}

inline SCurve build_curve_at(const CurveSpec& spec, const std::string& path) {
  try {
    return build_scurve(spec);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

inline Json flp_to_json(const FlpInstance& inst) {
  Json j;
  j["format"] = "ioa-instance";
  j["version"] = kFormatVersion;
  j["kind"] = "flp";
  Json meta;
  meta["id"] = inst.meta.id;
  meta["set"] = inst.meta.set;
  meta["seed"] = inst.meta.seed;
  meta["ftype"] = inst.meta.ftype;
  meta["cost"] = inst.meta.cost;
  meta["beta"] = inst.meta.beta;
  j["meta"] = meta;
  Json fac = Json::array(), cus = Json::array(), tr = Json::array(), cur = Json::array();
  for (const auto& f : inst.facilities) {
    fac.push_back({{"fixed_cost", f.fixed_cost}, {"capacity", f.capacity}, {"x", f.x}, {"y", f.y}});
    cur.push_back(curve_to_json(f.curve));
  }
  for (const auto& c : inst.customers)
    cus.push_back({{"demand", c.demand}, {"x", c.x}, {"y", c.y}});
  for (const auto& row : inst.transport) tr.push_back(row);
  j["facilities"] = fac;
  j["customers"] = cus;
  j["transport"] = tr;
  j["curves"] = cur;
  return j;
}

inline FlpInstance flp_from_json(const Json& j) {
  using namespace io_detail;
  FlpInstance inst;
  if (auto it = j.find("meta"); it != j.end()) {
    const Json& m = *it;
    if (!m.is_object()) fail("meta", "expected an object");
    inst.meta.id = str_or(m, "id", "meta", "");
    inst.meta.set = str_or(m, "set", "meta", "");
    if (auto s = m.find("seed"); s != m.end()) {
      if (!s->is_number_unsigned()) fail("meta.seed", "expected a nonnegative integer");
      inst.meta.seed = s->get<std::uint64_t>();
    }
    inst.meta.ftype = static_cast<int>(num_or(m, "ftype", "meta", 0));
    inst.meta.cost = static_cast<int>(num_or(m, "cost", "meta", 0));
    inst.meta.beta = num_or(m, "beta", "meta", 0.0);
  }
  const Json& fac = array(j, "facilities", "");
  const Json& cur = array(j, "curves", "");
  if (cur.size() != fac.size()) fail("curves", "needs one curve per facility");
  for (size_t k = 0; k < fac.size(); ++k) {
    const std::string p = at("facilities", k);
    Facility f;
    f.fixed_cost = num(fac[k], "fixed_cost", p);
    f.capacity = num(fac[k], "capacity", p);
    f.x = num_or(fac[k], "x", p, 0.0);
    f.y = num_or(fac[k], "y", p, 0.0);
    f.curve = curve_from_json(cur[k], at("curves", k));
    build_curve_at(f.curve, at("curves", k));
    inst.facilities.push_back(f);
  }
  const Json& cus = array(j, "customers", "");
  for (size_t k = 0; k < cus.size(); ++k) {
    const std::string p = at("customers", k);
    Customer c;
    c.demand = num(cus[k], "demand", p);
    c.x = num_or(cus[k], "x", p, 0.0);
    c.y = num_or(cus[k], "y", p, 0.0);
    inst.customers.push_back(c);
  }
  const Json& tr = array(j, "transport", "");
  if (tr.size() != cus.size()) fail("transport", "needs one row per customer");
  for (size_t i = 0; i < tr.size(); ++i) {
    const std::string p = at("transport", i);
    if (!tr[i].is_array() || tr[i].size() != fac.size())
      fail(p, "needs one entry per facility");
    std::vector<double> row;
    for (size_t k = 0; k < tr[i].size(); ++k) row.push_back(number(tr[i][k], at(p, k)));
    inst.transport.push_back(std::move(row));
  }
  try {
    inst.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return inst;
}

inline Json generic_to_json(const GenericInstance& g) {
  using namespace milp;
  const MilpModel& m = g.problem.base;
  auto name_of = [&](VarId v) { return m.var(v).name; };
  auto bound = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  Json j;
  j["format"] = "ioa-instance";
  j["version"] = kFormatVersion;
  j["kind"] = "generic";
  j["meta"] = {{"id", g.id}};
  Json vars = Json::array();
  for (const auto& v : m.vars()) {
    const char* type = v.type == VarType::kContinuous ? "continuous"
                       : v.type == VarType::kBinary   ? "binary"
                                                      : "integer";
    vars.push_back({{"name", v.name}, {"type", type}, {"lower", bound(v.lower)},
                    {"upper", bound(v.upper)}});
  }
  j["variables"] = vars;
  Json obj = Json::object();
  for (int k = 0; k < m.num_vars(); ++k)
    if (m.objective()[k] != 0.0) obj[m.vars()[k].name] = m.objective()[k];
  j["objective"] = {{"constant", m.objective_offset()}, {"terms", obj}};
  Json rows = Json::array();
  for (const auto& r : m.rows()) {
    Json terms = Json::object();
    for (const auto& t : r.terms) terms[name_of(t.var)] = t.coef;
    const char* sense = r.sense == Sense::kLessEqual      ? "<="
                        : r.sense == Sense::kGreaterEqual ? ">="
                                                          : "=";
    rows.push_back({{"name", r.name}, {"terms", terms}, {"sense", sense}, {"rhs", r.rhs}});
  }
  j["constraints"] = rows;
  Json st = Json::array();
  for (const auto& t : g.problem.sterms) {
    Json e = {{"name", t.name}, {"var", name_of(t.z)}, {"curve", curve_to_json(t.curve.spec())}};
    if (t.hosted()) {
      e["l0"] = name_of(t.l0);
      e["l1"] = name_of(t.l1);
    }
    st.push_back(e);
  }
  j["sterms"] = st;
  return j;
}

inline GenericInstance generic_from_json(const Json& j) {
  using namespace io_detail;
  using namespace milp;
  GenericInstance g;
  if (auto it = j.find("meta"); it != j.end()) g.id = str_or(*it, "id", "meta", "");
  MilpModel& m = g.problem.base;
  std::map<std::string, VarId> by_name;
  const Json& vars = array(j, "variables", "");
  for (size_t k = 0; k < vars.size(); ++k) {
    const std::string p = at("variables", k);
    const std::string name = str(vars[k], "name", p);
    if (by_name.count(name)) fail(p + ".name", "duplicate variable '" + name + "'");
    const std::string type = str_or(vars[k], "type", p, "continuous");
    VarType vt;
    if (type == "continuous") vt = VarType::kContinuous;
    else if (type == "binary") vt = VarType::kBinary;
    else if (type == "integer") vt = VarType::kInteger;
    else fail(p + ".type", "unknown type '" + type + "'");
    double lo = bound_or(vars[k], "lower", p, 0.0, -kInf);
    double hi = bound_or(vars[k], "upper", p, vt == VarType::kBinary ? 1.0 : kInf, kInf);
    if (lo > hi) fail(p, "lower bound exceeds upper bound");
    by_name[name] = m.add_variable(name, lo, hi, vt);
  }
  auto lookup = [&](const std::string& name, const std::string& p) {
    auto it = by_name.find(name);
    if (it == by_name.end()) fail(p, "unknown variable '" + name + "'");
    return it->second;
  };
  auto terms_of = [&](const Json& t, const std::string& p) {
    if (!t.is_object()) fail(p, "expected an object of coefficients");
    std::vector<Term> out;
    for (auto it = t.begin(); it != t.end(); ++it)
      out.push_back({lookup(it.key(), p + "." + it.key()), number(it.value(), p + "." + it.key())});
    return out;
  };
  if (auto it = j.find("objective"); it != j.end()) {
    m.set_objective_offset(num_or(*it, "constant", "objective", 0.0));
    if (auto t = it->find("terms"); t != it->end())
      for (const auto& term : terms_of(*t, "objective.terms"))
        m.add_objective_coef(term.var, term.coef);
  }
  if (auto it = j.find("constraints"); it != j.end()) {
    if (!it->is_array()) fail("constraints", "expected an array");
    for (size_t k = 0; k < it->size(); ++k) {
      const Json& r = (*it)[k];
      const std::string p = at("constraints", k);
      const std::string sense = str(r, "sense", p);
      Sense s;
      if (sense == "<=") s = Sense::kLessEqual;
      else if (sense == ">=") s = Sense::kGreaterEqual;
      else if (sense == "=" || sense == "==") s = Sense::kEqual;
      else fail(p + ".sense", "expected <=, >= or =");
      m.add_constraint(str_or(r, "name", p, "c" + std::to_string(k)),
                       terms_of(field(r, "terms", p), p + ".terms"), s, num(r, "rhs", p));
    }
  }
  if (auto it = j.find("sterms"); it != j.end()) {
    if (!it->is_array()) fail("sterms", "expected an array");
    for (size_t k = 0; k < it->size(); ++k) {
      const Json& t = (*it)[k];
      const std::string p = at("sterms", k);
      STerm st;
      st.z = lookup(str(t, "var", p), p + ".var");
      st.name = str_or(t, "name", p, m.var(st.z).name);
      st.curve = build_curve_at(curve_from_json(field(t, "curve", p), p + ".curve"), p + ".curve");
      if (t.contains("l0") || t.contains("l1")) {
        st.l0 = lookup(str(t, "l0", p), p + ".l0");
        st.l1 = lookup(str(t, "l1", p), p + ".l1");
      }
      g.problem.sterms.push_back(std::move(st));
    }
  }
  try {
    g.problem.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return g;
}

// Parses text; syntax errors report line and column.
inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": malformed JSON");
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "top level must be an object");
  const std::string kind = io_detail::str(j, "kind", "");
  if (auto v = j.find("version"); v != j.end() && (!v->is_number_integer() ||
                                                  v->get<int>() != kFormatVersion))
    throw Error(ErrorCode::kParse, "version: unsupported format version");
  try {
    if (kind == "flp") return flp_from_json(j);
    if (kind == "generic") return generic_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  throw Error(ErrorCode::kParse, "kind: expected 'flp' or 'generic'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_instance(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string to_text(const Instance& inst) {
  if (const auto* f = std::get_if<FlpInstance>(&inst)) return dump(flp_to_json(*f));
  return dump(generic_to_json(std::get<GenericInstance>(inst)));
}

}  // namespace ioa::io
