#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "latshift/verify.hpp"

namespace latshift {

using nlohmann::json;

// Rationals travel as "p/q" strings, never as floats.

inline json qseries_to_json(const QSeries& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms) terms.push_back({format_rat(e), format_rat(c)});
  return json{{"order", format_rat(s.order)}, {"terms", terms}};
}

inline QSeries qseries_from_json(const json& j) {
  QSeries s{{}, parse_rat(j.at("order").get<std::string>())};
  for (const auto& t : j.at("terms")) {
    Rat e = parse_rat(t.at(0).get<std::string>());
    Rat c = parse_rat(t.at(1).get<std::string>());
    if (c != 0 && e < s.order) s.terms.emplace(e, c);
  }
  return s;
}

inline json grade_to_json(const GradeValue& g) {
  return json{{"re", format_rat(g.re)}, {"im", format_rat(g.im)}};
}

inline json spectrum_to_json(const std::vector<std::pair<GradeValue, Int>>& sp) {
  json out = json::array();
  for (const auto& [g, d] : sp) out.push_back({{"grade", grade_to_json(g)}, {"dim", d.str()}});
  return out;
}

inline json type_record_to_json(const TypeRecord& t) {
  return json{{"self_dual", t.self_dual},
              {"dim_V0", t.dim_V0.str()},
              {"dim_Vm1", t.dim_Vm1.str()},
              {"codim_L1V1", t.codim_L1V1},
              {"label", t.label}};
}

inline json suite_report_to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return json{{"suite", r.suite}, {"pass", r.all_pass()}, {"checks", checks}};
}

// --- CLI config parsing -----------------------------------------------------

/// Lattice literal: {"gram": [[..]]} | {"named": "E8" | {"A": l} | {"rank1": 2N}}
/// | {"direct_sum": [literal, ...]}.
inline Lattice lattice_from_json(const json& j) {
  if (!j.is_object()) throw BadParameter("lattice literal must be an object");
  if (j.contains("gram")) {
    const auto& g = j.at("gram");
    IntMatrix m;
    for (const auto& row : g) {
      std::vector<Int> r;
      for (const auto& x : row) r.emplace_back(Int(x.get<long long>()));
      m.push_back(std::move(r));
    }
    return validate(m, "custom");
  }
  if (j.contains("named")) {
    const auto& n = j.at("named");
    if (n.is_string()) return named(n.get<std::string>());
    if (n.is_object()) {
      if (n.contains("A")) return named("A", Int(n.at("A").get<long long>()));
      if (n.contains("rank1")) return named("rank1", Int(n.at("rank1").get<long long>()));
    }
    throw UnknownName("unrecognized named-lattice literal");
  }
  if (j.contains("direct_sum")) {
    std::vector<Lattice> parts;
    for (const auto& p : j.at("direct_sum")) parts.push_back(lattice_from_json(p));
    return direct_sum(parts);
  }
  throw BadParameter("lattice literal needs one of: gram, named, direct_sum");
}

inline RationalVector rational_vector_from_json(const json& j) {
  RationalVector v;
  for (const auto& x : j) v.push_back(parse_rat(x.get<std::string>()));
  return v;
}

/// Shift literal: {"real": ["p/q",...], "imag": [...]?, "basis": "L"|"dual"?}.
/// Dual-basis coordinates are converted through G^{-1}.
inline ShiftedVOA shift_from_json(const Lattice& L, const json& j) {
  RationalVector a(L.rank, Rat(0)), b(L.rank, Rat(0));
  if (j.contains("real")) a = rational_vector_from_json(j.at("real"));
  if (j.contains("imag")) b = rational_vector_from_json(j.at("imag"));
  std::string basis = j.value("basis", std::string("L"));
  if (basis == "dual") {
    RatMatrix gi = dual_basis(L);
    auto convert = [&](const RationalVector& v) {
      detail::check_dim(L, v, "shift_from_json");
      RationalVector out(L.rank, Rat(0));
      for (int i = 0; i < L.rank; ++i)
        for (int k = 0; k < L.rank; ++k) out[i] += gi[i][k] * v[k];
      return out;
    };
    a = convert(a);
    b = convert(b);
  } else if (basis != "L") {
    throw BadParameter("shift basis must be \"L\" or \"dual\"");
  }
  return make(L, a, b);
}

}  // namespace latshift
