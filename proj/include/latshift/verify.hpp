#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latshift/fock.hpp"

namespace latshift {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

/// The Example 1 battery: rank-1 lattices of norm 2N with shifts k alpha/2N.
inline std::vector<ShiftedVOA> example1_battery(int max_N = 3) {
  std::vector<ShiftedVOA> out;
  for (int N = 1; N <= max_N; ++N) {
    Lattice L = named("rank1", 2 * N);
    for (int k = 0; k <= 2 * N; ++k)
      out.push_back(make(L, RationalVector{Rat(k, 2 * N)}));
  }
  return out;
}

inline std::string shift_name(const ShiftedVOA& V) {
  std::string s = V.lattice.name + " h=(";
  for (std::size_t i = 0; i < V.shift_real.size(); ++i) {
    if (i) s += ",";
    s += format_rat(V.shift_real[i]);
    if (V.shift_imag[i] != 0) s += "+" + format_rat(V.shift_imag[i]) + "i";
  }
  return s + ")";
}

/// Prop 3.2 on one algebra: the spectrum trace and the theta/eta quotient
/// agree exactly through `steps` whole exponent steps past the leading term.
inline CheckResult check_prop32(const ShiftedVOA& V, int steps = 10) {
  QSeries zt = partition_function_theta(V, V.central_charge.re / -24 + 1);
  Rat lead = leading(zt).first;
  Rat order = lead + steps;
  QSeries a = partition_function_direct(V, order);
  QSeries b = partition_function_theta(V, order);
  bool ok = eq_to_order(a, b, order);
  return {"prop32 " + shift_name(V), ok,
          ok ? "Z_direct = Z_theta below q^" + format_rat(order) : "partition functions differ"};
}

inline SuiteReport verify_prop32(const std::optional<ShiftedVOA>& only = std::nullopt) {
  SuiteReport rep{"prop32", {}};
  if (only) {
    rep.checks.push_back(check_prop32(*only));
    return rep;
  }
  for (const auto& V : example1_battery()) rep.checks.push_back(check_prop32(V));
  return rep;
}

inline SuiteReport verify_virasoro(const std::optional<ShiftedVOA>& only = std::nullopt) {
  SuiteReport rep{"virasoro", {}};
  std::vector<ShiftedVOA> battery;
  if (only) {
    battery.push_back(*only);
  } else {
    Lattice L = named("rank1", 2);
    for (const Rat& k : {Rat(0), Rat(1, 2), Rat(1)}) battery.push_back(make(L, {k}));
  }
  for (const auto& V : battery) {
    bool ok = true;
    std::string w;
    for (int m = -2; m <= 2 && ok; ++m)
      for (int n = -2; n <= 2 && ok; ++n)
        if (!bracket_check(V, m, n, Rat(3))) {
          ok = false;
          w = "bracket failed at (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
        }
    if (ok) w = "all m,n in [-2,2] on the weight<=3 basis, c_h = " + format_rat(V.central_charge.re);
    rep.checks.push_back({"virasoro " + shift_name(V), ok, w});
  }
  return rep;
}

inline SuiteReport verify_lemma51(const std::optional<ShiftedVOA>& only = std::nullopt) {
  SuiteReport rep{"lemma51", {}};
  auto battery = only ? std::vector<ShiftedVOA>{*only} : example1_battery();
  for (const auto& V : battery) {
    Int codim = l1_codimension(V);
    bool sd = is_self_dual(V);
    bool ok = (codim == 0 || codim == 1) && ((codim == 1) == sd);
    rep.checks.push_back({"lemma51 " + shift_name(V), ok,
                          "codim L(1)V_1 = " + codim.str() + ", self-dual = " + (sd ? "yes" : "no")});
  }
  return rep;
}

inline SuiteReport verify_lemma52(const std::optional<ShiftedVOA>& only = std::nullopt) {
  SuiteReport rep{"lemma52", {}};
  auto battery = only ? std::vector<ShiftedVOA>{*only} : example1_battery();
  for (const auto& V : battery) {
    Int d0 = weight_space_dim(V, {Rat(0), Rat(0)});
    Int dm1 = weight_space_dim(V, {Rat(-1), Rat(0)});
    rep.checks.push_back({"lemma52 " + shift_name(V), d0 > dm1,
                          "dim V_0 = " + d0.str() + " > dim V_-1 = " + dm1.str()});
  }
  return rep;
}

/// Delta(-h,z) omega = omega - h z^{-1} + (1/2)(h,h) z^{-2} 1, with no other
/// Laurent exponents. Verified exactly against the Fock expansion.
inline CheckResult check_delta_closed_form(const Lattice& L, const RationalVector& h) {
  RationalVector minus_h(L.rank);
  for (int i = 0; i < L.rank; ++i) minus_h[i] = -h[i];
  LaurentOperatorResult got = delta_apply(L, minus_h, conformal_vector(L));
  LaurentOperatorResult want;
  want[0] = conformal_vector(L);
  FockVector hterm;
  for (int i = 0; i < L.rank; ++i)
    if (h[i] != 0) fv_accumulate(hterm, FockState{{{1, i}}, IntVector(L.rank, 0)}, -h[i]);
  if (!hterm.empty()) want[-1] = hterm;
  Rat hh = inner(L, h, h);
  if (hh != 0) {
    FockVector c;
    fv_accumulate(c, vacuum_state(L.rank), hh / 2);
    want[-2] = c;
  }
  bool ok = got == want;
  std::string name = "delta " + L.name + " h=(";
  for (std::size_t i = 0; i < h.size(); ++i) name += (i ? "," : "") + format_rat(h[i]);
  name += ")";
  return {name, ok,
          ok ? "three Laurent terms, exponents {0,-1,-2} only" : "expansion differs from closed form"};
}

inline std::vector<std::pair<Lattice, RationalVector>> default_delta_shifts() {
  return {
      {named("rank1", 2), {Rat(1)}},
      {named("rank1", 4), {Rat(1)}},
      {named("rank1", 4), {Rat(1, 2)}},
      {named("A", 2), {Rat(1), Rat(1)}},
      {named("A", 2), {Rat(1, 3), Rat(2, 3)}},
  };
}

inline SuiteReport verify_delta(const std::optional<ShiftedVOA>& only = std::nullopt) {
  SuiteReport rep{"delta", {}};
  if (only) {
    rep.checks.push_back(check_delta_closed_form(only->lattice, only->shift_real));
    return rep;
  }
  for (const auto& [L, h] : default_delta_shifts())
    rep.checks.push_back(check_delta_closed_form(L, h));
  return rep;
}

inline SuiteReport verify_prop62(const std::optional<ShiftedVOA>& only = std::nullopt) {
  SuiteReport rep{"prop62", {}};
  std::vector<ShiftedVOA> battery;
  if (only) {
    battery.push_back(*only);
  } else {
    battery.push_back(make(named("rank1", 2), {Rat(0)}));
    battery.push_back(make(named("rank1", 2), {Rat(1)}));
    battery.push_back(make(named("rank1", 4), {Rat(1, 2)}));
    battery.push_back(make(named("A", 2), {Rat(1, 3), Rat(2, 3)}));
  }
  for (const auto& V : battery) {
    // leading weight from the spectrum; compare traces three steps past it
    Rat minw(0);
    for (const auto& [g, d] : spectrum(V, Rat(0)))
      if (g.re < minw) minw = g.re;
    Rat order = minw - V.central_charge.re / 24 + 3;
    bool ok = trace_identity_check(V, order);
    rep.checks.push_back({"prop62 " + shift_name(V), ok,
                          ok ? "traces agree below q^" + format_rat(order) : "trace identity failed"});
  }
  return rep;
}

/// For a real shift the truncation violations are exactly the grades with
/// negative weight.
inline CheckResult check_violations_real(const ShiftedVOA& V) {
  auto viol = truncation_violations(V);
  std::vector<std::pair<GradeValue, Int>> neg;
  for (const auto& [g, d] : spectrum(V, Rat(0)))
    if (g.re < 0) neg.emplace_back(g, d);
  bool ok = viol == neg;
  return {"cgraded real " + shift_name(V), ok,
          ok ? std::to_string(viol.size()) + " violating grade(s) = negative-weight grades"
             : "violation list differs from negative-weight grades"};
}

/// Complete violation list: rescanning a strictly larger ball than the
/// Schwarz radius finds nothing new.
inline CheckResult check_violations_complete(const ShiftedVOA& V, const Rat& factor = Rat(2)) {
  const Lattice& L = V.lattice;
  RationalVector plus(L.rank), minus(L.rank);
  for (int i = 0; i < L.rank; ++i) {
    plus[i] = V.shift_real[i] + V.shift_imag[i];
    minus[i] = V.shift_real[i] - V.shift_imag[i];
  }
  Rat schwarz = std::max(inner(L, plus, plus), inner(L, minus, minus)) * 4;
  auto base = truncation_violations(V);
  auto wider = truncation_violations_within(V, schwarz * factor + 4);
  bool ok = base == wider;
  return {"cgraded completeness " + shift_name(V), ok,
          ok ? "rescan at " + format_rat(factor) + "x the Schwarz radius adds nothing"
             : "larger radius found additional violations"};
}

inline SuiteReport verify_cgraded(const std::optional<ShiftedVOA>& only = std::nullopt) {
  SuiteReport rep{"cgraded", {}};
  if (only) {
    if (only->real_shift()) rep.checks.push_back(check_violations_real(*only));
    rep.checks.push_back(check_violations_complete(*only));
    return rep;
  }
  // the complex example: rank1(2), h = (1+i) alpha / 2
  ShiftedVOA Vc = make(named("rank1", 2), {Rat(1, 2)}, {Rat(1, 2)});
  auto viol = truncation_violations(Vc);
  bool has_minus_i = false;
  for (const auto& [g, d] : viol)
    if (g == GradeValue{Rat(0), Rat(-1)}) has_minus_i = true;
  rep.checks.push_back({"cgraded " + shift_name(Vc) + " contains r=-i", has_minus_i,
                        std::to_string(viol.size()) + " violating grade(s)"});
  rep.checks.push_back(check_violations_complete(Vc));
  for (const auto& V : example1_battery(2)) rep.checks.push_back(check_violations_real(V));
  return rep;
}

inline std::vector<SuiteReport> verify_all(const std::optional<ShiftedVOA>& only = std::nullopt) {
  return {verify_prop32(only), verify_virasoro(only), verify_lemma51(only),
          verify_lemma52(only), verify_delta(only),    verify_prop62(only),
          verify_cgraded(only)};
}

}  // namespace latshift
