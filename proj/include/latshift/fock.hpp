#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latshift/voashift.hpp"

namespace latshift {

/// One Fock monomial b_{i1}(-n1)...b_{ik}(-nk) (x) e^alpha. `parts` holds
/// (mode, color) with mode >= 1, kept in the canonical order (mode desc,
/// color asc) so each state has a unique representation.
struct FockState {
  std::vector<std::pair<int, int>> parts;
  IntVector label;

  int degree() const {
    int d = 0;
    for (auto& [m, c] : parts) d += m;
    return d;
  }
  friend bool operator==(const FockState& a, const FockState& b) {
    return a.parts == b.parts && a.label == b.label;
  }
  friend bool operator<(const FockState& a, const FockState& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.parts < b.parts;
  }
};

/// Exact linear combination of Fock monomials; zero coefficients are never stored.
using FockVector = std::map<FockState, Rat>;

inline void canonicalize_parts(std::vector<std::pair<int, int>>& parts) {
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
}

inline void fv_accumulate(FockVector& out, const FockState& s, const Rat& c) {
  if (c == 0) return;
  auto it = out.find(s);
  if (it == out.end()) {
    out.emplace(s, c);
  } else {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

inline void fv_axpy(FockVector& out, const FockVector& x, const Rat& c) {
  if (c == 0) return;
  for (const auto& [s, v] : x) fv_accumulate(out, s, v * c);
}

inline FockVector fv_scale(const FockVector& x, const Rat& c) {
  FockVector out;
  fv_axpy(out, x, c);
  return out;
}

inline FockState vacuum_state(int rank) { return FockState{{}, IntVector(rank, 0)}; }

/// Mode action of v(n), v given in lattice coordinates:
///   n < 0 adjoins a creation part per basis direction,
///   n > 0 contracts against matching parts via [b_i(m), b_j(-m)] = m G_ij,
///   n = 0 multiplies by (v, alpha) on e^alpha.
inline FockVector heisenberg(const Lattice& L, const RationalVector& v, int n,
                             const FockVector& x) {
  detail::check_dim(L, v, "heisenberg");
  RationalVector gv = gram_times(L, v);
  FockVector out;
  for (const auto& [s, c] : x) {
    if (n == 0) {
      Rat f(0);
      for (int i = 0; i < L.rank; ++i)
        if (s.label[i] != 0) f += gv[i] * s.label[i];
      fv_accumulate(out, s, c * f);
    } else if (n < 0) {
      for (int i = 0; i < L.rank; ++i) {
        if (v[i] == 0) continue;
        FockState t = s;
        t.parts.emplace_back(-n, i);
        canonicalize_parts(t.parts);
        fv_accumulate(out, t, c * v[i]);
      }
    } else {
      for (std::size_t p = 0; p < s.parts.size(); ++p) {
        auto [mode, color] = s.parts[p];
        if (mode != n || gv[color] == 0) continue;
        FockState t;
        t.label = s.label;
        t.parts.reserve(s.parts.size() - 1);
        for (std::size_t q = 0; q < s.parts.size(); ++q)
          if (q != p) t.parts.push_back(s.parts[q]);
        fv_accumulate(out, t, c * Rat(n) * gv[color]);
      }
    }
  }
  return out;
}

namespace detail {

inline int max_degree(const FockVector& x) {
  int d = 0;
  for (const auto& [s, c] : x) d = std::max(d, s.degree());
  return d;
}

}  // namespace detail

/// Unshifted Virasoro mode of the lattice theory,
/// L(n) = 1/2 sum_i sum_m :b_i(m) b^i(n-m):, with b^i the dual basis.
/// Normal ordering is realized by applying the larger mode first; the window
/// of m covers every term that can act nontrivially on x.
inline FockVector virasoro(const Lattice& L, int n, const FockVector& x) {
  FockVector out;
  if (x.empty()) return out;
  const int d = detail::max_degree(x);
  RatMatrix dual = dual_basis(L);
  for (int i = 0; i < L.rank; ++i) {
    RationalVector bi(L.rank, Rat(0));
    bi[i] = 1;
    const RationalVector& di = dual[i];
    for (int m = n - d; m <= std::max(d, n); ++m) {
      const int m2 = n - m;
      FockVector y = (m >= m2) ? heisenberg(L, di, m2, heisenberg(L, bi, m, x))
                               : heisenberg(L, bi, m, heisenberg(L, di, m2, x));
      fv_axpy(out, y, Rat(1, 2));
    }
  }
  return out;
}

/// Shifted Virasoro mode L_h(n) = L(n) - (n+1) h(n); L_h(-1) = L(-1).
inline FockVector shifted_virasoro(const ShiftedVOA& V, int n, const FockVector& x) {
  FockVector out = virasoro(V.lattice, n, x);
  if (n != -1) fv_axpy(out, heisenberg(V.lattice, V.shift_real, n, x), Rat(-(n + 1)));
  return out;
}

/// L_h(0)-weight of a basis monomial under a real shift.
inline Rat state_weight(const ShiftedVOA& V, const FockState& s) {
  RationalVector av = to_rational(s.label);
  return Rat(s.degree()) + inner(V.lattice, av, av) / 2 -
         inner(V.lattice, V.shift_real, av);
}

namespace detail {

inline void gen_partitions(int left, int max_mode, int min_color_at_max, int rank,
                           std::vector<std::pair<int, int>>& cur,
                           std::vector<std::vector<std::pair<int, int>>>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  for (int m = std::min(left, max_mode); m >= 1; --m) {
    int c0 = (m == max_mode) ? min_color_at_max : 0;
    for (int c = c0; c < rank; ++c) {
      cur.emplace_back(m, c);
      gen_partitions(left - m, m, c, rank, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace detail

/// All basis monomials of L_h(0)-weight <= W, ordered by
/// (weight, label lex, parts lex). Real shifts only.
inline std::vector<FockState> basis(const ShiftedVOA& V, const Rat& W) {
  if (!V.real_shift()) throw ComplexShiftUnsupported("basis needs a real shift");
  const Lattice& L = V.lattice;
  Rat aa = inner(L, V.shift_real, V.shift_real);
  Rat bound = 2 * W + aa;
  std::vector<FockState> out;
  if (bound < 0) return out;
  enumerate_ellipsoid_visit(L, V.shift_real, bound, [&](const IntVector& alpha, const Rat& norm) {
    Rat w0 = norm / 2 - aa / 2;
    Int nmax = rat_floor(W - w0);
    for (Int n = 0; n <= nmax; ++n) {
      std::vector<std::vector<std::pair<int, int>>> partitions;
      std::vector<std::pair<int, int>> cur;
      detail::gen_partitions(static_cast<int>(n), static_cast<int>(n) + 1, 0, L.rank, cur,
                             partitions);
      for (auto& p : partitions) {
        canonicalize_parts(p);
        out.push_back(FockState{std::move(p), alpha});
      }
    }
  });
  std::sort(out.begin(), out.end(), [&](const FockState& a, const FockState& b) {
    Rat wa = state_weight(V, a), wb = state_weight(V, b);
    if (wa != wb) return wa < wb;
    if (a.label != b.label) return a.label < b.label;
    return a.parts < b.parts;
  });
  return out;
}

/// Exact check of [L_h(m), L_h(n)] = (m-n) L_h(m+n) + delta_{m,-n} (m^3-m)/12 c_h
/// on every basis state of weight <= W. Mode application is symbolic, so the
/// commutator is fully determined for any single state.
inline bool bracket_check(const ShiftedVOA& V, int m, int n, const Rat& W) {
  if (!V.real_shift()) throw ComplexShiftUnsupported("bracket_check needs a real shift");
  const Rat ch = V.central_charge.re;
  for (const FockState& s : basis(V, W)) {
    FockVector x{{s, Rat(1)}};
    FockVector lhs = shifted_virasoro(V, m, shifted_virasoro(V, n, x));
    fv_axpy(lhs, shifted_virasoro(V, n, shifted_virasoro(V, m, x)), Rat(-1));
    fv_axpy(lhs, shifted_virasoro(V, m + n, x), Rat(-(m - n)));
    if (m + n == 0) {
      long long mm = static_cast<long long>(m);
      fv_axpy(lhs, x, -Rat(mm * mm * mm - mm, 12) * ch);
    }
    if (!lhs.empty()) return false;
  }
  return true;
}

/// dim V_0 - rank of the explicit L_h(1): V_1 -> V_0 matrix, by exact
/// elimination. For simple V_{L,h} this lands in {0, 1} (Lemma 5.1).
inline Int l1_codimension(const ShiftedVOA& V) {
  if (!V.real_shift() || !in_dual(V.lattice, V.shift_real))
    throw NotVOACase("codimension is defined for real h in the dual lattice");
  std::vector<FockState> b0, b1;
  for (const FockState& s : basis(V, Rat(1))) {
    Rat w = state_weight(V, s);
    if (w == 0) b0.push_back(s);
    else if (w == 1) b1.push_back(s);
  }
  if (b1.empty()) return Int(b0.size());
  std::map<FockState, int> index;
  for (std::size_t i = 0; i < b0.size(); ++i) index[b0[i]] = static_cast<int>(i);
  RatMatrix mat(b0.size(), std::vector<Rat>(b1.size(), Rat(0)));
  for (std::size_t j = 0; j < b1.size(); ++j) {
    FockVector img = shifted_virasoro(V, 1, FockVector{{b1[j], Rat(1)}});
    for (const auto& [s, c] : img) {
      auto it = index.find(s);
      if (it == index.end()) throw Error("L_h(1) image left the weight-0 space");
      mat[it->second][j] = c;
    }
  }
  return Int(b0.size()) - rat_mat_rank(std::move(mat));
}

// ---------------------------------------------------------------------------
// Li's Delta operator, Delta(h,z) = z^{h(0)} exp{-sum_{k>=1} (h(k)/k)(-z)^{-k}}.
// ---------------------------------------------------------------------------

/// z-exponent -> component of the image; finite on weight-truncated input.
using LaurentOperatorResult = std::map<Int, FockVector>;

/// Exact finite expansion of Delta(v, z) x. On a state of Heisenberg degree d
/// every exponential term beyond depth d vanishes, so depth = d is exact.
/// Throws NonIntegralExponent if z^{v(0)} produces a fractional exponent.
inline LaurentOperatorResult delta_apply(const Lattice& L, const RationalVector& v,
                                         const FockVector& x, int depth) {
  detail::check_dim(L, v, "delta_apply");
  LaurentOperatorResult layers;
  layers[0] = x;
  LaurentOperatorResult term = layers;  // A^j x, with A the exp argument
  Rat fact(1);
  for (int j = 1; j <= depth; ++j) {
    fact *= j;
    LaurentOperatorResult next;
    for (const auto& [ze, vec] : term) {
      int d = detail::max_degree(vec);
      for (int k = 1; k <= d; ++k) {
        FockVector y = heisenberg(L, v, k, vec);
        if (y.empty()) continue;
        Rat coef = Rat((k % 2 == 1) ? 1 : -1, k);  // -(h(k)/k)(-z)^{-k}
        fv_axpy(next[ze - k], y, coef);
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = it->second.empty() ? next.erase(it) : std::next(it);
    if (next.empty()) break;
    term = next;
    for (const auto& [ze, vec] : term) fv_axpy(layers[ze], vec, Rat(1) / fact);
  }
  // z^{v(0)}: shift the exponent by (v, alpha) on each e^alpha component
  RationalVector gv = gram_times(L, v);
  LaurentOperatorResult out;
  for (const auto& [ze, vec] : layers) {
    for (const auto& [s, c] : vec) {
      Rat sh(0);
      for (int i = 0; i < L.rank; ++i)
        if (s.label[i] != 0) sh += gv[i] * s.label[i];
      if (!is_integral(sh))
        throw NonIntegralExponent("z^{h(0)} exponent " + format_rat(sh) + " is not integral");
      fv_accumulate(out[ze + numerator(sh)], s, c);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

inline LaurentOperatorResult delta_apply(const Lattice& L, const RationalVector& v,
                                         const FockVector& x) {
  return delta_apply(L, v, x, detail::max_degree(x));
}

/// The conformal vector omega = 1/2 sum_{ij} (G^{-1})_{ij} b_i(-1) b_j(-1) 1.
inline FockVector conformal_vector(const Lattice& L) {
  RatMatrix gi = dual_basis(L);
  FockVector out;
  for (int i = 0; i < L.rank; ++i)
    for (int j = 0; j < L.rank; ++j) {
      if (gi[i][j] == 0) continue;
      std::vector<std::pair<int, int>> parts{{1, i}, {1, j}};
      canonicalize_parts(parts);
      fv_accumulate(out, FockState{std::move(parts), IntVector(L.rank, 0)},
                    gi[i][j] / 2);
    }
  return out;
}

namespace detail {

/// u_{(n)} x for a label-0 state u of Heisenberg degree <= 2: the identity,
/// a single oscillator (derivative field), or a pair of mode-1 oscillators
/// (normal-ordered product). These are the shapes Delta(-h,z) omega produces.
inline FockVector state_mode_apply(const Lattice& L, const FockState& u, long long n,
                                   const FockVector& x) {
  for (auto v : u.label)
    if (v != 0) throw Error("mode extraction needs a label-0 state");
  FockVector out;
  if (u.parts.empty()) {
    if (n == -1) fv_axpy(out, x, Rat(1));
    return out;
  }
  if (u.parts.size() == 1) {
    auto [k0, i] = u.parts[0];
    RationalVector bi(L.rank, Rat(0));
    bi[i] = 1;
    // Y(b_i(-k)1, z) = (1/(k-1)!) d^{k-1} b_i(z): mode n is a multiple of b_i(n-k+1)
    long long m = n - k0 + 1;
    Rat coef(1);
    for (int j = 1; j <= k0 - 1; ++j) coef *= Rat(-m - j, j);
    if (coef == 0) return out;
    if (m < std::numeric_limits<int>::min() || m > std::numeric_limits<int>::max())
      throw Error("mode index out of range");
    fv_axpy(out, heisenberg(L, bi, static_cast<int>(m), x), coef);
    return out;
  }
  if (u.parts.size() == 2 && u.parts[0].first == 1 && u.parts[1].first == 1) {
    int i = u.parts[0].second, j = u.parts[1].second;
    RationalVector bi(L.rank, Rat(0)), bj(L.rank, Rat(0));
    bi[i] = 1;
    bj[j] = 1;
    const int d = max_degree(x);
    // (b_i(-1)b_j(-1)1)_(n) = sum_{k<=-1} b_i(k) b_j(n-1-k) + sum_{k>=0} b_j(n-1-k) b_i(k)
    for (long long k = n - 1 - d; k <= -1; ++k) {
      FockVector y = heisenberg(L, bj, static_cast<int>(n - 1 - k), x);
      if (y.empty()) continue;
      fv_axpy(out, heisenberg(L, bi, static_cast<int>(k), y), Rat(1));
    }
    for (long long k = 0; k <= d; ++k) {
      FockVector y = heisenberg(L, bi, static_cast<int>(k), x);
      if (y.empty()) continue;
      fv_axpy(out, heisenberg(L, bj, static_cast<int>(n - 1 - k), y), Rat(1));
    }
    return out;
  }
  throw Error("unsupported state shape for mode extraction");
}

}  // namespace detail

/// Grade-preserving "zero mode" of a weight-2 Laurent field sum_e z^e Y(phi_e, z):
/// the coefficient of z^{-2}, i.e. sum_e (phi_e)_{(1+e)}, applied to x.
inline FockVector laurent_zero_mode_apply(const Lattice& L, const LaurentOperatorResult& field,
                                          const FockVector& x) {
  FockVector out;
  for (const auto& [ze, phi] : field)
    for (const auto& [u, c] : phi)
      fv_axpy(out, detail::state_mode_apply(L, u, 1 + static_cast<long long>(ze), x), c);
  return out;
}

/// Prop 6.2: Tr_M q^{L_{Delta,-h}(0) - c/24} = Tr_M q^{L_h(0) - c_h/24} on the
/// adjoint module. The left side extracts its zero mode from Delta(-h,z) omega,
/// the right side is the shifted Virasoro route; both diagonal, compared as
/// exact q-series below `order`. The shift argument follows this module's
/// omega + h(-2)1 convention, so Delta receives -h.
inline bool trace_identity_check(const ShiftedVOA& V, const Rat& order) {
  if (!V.real_shift()) throw ComplexShiftUnsupported("trace identity needs a real shift");
  const Lattice& L = V.lattice;
  const Rat ch = V.central_charge.re;
  const Rat c = Rat(L.rank);
  const Rat wmax = order + ch / 24;
  RationalVector minus_h(L.rank);
  for (int i = 0; i < L.rank; ++i) minus_h[i] = -V.shift_real[i];
  LaurentOperatorResult dfield = delta_apply(L, minus_h, conformal_vector(L));
  QSeries lhs{{}, order}, rhs{{}, order};
  for (const FockState& s : basis(V, wmax)) {
    FockVector x{{s, Rat(1)}};
    FockVector ly = laurent_zero_mode_apply(L, dfield, x);
    FockVector ry = shifted_virasoro(V, 0, x);
    auto diag = [&](const FockVector& y, const char* side) {
      Rat lambda(0);
      auto it = y.find(s);
      if (it != y.end()) lambda = it->second;
      if (!(y.size() == (lambda != 0 ? 1u : 0u)))
        throw Error(std::string(side) + " zero mode is not diagonal on the monomial basis");
      return lambda;
    };
    Rat el = diag(ly, "Delta") - c / 24;
    Rat er = diag(ry, "shifted") - ch / 24;
    if (el < order) lhs.terms[el] += 1;
    if (er < order) rhs.terms[er] += 1;
  }
  return eq_to_order(lhs, rhs, order);
}

/// Per-condition verdict for the Section-6 hypotheses on a candidate state.
struct ConditionReport {
  std::string name;
  bool pass = false;
  std::string witness;
};

/// Checks conditions (i)-(iv) for h = v(-1)1 by direct operator application
/// on the weight-<= W basis of the unshifted lattice theory.
inline std::vector<ConditionReport> check_h_conditions(const Lattice& L,
                                                       const RationalVector& v, const Rat& W) {
  detail::check_dim(L, v, "check_h_conditions");
  std::vector<ConditionReport> out;
  ShiftedVOA V0 = make(L, RationalVector(L.rank, Rat(0)));
  auto base = basis(V0, W);
  FockVector hvec;
  for (int i = 0; i < L.rank; ++i)
    if (v[i] != 0)
      fv_accumulate(hvec, FockState{{{1, i}}, IntVector(L.rank, 0)}, v[i]);
  Rat vv = inner(L, v, v);

  {  // (i) primary: L(n) h = 0 for n >= 1
    bool ok = true;
    std::string w;
    for (int n = 1; n <= 3 && ok; ++n)
      if (!virasoro(L, n, hvec).empty()) {
        ok = false;
        w = "L(" + std::to_string(n) + ")h != 0";
      }
    out.push_back({"(i) primary state", ok, ok ? "L(1..3)h = 0" : w});
  }
  {  // (ii) h(0) semisimple with real eigenvalues
    bool ok = true;
    std::string w = "h(0) diagonal with rational eigenvalues (v, alpha)";
    RationalVector gv = gram_times(L, v);
    for (const FockState& s : base) {
      Rat ev(0);
      for (int i = 0; i < L.rank; ++i) ev += gv[i] * s.label[i];
      FockVector got = heisenberg(L, v, 0, FockVector{{s, Rat(1)}});
      FockVector want;
      fv_accumulate(want, s, ev);
      if (got != want) {
        ok = false;
        w = "h(0) not diagonal on a basis state";
        break;
      }
    }
    out.push_back({"(ii) h(0) semisimple, real spectrum", ok, w});
  }
  {  // (iii) h(n)h = 0 for 0 <= n != 1, and h(1)h in C1
    bool ok = true;
    std::string w;
    for (int n : {0, 2, 3, 4})
      if (!heisenberg(L, v, n, hvec).empty()) {
        ok = false;
        w = "h(" + std::to_string(n) + ")h != 0";
      }
    FockVector h1h = heisenberg(L, v, 1, hvec);
    FockVector want;
    fv_accumulate(want, vacuum_state(L.rank), vv);
    if (h1h != want) {
      ok = false;
      w = "h(1)h != (h,h)1";
    }
    if (ok) w = "h(1)h = " + format_rat(vv) + " * 1";
    out.push_back({"(iii) h(n)h coefficients", ok, w});
  }
  {  // (iv) [h(m), h(n)] = m delta_{m,-n} h(1)h Id
    bool ok = true;
    std::string w = "commutators match m delta (h,h) Id for |m|,|n| <= 3";
    for (int m = -3; m <= 3 && ok; ++m)
      for (int n = -3; n <= 3 && ok; ++n)
        for (const FockState& s : base) {
          FockVector x{{s, Rat(1)}};
          FockVector lhs = heisenberg(L, v, m, heisenberg(L, v, n, x));
          fv_axpy(lhs, heisenberg(L, v, n, heisenberg(L, v, m, x)), Rat(-1));
          if (m + n == 0) fv_axpy(lhs, x, -Rat(m) * vv);
          if (!lhs.empty()) {
            ok = false;
            w = "commutator mismatch at (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
            break;
          }
        }
    out.push_back({"(iv) Heisenberg commutator", ok, w});
  }
  return out;
}

}  // namespace latshift
