#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "latshift/rational.hpp"

namespace latshift {

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

/// Positive-definite even integral lattice, given by its Gram matrix in a
/// fixed basis. Construct through validate(), named() or direct_sum(); all
/// operations treat the value as immutable.
struct Lattice {
  int rank = 0;
  IntMatrix gram;
  std::string name;
};

/// L D L^T factorization of a symmetric positive-definite rational matrix.
struct Ldlt {
  RatMatrix lower;        // unit lower triangular
  std::vector<Rat> diag;  // pivots, all positive
};

namespace detail {

/// Returns the index (0-based) of the first nonpositive pivot, or -1 if the
/// matrix is positive definite and `out` holds the factorization.
inline int ldlt_factor(const IntMatrix& g, Ldlt& out) {
  const int n = static_cast<int>(g.size());
  out.lower.assign(n, std::vector<Rat>(n, Rat(0)));
  out.diag.assign(n, Rat(0));
  for (int j = 0; j < n; ++j) {
    Rat d = Rat(g[j][j]);
    for (int k = 0; k < j; ++k) d -= out.lower[j][k] * out.lower[j][k] * out.diag[k];
    if (d <= 0) return j;
    out.diag[j] = d;
    out.lower[j][j] = 1;
    for (int i = j + 1; i < n; ++i) {
      Rat v = Rat(g[i][j]);
      for (int k = 0; k < j; ++k) v -= out.lower[i][k] * out.lower[j][k] * out.diag[k];
      out.lower[i][j] = v / d;
    }
  }
  return -1;
}

}  // namespace detail

/// Checks the even-lattice axioms exactly and wraps the Gram matrix.
/// Positive-definiteness is decided by rational LDL^T (all pivots > 0).
inline Lattice validate(const IntMatrix& gram, std::string name = {}) {
  const auto n = gram.size();
  if (n == 0) throw BadParameter("lattice rank must be >= 1");
  for (const auto& row : gram)
    if (row.size() != n) throw BadParameter("gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram[i][j] != gram[j][i])
        throw NotSymmetric("gram[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] != gram[" + std::to_string(j) + "][" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < n; ++i)
    if (gram[i][i] % 2 != 0)
      throw NotEven("odd diagonal entry at index " + std::to_string(i));
  Ldlt f;
  if (int bad = detail::ldlt_factor(gram, f); bad >= 0)
    throw NotPositiveDefinite("leading principal minor " + std::to_string(bad + 1) +
                              " is not positive");
  return Lattice{static_cast<int>(n), gram, std::move(name)};
}

namespace detail {

inline IntMatrix cartan_A(int l) {
  IntMatrix g(l, std::vector<Int>(l, 0));
  for (int i = 0; i < l; ++i) {
    g[i][i] = 2;
    if (i + 1 < l) g[i][i + 1] = g[i + 1][i] = -1;
  }
  return g;
}

inline IntMatrix cartan_E8() {
  // Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
  IntMatrix g(8, std::vector<Int>(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto [a, b] : edges) g[a - 1][b - 1] = g[b - 1][a - 1] = -1;
  return g;
}

}  // namespace detail

/// Standard lattices: rank1(2N) (one generator of norm 2N), A(l) root
/// lattices, and E8 (unimodular, minimum norm 2).
inline Lattice named(const std::string& name, const Int& param = 0) {
  if (name == "rank1") {
    if (param < 2 || param % 2 != 0)
      throw BadParameter("rank1 wants an even norm 2N >= 2, got " + param.str());
    return validate(IntMatrix{{param}}, "rank1(" + param.str() + ")");
  }
  if (name == "A") {
    if (param < 1) throw BadParameter("A(l) wants l >= 1, got " + param.str());
    return validate(detail::cartan_A(static_cast<int>(param)), "A" + param.str());
  }
  if (name == "E8") {
    if (param != 0) throw BadParameter("E8 takes no parameter");
    return validate(detail::cartan_E8(), "E8");
  }
  throw UnknownName("unknown lattice name '" + name + "'");
}

/// Orthogonal direct sum: block-diagonal Gram, rank = sum of ranks.
inline Lattice direct_sum(const std::vector<Lattice>& parts) {
  if (parts.empty()) throw EmptyInput("direct_sum of no lattices");
  int n = 0;
  for (const auto& p : parts) n += p.rank;
  IntMatrix g(n, std::vector<Int>(n, 0));
  std::string name;
  int off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < p.rank; ++i)
      for (int j = 0; j < p.rank; ++j) g[off + i][off + j] = p.gram[i][j];
    if (!name.empty()) name += "+";
    name += p.name.empty() ? "?" : p.name;
    off += p.rank;
  }
  return Lattice{n, std::move(g), std::move(name)};
}

namespace detail {

inline void check_dim(const Lattice& L, const RationalVector& v, const char* who) {
  if (static_cast<int>(v.size()) != L.rank)
    throw DimensionMismatch(std::string(who) + ": vector has size " +
                            std::to_string(v.size()) + ", lattice rank " +
                            std::to_string(L.rank));
}

}  // namespace detail

/// G*v, the pairing of v against the lattice basis.
inline RationalVector gram_times(const Lattice& L, const RationalVector& v) {
  detail::check_dim(L, v, "gram_times");
  RationalVector w(L.rank, Rat(0));
  for (int i = 0; i < L.rank; ++i)
    for (int j = 0; j < L.rank; ++j)
      if (v[j] != 0) w[i] += Rat(L.gram[i][j]) * v[j];
  return w;
}

/// Exact bilinear form u^T G v (the C-linear extension of ( , )).
inline Rat inner(const Lattice& L, const RationalVector& u, const RationalVector& v) {
  detail::check_dim(L, u, "inner");
  detail::check_dim(L, v, "inner");
  RationalVector w = gram_times(L, v);
  Rat s(0);
  for (int i = 0; i < L.rank; ++i) s += u[i] * w[i];
  return s;
}

inline RationalVector to_rational(const IntVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

/// Dual basis coordinates: G^{-1}, exact. Rows are the dual basis vectors
/// expressed in the lattice basis; G * dual_basis = identity.
inline RatMatrix dual_basis(const Lattice& L) {
  const int n = L.rank;
  RatMatrix a(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rat(L.gram[i][j]);
    a[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    // det != 0 is guaranteed by positive-definiteness
    std::swap(a[col], a[piv]);
    Rat p = a[col][col];
    for (int c = 0; c < 2 * n; ++c) a[col][c] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  RatMatrix inv(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

/// v in L: all coordinates integral.
inline bool in_lattice(const Lattice& L, const RationalVector& v) {
  detail::check_dim(L, v, "in_lattice");
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_integral(x); });
}

/// v in the dual lattice: (v, alpha) integral for all basis alpha, i.e. G*v integral.
inline bool in_dual(const Lattice& L, const RationalVector& v) {
  RationalVector w = gram_times(L, v);
  return std::all_of(w.begin(), w.end(), [](const Rat& x) { return is_integral(x); });
}

/// Rank of a rational matrix by Gaussian elimination, exact.
inline int rat_mat_rank(RatMatrix m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] / m[rank][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Discriminant group L°/L via the Smith normal form of the Gram matrix.
// ---------------------------------------------------------------------------

namespace detail {

struct Smith {
  IntMatrix u, v;          // u * a * v = diag(d), both unimodular
  std::vector<Int> diag;   // nonnegative, divisibility chain
};

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

/// Smith normal form for a square nonsingular integer matrix.
inline Smith smith_normal_form(IntMatrix a) {
  const int n = static_cast<int>(a.size());
  Smith s;
  s.u.assign(n, std::vector<Int>(n, 0));
  s.v.assign(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) s.u[i][i] = s.v[i][i] = 1;

  auto swap_rows = [&](int i, int j) { std::swap(a[i], a[j]); std::swap(s.u[i], s.u[j]); };
  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < n; ++r) std::swap(s.v[r][i], s.v[r][j]);
  };
  auto add_row = [&](int dst, int src, const Int& f) {
    for (int c = 0; c < n; ++c) a[dst][c] += f * a[src][c];
    for (int c = 0; c < n; ++c) s.u[dst][c] += f * s.u[src][c];
  };
  auto add_col = [&](int dst, int src, const Int& f) {
    for (int r = 0; r < n; ++r) a[r][dst] += f * a[r][src];
    for (int r = 0; r < n; ++r) s.v[r][dst] += f * s.v[r][src];
  };
  auto is_lone = [&](int i) {
    for (int r = i + 1; r < n; ++r)
      if (a[r][i] != 0) return false;
    for (int c = i + 1; c < n; ++c)
      if (a[i][c] != 0) return false;
    return true;
  };

  for (int i = 0; i < n; ++i) {
    for (;;) {
      // move the smallest nonzero |entry| of the trailing block to (i,i)
      int br = -1, bc = -1;
      Int best;
      for (int r = i; r < n; ++r)
        for (int c = i; c < n; ++c)
          if (a[r][c] != 0 && (br < 0 || int_abs(a[r][c]) < best)) {
            best = int_abs(a[r][c]);
            br = r; bc = c;
          }
      if (br < 0) break;  // trailing block zero (cannot happen for nonsingular input)
      if (br != i) swap_rows(i, br);
      if (bc != i) swap_cols(i, bc);
      bool reduced = true;
      for (int r = i + 1; r < n; ++r)
        if (a[r][i] != 0) { add_row(r, i, -(a[r][i] / a[i][i])); reduced = false; }
      for (int c = i + 1; c < n; ++c)
        if (a[i][c] != 0) { add_col(c, i, -(a[i][c] / a[i][i])); reduced = false; }
      if (!reduced) continue;
      if (!is_lone(i)) continue;
      // enforce divisibility of the trailing block by the pivot
      bool fixed = false;
      for (int r = i + 1; r < n && !fixed; ++r)
        for (int c = i + 1; c < n && !fixed; ++c)
          if (a[r][c] % a[i][i] != 0) {
            add_row(i, r, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (a[i][i] < 0) {
      for (int c = 0; c < n; ++c) a[i][c] = -a[i][c];
      for (int c = 0; c < n; ++c) s.u[i][c] = -s.u[i][c];
    }
  }
  s.diag.resize(n);
  for (int i = 0; i < n; ++i) s.diag[i] = a[i][i];
  return s;
}

/// Exact inverse of a unimodular integer matrix (entries stay integral).
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  RatMatrix a(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
    a[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    std::swap(a[col], a[piv]);
    Rat p = a[col][col];
    for (int c = 0; c < 2 * n; ++c) a[col][c] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  IntMatrix inv(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!is_integral(a[i][n + j])) throw BadParameter("matrix is not unimodular");
      inv[i][j] = numerator(a[i][n + j]);
    }
  return inv;
}

}  // namespace detail

/// The finite group L°/L. Representatives live in the canonical box of the
/// Smith transform: rep(t) = G^{-1} U^{-1} t with 0 <= t_i < diag_i, listed
/// in ascending mixed-radix order of t. The transform is kept so callers can
/// normalize arbitrary dual vectors to this box.
struct DiscriminantGroup {
  Int order;
  std::vector<Int> elementary_divisors;         // entries > 1, divisibility chain
  std::vector<RationalVector> representatives;  // one per coset, |det G| of them
  IntMatrix snf_u_inv;                          // U^{-1} of U*G*V = diag
  IntMatrix snf_u;
  std::vector<Int> snf_diag;                    // full diagonal, 1s included
};

inline DiscriminantGroup discriminant(const Lattice& L) {
  auto s = detail::smith_normal_form(L.gram);
  DiscriminantGroup d;
  d.snf_u = s.u;
  d.snf_u_inv = detail::unimodular_inverse(s.u);
  d.snf_diag = s.diag;
  d.order = 1;
  for (const auto& x : s.diag) {
    d.order *= x;
    if (x > 1) d.elementary_divisors.push_back(x);
  }
  RatMatrix ginv = dual_basis(L);
  const int n = L.rank;
  std::vector<Int> t(n, 0);
  for (;;) {
    // v = G^{-1} U^{-1} t
    RationalVector x(n, Rat(0)), v(n, Rat(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x[i] += Rat(d.snf_u_inv[i][j]) * Rat(t[j]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i] += ginv[i][j] * x[j];
    d.representatives.push_back(std::move(v));
    int k = n - 1;
    while (k >= 0) {
      ++t[k];
      if (t[k] < s.diag[k]) break;
      t[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return d;
}

/// Normalize a dual vector to its canonical coset representative.
inline RationalVector canonical_dual_rep(const Lattice& L, const DiscriminantGroup& d,
                                         const RationalVector& v) {
  detail::check_dim(L, v, "canonical_dual_rep");
  RationalVector gv = gram_times(L, v);
  const int n = L.rank;
  std::vector<Int> x(n), t(n);
  for (int i = 0; i < n; ++i) {
    if (!is_integral(gv[i])) throw NotInDualLattice("vector is not in the dual lattice");
    x[i] = numerator(gv[i]);
  }
  for (int i = 0; i < n; ++i) {
    Int acc = 0;
    for (int j = 0; j < n; ++j) acc += d.snf_u[i][j] * x[j];
    Int m = acc % d.snf_diag[i];
    if (m < 0) m += d.snf_diag[i];
    t[i] = m;
  }
  RatMatrix ginv = dual_basis(L);
  RationalVector ux(n, Rat(0)), out(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ux[i] += Rat(d.snf_u_inv[i][j]) * Rat(t[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += ginv[i][j] * ux[j];
  return out;
}

// ---------------------------------------------------------------------------
// Lattice points in an ellipsoid.
// ---------------------------------------------------------------------------

/// Visits every integer vector beta with (beta - center, beta - center) <= bound,
/// calling visit(beta, norm) with norm = (beta - center, beta - center) exactly.
/// Ranges per coordinate come from LDL^T back-substitution; no floating point.
/// Visit order is unspecified (use enumerate_in_ellipsoid for the sorted list).
template <typename Visit>
void enumerate_ellipsoid_visit(const Lattice& L, const RationalVector& center,
                               const Rat& bound, Visit&& visit) {
  detail::check_dim(L, center, "enumerate_ellipsoid_visit");
  if (bound < 0) throw NegativeBound("ellipsoid bound is negative: " + format_rat(bound));
  const int n = L.rank;
  Ldlt f;
  detail::ldlt_factor(L.gram, f);

  // row k of `lower` strictly below the diagonal, nonzeros only
  std::vector<std::vector<std::pair<int, Rat>>> row_nz(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < k; ++i)
      if (f.lower[k][i] != 0) row_nz[k].emplace_back(i, f.lower[k][i]);

  std::vector<Rat> csum(n, Rat(0));  // csum[i] = sum_{j>i assigned} lower[j][i]*y_j
  std::vector<std::int64_t> x(n, 0);
  std::vector<Rat> saved;

  // Assign coordinates from the last down to the first: the level-k quadratic
  // term D_k (x_k + E_k)^2 depends only on coordinates already fixed.
  auto rec = [&](auto&& self, int k, const Rat& budget) -> void {
    if (k < 0) {
      visit(static_cast<const std::vector<std::int64_t>&>(x), Rat(bound - budget));
      return;
    }
    const Rat e = csum[k] - center[k];
    const std::int64_t x0 = to_int64(rat_floor(-e));
    const auto& nz = row_nz[k];
    const std::size_t base = saved.size();
    for (const auto& [i, lv] : nz) saved.push_back(csum[i]);

    auto descend = [&](std::int64_t xv, const Rat& rest) {
      x[k] = xv;
      const Rat yk = Rat(xv) - center[k];
      for (std::size_t idx = 0; idx < nz.size(); ++idx)
        csum[nz[idx].first] = saved[base + idx] + nz[idx].second * yk;
      self(self, k - 1, rest);
    };

    for (std::int64_t xv = x0;; --xv) {
      Rat t = Rat(xv) + e;
      Rat q = f.diag[k] * t * t;
      if (q > budget) break;
      descend(xv, budget - q);
    }
    for (std::int64_t xv = x0 + 1;; ++xv) {
      Rat t = Rat(xv) + e;
      Rat q = f.diag[k] * t * t;
      if (q > budget) break;
      descend(xv, budget - q);
    }
    for (std::size_t idx = 0; idx < nz.size(); ++idx) csum[nz[idx].first] = saved[base + idx];
    saved.resize(base);
  };
  rec(rec, n - 1, bound);
}

/// All integer vectors in the ellipsoid, sorted lexicographically.
inline std::vector<IntVector> enumerate_in_ellipsoid(const Lattice& L,
                                                     const RationalVector& center,
                                                     const Rat& bound) {
  std::vector<IntVector> pts;
  enumerate_ellipsoid_visit(L, center, bound,
                            [&](const IntVector& p, const Rat&) { pts.push_back(p); });
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace latshift
