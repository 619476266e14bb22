#pragma once

#include <map>
#include <utility>
#include <vector>

#include "latshift/lattice.hpp"
#include "latshift/rational.hpp"

namespace latshift {

/// Sparse exact formal q-expansion with rational exponents. `order` is the
/// truncation contract: every exponent < order is present and correct, and no
/// stored exponent reaches order. Coefficients are never zero.
struct QSeries {
  std::map<Rat, Rat> terms;
  Rat order;
};

inline QSeries qs_zero(Rat order) { return QSeries{{}, std::move(order)}; }

inline QSeries qs_monomial(const Rat& exp, const Rat& coeff, Rat order) {
  QSeries s{{}, std::move(order)};
  if (coeff != 0 && exp < s.order) s.terms.emplace(exp, coeff);
  return s;
}

inline QSeries qs_one(Rat order) { return qs_monomial(Rat(0), Rat(1), std::move(order)); }

/// Leading (smallest-exponent) term; (order, 0) when no term is known.
inline std::pair<Rat, Rat> leading(const QSeries& s) {
  if (s.terms.empty()) return {s.order, Rat(0)};
  return *s.terms.begin();
}

/// Exact coefficient lookup; exponents at or past the order are not known.
inline Rat coefficient(const QSeries& s, const Rat& e) {
  if (e >= s.order)
    throw BeyondOrder("coefficient at " + format_rat(e) + " is beyond order " +
                      format_rat(s.order));
  auto it = s.terms.find(e);
  return it == s.terms.end() ? Rat(0) : it->second;
}

/// Re-truncate to a (not larger) order.
inline QSeries truncate(QSeries s, const Rat& order) {
  if (order > s.order)
    throw BeyondOrder("cannot extend order " + format_rat(s.order) + " to " + format_rat(order));
  s.terms.erase(s.terms.lower_bound(order), s.terms.end());
  s.order = order;
  return s;
}

inline QSeries add(const QSeries& a, const QSeries& b) {
  QSeries out{{}, std::min(a.order, b.order)};
  for (const auto& [e, c] : a.terms)
    if (e < out.order) out.terms[e] += c;
  for (const auto& [e, c] : b.terms)
    if (e < out.order) out.terms[e] += c;
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

inline QSeries scale(QSeries s, const Rat& c) {
  if (c == 0) return qs_zero(s.order);
  for (auto& [e, v] : s.terms) v *= c;
  return s;
}

inline QSeries negate(QSeries s) { return scale(std::move(s), Rat(-1)); }

/// Product with sound truncation propagation: unknown tail of one factor
/// meets at best the leading term of the other.
inline QSeries mul(const QSeries& a, const QSeries& b) {
  const Rat la = leading(a).first, lb = leading(b).first;
  QSeries out{{}, std::min(a.order + lb, b.order + la)};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Rat e = ea + eb;
      if (e < out.order) out.terms[e] += ca * cb;
    }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

inline QSeries pow(const QSeries& s, int k) {
  QSeries out = qs_one(s.order + (k > 0 ? (k - 1) * leading(s).first : Rat(0)));
  for (int i = 0; i < k; ++i) out = mul(out, s);
  return out;
}

/// Coefficientwise equality of all exponents below O.
inline bool eq_to_order(const QSeries& a, const QSeries& b, const Rat& O) {
  if (O > a.order || O > b.order)
    throw BeyondOrder("comparison order " + format_rat(O) + " exceeds a known order");
  auto ia = a.terms.begin(), ib = b.terms.begin();
  while (ia != a.terms.end() && ia->first < O && ib != b.terms.end() && ib->first < O) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
    ++ia; ++ib;
  }
  if (ia != a.terms.end() && ia->first < O) return false;
  if (ib != b.terms.end() && ib->first < O) return false;
  return true;
}

/// p_m(n) for n = 0..nmax: partitions of n into parts of m colors (the graded
/// dimension of a rank-m Heisenberg Fock space). One DP pass per color.
inline std::vector<Int> colored_partitions(int m, int nmax) {
  std::vector<Int> f(static_cast<std::size_t>(nmax) + 1, Int(0));
  f[0] = 1;
  for (int color = 0; color < m; ++color)
    for (int s = 1; s <= nmax; ++s)
      for (int n = s; n <= nmax; ++n) f[n] += f[n - s];
  return f;
}

/// eta(q)^l as an exact q-expansion, leading term q^{l/24}.
/// l > 0 goes through Euler's pentagonal-number series, multiplied out l
/// times; l < 0 uses the colored-partition DP. l = 0 is the series 1.
inline QSeries eta_power(int l, const Rat& order) {
  if (l == 0) return qs_one(order);
  const Rat shift = Rat(l, 24);
  if (l > 0) {
    const Rat inner_order = order - shift;
    QSeries euler{{}, inner_order};
    for (Int k = 0;; ++k) {  // exponents k(3k +- 1)/2
      Rat e1 = Rat(k * (3 * k - 1), 2), e2 = Rat(k * (3 * k + 1), 2);
      if (e1 >= inner_order && e2 >= inner_order) break;
      Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
      if (e1 < inner_order) euler.terms[e1] += sign;
      if (k > 0 && e2 < inner_order) euler.terms[e2] += sign;
    }
    QSeries prod = qs_one(inner_order);
    for (int i = 0; i < l; ++i) prod = mul(prod, euler);
    QSeries out{{}, order};
    for (const auto& [e, c] : prod.terms)
      if (e + shift < order) out.terms.emplace(e + shift, c);
    return out;
  }
  const int m = -l;
  Int nmax_i = rat_ceil(order - shift);
  if (nmax_i < 0) return qs_zero(order);
  const int nmax = static_cast<int>(nmax_i);
  auto p = colored_partitions(m, nmax);
  QSeries out{{}, order};
  for (int n = 0; n <= nmax; ++n) {
    Rat e = shift + n;
    if (e < order && p[n] != 0) out.terms.emplace(e, Rat(p[n]));
  }
  return out;
}

namespace detail {

/// Connected components of the Gram matrix's nonzero off-diagonal graph.
inline std::vector<std::vector<int>> gram_components(const Lattice& L) {
  const int n = L.rank;
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> groups;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(groups.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w = 0; w < n; ++w)
        if (w != v && comp[w] < 0 && L.gram[v][w] != 0) {
          comp[w] = comp[v];
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    groups.push_back(std::move(members));
  }
  return groups;
}

inline QSeries theta_coset_direct(const Lattice& L, const RationalVector& h, const Rat& order) {
  QSeries out{{}, order};
  if (order <= 0) return out;
  enumerate_ellipsoid_visit(L, h, 2 * order, [&](const IntVector&, const Rat& norm) {
    Rat e = norm / 2;
    if (e < order) out.terms[e] += 1;
  });
  return out;
}

}  // namespace detail

/// theta_{L-h}(q) = sum over alpha in L of q^{(alpha-h, alpha-h)/2}, truncated.
/// Orthogonal direct sums factor: the series is computed per Gram block and
/// multiplied, so E8^k costs k rank-8 enumerations, not one rank-8k one.
inline QSeries theta_coset(const Lattice& L, const RationalVector& h, const Rat& order) {
  detail::check_dim(L, h, "theta_coset");
  auto groups = detail::gram_components(L);
  if (groups.size() <= 1) return detail::theta_coset_direct(L, h, order);
  QSeries out = qs_one(order);
  for (const auto& g : groups) {
    const int m = static_cast<int>(g.size());
    IntMatrix sub(m, std::vector<Int>(m));
    RationalVector hs(m);
    for (int i = 0; i < m; ++i) {
      hs[i] = h[g[i]];
      for (int j = 0; j < m; ++j) sub[i][j] = L.gram[g[i]][g[j]];
    }
    Lattice block{m, std::move(sub), ""};
    out = mul(out, detail::theta_coset_direct(block, hs, order));
    out = truncate(std::move(out), order);
  }
  return out;
}

}  // namespace latshift
