#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latshift/qseries.hpp"

namespace latshift {

/// A complex grade r = x + iy with exact rational parts. Ordered by (re, im).
struct GradeValue {
  Rat re, im;
  friend bool operator==(const GradeValue& a, const GradeValue& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator<(const GradeValue& a, const GradeValue& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

/// The shifted vertex operator algebra V_{L,h}: the lattice theory's Fock
/// space with conformal vector omega + h(-2)1, h = a + ib given in lattice
/// coordinates. Central charge rank - 12(h,h), recorded exactly.
struct ShiftedVOA {
  Lattice lattice;
  RationalVector shift_real;   // a
  RationalVector shift_imag;   // b, all zero for a real shift
  GradeValue central_charge;   // l - 12(h,h), complex rational
  Int grading_denominator;     // weights lie in (1/D)Z + const for real shifts

  bool real_shift() const {
    return std::all_of(shift_imag.begin(), shift_imag.end(),
                       [](const Rat& x) { return x == 0; });
  }
};

/// Outcome of the type classification:
///   I/II  — not self-dual / self-dual,
///   A/B   — degenerate / nondegenerate vacuum space (dim V_0 > 1 or = 1),
///   -/+   — nonzero negative weight spaces present / absent.
struct TypeRecord {
  bool self_dual = false;
  Int dim_V0, dim_Vm1;
  int codim_L1V1 = 0;
  std::string label;
};

inline ShiftedVOA make(const Lattice& L, const RationalVector& a, const RationalVector& b) {
  detail::check_dim(L, a, "make");
  detail::check_dim(L, b, "make");
  Rat aa = inner(L, a, a), bb = inner(L, b, b), ab = inner(L, a, b);
  GradeValue cc{Rat(L.rank) - 12 * (aa - bb), -24 * ab};
  Int d = 1;
  for (const Rat& x : gram_times(L, a)) d = lcm(d, denominator(x));
  return ShiftedVOA{L, a, b, cc, d};
}

inline ShiftedVOA make(const Lattice& L, const RationalVector& a) {
  return make(L, a, RationalVector(L.rank, Rat(0)));
}

/// Weight of a state u (x) e^alpha with u of Heisenberg degree n:
/// r = n + (alpha,alpha)/2 - (a,alpha) - i(b,alpha).
inline GradeValue weight(const ShiftedVOA& V, int n, const IntVector& alpha) {
  RationalVector av = to_rational(alpha);
  Rat na = inner(V.lattice, av, av);
  return GradeValue{Rat(n) + na / 2 - inner(V.lattice, V.shift_real, av),
                    -inner(V.lattice, V.shift_imag, av)};
}

/// dim (V_{L,h})_r: solutions (n, alpha) of the weight equation, each
/// contributing the rank-l colored partition count p_l(n). The enumeration
/// radius comes from (alpha - a, alpha - a)/2 = x - n + (a,a)/2.
inline Int weight_space_dim(const ShiftedVOA& V, const GradeValue& r) {
  const Lattice& L = V.lattice;
  const bool has_imag = !V.real_shift();
  if (!has_imag && r.im != 0) return 0;
  Rat aa = inner(L, V.shift_real, V.shift_real);
  Rat bound = 2 * r.re + aa;
  if (bound < 0) return 0;
  Int nmax = rat_floor(r.re + aa / 2);
  if (nmax < 0) return 0;
  auto pl = colored_partitions(L.rank, static_cast<int>(nmax));
  RationalVector gb = gram_times(L, V.shift_imag);
  Int dim = 0;
  enumerate_ellipsoid_visit(L, V.shift_real, bound, [&](const IntVector& alpha, const Rat& norm) {
    Rat nval = r.re + aa / 2 - norm / 2;
    if (nval < 0 || !is_integral(nval)) return;
    if (has_imag) {
      Rat y(0);
      for (int i = 0; i < L.rank; ++i) y -= gb[i] * alpha[i];
      if (y != r.im) return;
    }
    dim += pl[static_cast<std::size_t>(numerator(nval))];
  });
  return dim;
}

/// All grades with Re(r) <= W, with dimensions, sorted by (Re, Im).
inline std::vector<std::pair<GradeValue, Int>> spectrum(const ShiftedVOA& V, const Rat& W) {
  const Lattice& L = V.lattice;
  Rat aa = inner(L, V.shift_real, V.shift_real);
  Rat bound = 2 * W + aa;
  std::map<GradeValue, Int> acc;
  if (bound >= 0) {
    Int nmax = rat_floor(W + aa / 2);
    auto pl = colored_partitions(L.rank, nmax >= 0 ? static_cast<int>(nmax) : 0);
    const bool has_imag = !V.real_shift();
    RationalVector gb = gram_times(L, V.shift_imag);
    enumerate_ellipsoid_visit(L, V.shift_real, bound, [&](const IntVector& alpha, const Rat& norm) {
      Rat w0 = norm / 2 - aa / 2;  // = (alpha,alpha)/2 - (a,alpha)
      Rat y(0);
      if (has_imag)
        for (int i = 0; i < L.rank; ++i) y -= gb[i] * alpha[i];
      for (Int n = 0; w0 + Rat(n) <= W; ++n)
        acc[GradeValue{w0 + Rat(n), y}] += pl[static_cast<std::size_t>(n)];
    });
  }
  return {acc.begin(), acc.end()};
}

/// Grades violating the C-graded truncation condition, Re(r) < |Im(r)|,
/// searched inside a caller-chosen ball (alpha,alpha) <= norm_bound.
inline std::vector<std::pair<GradeValue, Int>> truncation_violations_within(
    const ShiftedVOA& V, const Rat& norm_bound) {
  const Lattice& L = V.lattice;
  RationalVector zero(L.rank, Rat(0));
  RationalVector ga = gram_times(L, V.shift_real);
  RationalVector gb = gram_times(L, V.shift_imag);
  std::vector<std::pair<Rat, Rat>> hits;  // (x0, y) per lattice point
  Int global_nmax = 0;
  enumerate_ellipsoid_visit(L, zero, norm_bound, [&](const IntVector& alpha, const Rat& norm) {
    Rat dot_a(0), dot_b(0);
    for (int i = 0; i < L.rank; ++i) {
      dot_a += ga[i] * alpha[i];
      dot_b += gb[i] * alpha[i];
    }
    Rat x0 = norm / 2 - dot_a;  // base weight at n = 0 ... norm here is (alpha,alpha)
    Rat y = -dot_b;
    if (x0 < abs_rat(y)) {
      hits.emplace_back(x0, y);
      Int nmax = rat_ceil(abs_rat(y) - x0);  // n ranges over 0 <= n, x0 + n < |y|
      if (nmax > global_nmax) global_nmax = nmax;
    }
  });
  auto pl = colored_partitions(L.rank, static_cast<int>(global_nmax));
  std::map<GradeValue, Int> acc;
  for (const auto& [x0, y] : hits)
    for (Int n = 0; x0 + Rat(n) < abs_rat(y); ++n)
      acc[GradeValue{x0 + Rat(n), y}] += pl[static_cast<std::size_t>(n)];
  return {acc.begin(), acc.end()};
}

/// The finitely many truncation violations of V_{L,h}. By the Schwarz bound,
/// every violating alpha has (alpha,alpha) < 4 max((a+b,a+b),(a-b,a-b)).
inline std::vector<std::pair<GradeValue, Int>> truncation_violations(const ShiftedVOA& V) {
  const Lattice& L = V.lattice;
  RationalVector plus(L.rank), minus(L.rank);
  for (int i = 0; i < L.rank; ++i) {
    plus[i] = V.shift_real[i] + V.shift_imag[i];
    minus[i] = V.shift_real[i] - V.shift_imag[i];
  }
  Rat bound = std::max(inner(L, plus, plus), inner(L, minus, minus)) * 4;
  return truncation_violations_within(V, bound);
}

/// Z_V(q) = Tr q^{L_h(0) - c_h/24} by direct spectrum enumeration.
inline QSeries partition_function_direct(const ShiftedVOA& V, const Rat& order) {
  if (!V.real_shift())
    throw ComplexShiftUnsupported("partition function needs a real shift");
  const Rat c24 = V.central_charge.re / 24;
  QSeries out{{}, order};
  for (const auto& [grade, dim] : spectrum(V, order + c24)) {
    Rat e = grade.re - c24;
    if (e < order) out.terms[e] += Rat(dim);
  }
  return out;
}

/// Z_V(q) = theta_{L-h}(q) / eta(q)^l, the coset theta route.
inline QSeries partition_function_theta(const ShiftedVOA& V, const Rat& order) {
  if (!V.real_shift())
    throw ComplexShiftUnsupported("partition function needs a real shift");
  const int l = V.lattice.rank;
  QSeries theta = theta_coset(V.lattice, V.shift_real, order + Rat(l, 24));
  QSeries eta = eta_power(-l, order - leading(theta).first);
  return truncate(mul(theta, eta), order);
}

/// Partition function of the simple module indexed by lambda in L°:
/// Z = theta_{L - lambda - h} / eta^l.
inline QSeries module_partition_function(const ShiftedVOA& V, const RationalVector& lambda,
                                         const Rat& order) {
  if (!in_dual(V.lattice, lambda))
    throw NotInDualLattice("module label is not in the dual lattice");
  if (!V.real_shift())
    throw ComplexShiftUnsupported("module partition function needs a real shift");
  const int l = V.lattice.rank;
  RationalVector center(l);
  for (int i = 0; i < l; ++i) center[i] = V.shift_real[i] + lambda[i];
  QSeries theta = theta_coset(V.lattice, center, order + Rat(l, 24));
  QSeries eta = eta_power(-l, order - leading(theta).first);
  return truncate(mul(theta, eta), order);
}

/// The dual of V_{L-lambda} is V_{L+lambda}: returns -lambda, normalized to
/// the canonical discriminant representative.
inline RationalVector dual_module_coset(const Lattice& L, const RationalVector& lambda) {
  if (!in_dual(L, lambda)) throw NotInDualLattice("not a dual lattice vector");
  RationalVector neg(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) neg[i] = -lambda[i];
  auto d = discriminant(L);
  return canonical_dual_rep(L, d, neg);
}

/// Self-duality criterion for the Z-graded case: 2h in L.
inline bool is_self_dual(const ShiftedVOA& V) {
  if (!V.real_shift() || !in_dual(V.lattice, V.shift_real))
    throw NotVOACase("self-duality is defined for real h in the dual lattice");
  RationalVector twice(V.shift_real.size());
  for (std::size_t i = 0; i < twice.size(); ++i) twice[i] = 2 * V.shift_real[i];
  return in_lattice(V.lattice, twice);
}

// Defined in fock.hpp: dim V_0 - rank of the explicit L_h(1) matrix.
// Include latshift/fock.hpp (or the umbrella header) to classify with_codim.
inline Int l1_codimension(const ShiftedVOA& V);

/// Type classification. The fast path derives codim L(1)V_1 from
/// self-duality (0 or 1); with_codim recomputes it from the explicit
/// L_h(1): V_1 -> V_0 matrix and insists the two agree.
inline TypeRecord classify(const ShiftedVOA& V, bool with_codim = false) {
  if (!V.real_shift() || !in_dual(V.lattice, V.shift_real))
    throw NotVOACase("classification is defined for real h in the dual lattice");
  TypeRecord t;
  t.dim_V0 = weight_space_dim(V, GradeValue{Rat(0), Rat(0)});
  t.dim_Vm1 = weight_space_dim(V, GradeValue{Rat(-1), Rat(0)});
  t.self_dual = is_self_dual(V);
  const int derived = t.self_dual ? 1 : 0;
  if (with_codim) {
    Int computed = l1_codimension(V);
    if (computed != derived)
      throw Error("codim L(1)V_1 = " + computed.str() + " disagrees with the self-duality value " +
                  std::to_string(derived));
    t.codim_L1V1 = static_cast<int>(computed);
  } else {
    t.codim_L1V1 = derived;
  }
  t.label = std::string(t.self_dual ? "II" : "I") + (t.dim_V0 > 1 ? "A" : "B") +
            (t.dim_Vm1 > 0 ? "-" : "+");
  return t;
}

/// Shifts h in lambda + L with strictly increasing (h,h): pairwise distinct
/// central charges, identical partition functions. Steps along beta (a
/// nonzero lattice vector, first basis vector by default).
inline std::vector<ShiftedVOA> same_Z_family(const Lattice& L, const RationalVector& lambda,
                                             int count,
                                             std::optional<RationalVector> beta = std::nullopt) {
  if (!in_dual(L, lambda)) throw NotInDualLattice("family base point is not in the dual lattice");
  if (count < 1) throw BadParameter("family size must be >= 1");
  RationalVector step;
  if (beta) {
    step = *beta;
    detail::check_dim(L, step, "same_Z_family");
    if (!in_lattice(L, step) || inner(L, step, step) == 0)
      throw BadParameter("direction must be a nonzero lattice vector");
  } else {
    step.assign(L.rank, Rat(0));
    step[0] = 1;
  }
  std::vector<ShiftedVOA> out;
  Rat last_norm(-1);
  for (Int m = 0; static_cast<int>(out.size()) < count; ++m) {
    RationalVector h(L.rank);
    for (int i = 0; i < L.rank; ++i) h[i] = lambda[i] + Rat(m) * step[i];
    Rat norm = inner(L, h, h);
    if (out.empty() || norm > last_norm) {
      out.push_back(make(L, h));
      last_norm = norm;
    }
  }
  return out;
}

/// The holomorphic family member (L_r, h_r): E8^{(3r + c/8)} with a shift of
/// norm 2r, central charge exactly c. Needs 8 | c, 24r + c > 0 and at least
/// one E8 summand. When r exceeds the number of summands (possible for
/// c < -16r), the last summand absorbs the remaining norm as a single vector.
inline ShiftedVOA holomorphic_family(long long c, long long r) {
  if (c % 8 != 0) throw NotMultipleOf8("central charge must be divisible by 8, got " + std::to_string(c));
  if (r < 1) throw BadParameter("family index r must be >= 1");
  if (24 * r + c <= 0)
    throw CentralChargeTooNegative("need 24r + c > 0, got " + std::to_string(24 * r + c));
  const long long summands = 3 * r + c / 8;
  if (summands < 1)
    throw CentralChargeTooNegative("need at least one E8 summand, got " + std::to_string(summands));
  Lattice e8 = named("E8");
  Lattice L = direct_sum(std::vector<Lattice>(static_cast<std::size_t>(summands), e8));
  RationalVector h(L.rank, Rat(0));
  if (r <= summands) {
    for (long long j = 0; j < r; ++j) h[static_cast<std::size_t>(8 * j)] = 1;  // (alpha_1, alpha_1) = 2 per summand
  } else {
    for (long long j = 0; j + 1 < summands; ++j) h[static_cast<std::size_t>(8 * j)] = 1;
    const Rat target = Rat(2 * (r - summands + 1));
    RationalVector zero(8, Rat(0));
    IntVector pick;
    enumerate_ellipsoid_visit(e8, zero, target, [&](const IntVector& p, const Rat& norm) {
      if (norm != target) return;
      if (pick.empty() || p < pick) pick = p;
    });
    // every positive even norm is represented in E8
    for (int i = 0; i < 8; ++i) h[static_cast<std::size_t>(8 * (summands - 1) + i)] = Rat(pick[i]);
  }
  return make(L, h);
}

}  // namespace latshift
