#pragma once

// Euler-characteristic polynomials of loopless matroids ("Snapper
// polynomials"), stored in the rising-binomial basis over flat
// multi-indices:
//   P(a) = sum_m c_m prod_F rb(a_F, m_F),   rb(x, d) = C(x + d - 1, d),
// so that P(a) = chi(M, O(sum_F a_F D_F)). Three producers live here: the
// simplicial form (0/1 coefficients from the Hall-Rado conditions), the
// flag form with coefficients assembled from characteristic polynomials of
// flag minors, and closed-form degree formulas for flag monomials. The
// coefficient oracle reads the same numbers independently off the ring by
// iterated finite differences of chi, and the recursion checker exercises
// the deletion/contraction factorization.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "mkr/chow.hpp"
#include "mkr/intmath.hpp"
#include "mkr/kring.hpp"
#include "mkr/matroid.hpp"

namespace mkr {

// Integer-valued polynomial in the rising-binomial basis, indexed by flat
// multi-indices.
struct SnapperPoly {
  std::map<FlatMultiIndex, Int> terms;

  void add(const FlatMultiIndex& mi, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(mi, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Int coeff(const FlatMultiIndex& mi) const {
    auto it = terms.find(mi);
    return it == terms.end() ? Int(0) : it->second;
  }

  bool is_zero() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
};

// Evaluate at an assignment of integers to flats; flats missing from the
// assignment count as zero.
inline Int snap_eval(const SnapperPoly& p,
                     const std::vector<std::pair<Mask, Int>>& a) {
  std::map<Mask, Int> val(a.begin(), a.end());
  Int s = 0;
  for (const auto& [mi, c] : p.terms) {
    Int t = c;
    for (const auto& [f, k] : mi.entries) {
      auto it = val.find(f);
      t *= rising_binom(it == val.end() ? Int(0) : it->second, k);
      if (t == 0) break;
    }
    s += t;
  }
  return s;
}

// Simplicial Snapper polynomial: coefficients over all multi-indices of
// nonempty flats (no chain condition) up to the top filtration degree,
// each a 0/1 Hall-Rado indicator. Satisfies
//   snap_eval(.., b) = chi(M, prod_F (1 - eta_F)^{-b_F}).
inline SnapperPoly snap_simplicial(const Matroid& m, Flavor fl) {
  check(m.loopless(), ErrorCode::LoopyMatroid,
        "simplicial Snapper needs a loopless matroid");
  FlatLattice lat(m);
  long top = fl == Flavor::Plain ? m.rank() - 1 : m.rank();
  SnapperPoly out;
  std::vector<std::pair<Mask, long>> cur;
  std::function<void(int, long)> rec = [&](int from, long budget) {
    FlatMultiIndex mi = FlatMultiIndex::make(cur);
    if (euler_simplicial(m, mi, fl) == 1) out.add(mi, 1);
    if (budget == 0) return;
    for (int i = from; i < lat.size(); ++i) {
      if (lat.flat(i) == 0) continue;
      for (long k = 1; k <= budget; ++k) {
        cur.emplace_back(lat.flat(i), k);
        rec(i + 1, budget - k);
        cur.pop_back();
      }
    }
  };
  rec(0, top);
  return out;
}

// Coefficient of the flag term: for a flag with k steps, minors with
// reduced-characteristic coefficients mu[i][0..d_i] (i = 1..k) and
// exponents m = (m_0, ..., m_k),
//   c = sum over e, f in N^k with e_1 = m_0, e_{k+1} = 0 of
//       (-1)^{|e|+|f|} prod_i C(d_i - e_i, f_i) mu[i][e_i]
//           * trinom(m_i; e_{i+1} + f_i - m_i, m_i - f_i, m_i - e_{i+1}).
inline Int snap_flag_coefficient(const std::vector<std::vector<Int>>& mu,
                                 const std::vector<int>& d,
                                 const std::vector<long>& m) {
  int k = static_cast<int>(d.size()) - 1;  // mu, d are 1-based
  // Recurse from position k down to 1, carrying e_{i+1}.
  std::function<Int(int, long)> go = [&](int i, long e_next) -> Int {
    if (i == 0) return 1;
    Int acc = 0;
    long e_lo = i == 1 ? m[0] : 0;
    long e_hi = i == 1 ? m[0] : d[i];
    for (long e = e_lo; e <= e_hi && e <= d[i]; ++e) {
      Int inner = 0;
      for (long f = 0; f <= d[i] - e; ++f) {
        Int t = binom_nonneg(d[i] - e, f) *
                trinom(m[i], e_next + f - m[i], m[i] - f, m[i] - e_next);
        if ((e + f) % 2 == 1) t = -t;
        inner += t;
      }
      if (inner != 0) acc += inner * mu[i][e] * go(i - 1, e);
    }
    return acc;
  };
  return go(k, 0);
}

// The two-variable specialization (flag with no interior flats): the
// coefficient of rb(a_empty, e) rb(a_E, f) is
//   (-1)^{e+f} C(r - 1 - e, f) mu^e(M).
inline Int snap_two_var_coeff(const Matroid& m, long e, long f) {
  check(m.loopless() && m.rank() >= 1, ErrorCode::InvalidParameters,
        "loopless positive-rank matroid required");
  std::vector<Int> mu = char_poly_mu(m);
  if (e < 0 || e >= static_cast<long>(mu.size())) return 0;
  Int c = binom_nonneg(m.rank() - 1 - e, f) * mu[e];
  return (e + f) % 2 == 0 ? c : -c;
}

// Flag Snapper polynomial of the whole matroid: a sum over flags
// (empty = G_0 < G_1 < ... < G_k = ground) of flats and exponent vectors
// m with sum m_i <= r - k, where the term (flag, m) contributes the
// coefficient above at the index
//   empty^{m_0} G_1^{m_1+1} ... G_{k-1}^{m_{k-1}+1} ground^{m_k}
// (interior flats are shifted by one so the index determines the flag).
// The empty matroid yields the constant 1; a matroid with loops yields 0.
inline SnapperPoly snap_fy(const Matroid& m) {
  SnapperPoly out;
  if (m.n() == 0) {
    out.add(FlatMultiIndex{}, 1);
    return out;
  }
  if (!m.loopless()) return out;
  int r = m.rank();
  FlatLattice lat(m);

  std::vector<int> mids;  // lattice indices of interior flats, increasing
  std::function<void()> process = [&]() {
    int k = static_cast<int>(mids.size()) + 1;
    if (r - k < 0) return;
    std::vector<std::vector<Int>> mu(k + 1);
    std::vector<int> d(k + 1, 0);
    std::vector<Mask> flag(k + 1);
    flag[0] = 0;
    for (int i = 1; i <= k; ++i)
      flag[i] = i < k ? lat.flat(mids[i - 1]) : m.ground();
    for (int i = 1; i <= k; ++i) {
      mu[i] = char_poly_mu(m.minor(flag[i - 1], flag[i]));
      d[i] = static_cast<int>(mu[i].size()) - 1;
    }
    // enumerate m_0..m_k with sum <= r - k
    std::vector<long> mm(k + 1, 0);
    std::function<void(int, long)> emit = [&](int pos, long budget) {
      if (pos == k + 1) {
        Int c = snap_flag_coefficient(mu, d, mm);
        if (c == 0) return;
        std::vector<std::pair<Mask, long>> raw;
        raw.emplace_back(Mask(0), mm[0]);
        for (int i = 1; i < k; ++i) raw.emplace_back(flag[i], mm[i] + 1);
        raw.emplace_back(m.ground(), mm[k]);
        out.add(FlatMultiIndex::make(raw), c);
        return;
      }
      for (long v = 0; v <= budget; ++v) {
        mm[pos] = v;
        emit(pos + 1, budget - v);
      }
      mm[pos] = 0;
    };
    emit(0, r - k);
  };

  std::function<void(int)> chains = [&](int from) {
    process();
    for (int i = from; i < lat.size(); ++i) {
      Mask f = lat.flat(i);
      if (f == 0 || f == m.ground()) continue;
      if (!mids.empty() && !lat.leq(mids.back(), i)) continue;
      mids.push_back(i);
      chains(i + 1);
      mids.pop_back();
    }
  };
  chains(0);
  return out;
}

// Closed-form degree of the flag monomial in the plain Chow ring: for a
// flag (empty = G_0 < ... < G_k = ground) and m with sum m_i = r - k, the
// monomial x_empty^{m_0} x_{G_1}^{m_1+1} ... x_{G_{k-1}}^{m_{k-1}+1}
// x_ground^{m_k} has degree
//   (-1)^{r-k} sum over e (e_1 = m_0, e_{k+1} = 0) of
//   prod_i mu^{e_i}(minor_i)
//          * trinom(m_i; e_{i+1} - e_i + d_i - m_i, m_i - d_i + e_i,
//                   m_i - e_{i+1}).
inline Int flag_degree_t(const Matroid& mat, const std::vector<Mask>& flag,
                         const std::vector<long>& m) {
  int r = mat.rank();
  int k = static_cast<int>(flag.size()) - 1;
  check(k >= 1 && flag.front() == 0 && flag.back() == mat.ground(),
        ErrorCode::InvalidParameters, "flag must run from the empty set to E");
  check(static_cast<int>(m.size()) == k + 1, ErrorCode::InvalidParameters,
        "one exponent per flag member");
  long tot = 0;
  for (long v : m) {
    check(v >= 0, ErrorCode::InvalidParameters, "negative exponent");
    tot += v;
  }
  check(tot == r - k, ErrorCode::WrongTotalDegree,
        "flag exponents must sum to rank - length");
  std::vector<std::vector<Int>> mu(k + 1);
  std::vector<int> d(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    check(subset_of(flag[i - 1], flag[i]) && flag[i - 1] != flag[i],
          ErrorCode::NotNested, "flag must be strictly nested");
    check(mat.is_flat(flag[i]), ErrorCode::NotAFlat, "flag member is not a flat");
    mu[i] = char_poly_mu(mat.minor(flag[i - 1], flag[i]));
    d[i] = static_cast<int>(mu[i].size()) - 1;
  }
  std::function<Int(int, long)> go = [&](int i, long e_next) -> Int {
    if (i == 0) return 1;
    long e_lo = i == 1 ? m[0] : 0;
    long e_hi = i == 1 ? m[0] : d[i];
    Int acc = 0;
    for (long e = e_lo; e <= e_hi && e <= d[i]; ++e) {
      Int t = mu[i][e] * trinom(m[i], e_next - e + d[i] - m[i],
                                m[i] - d[i] + e, m[i] - e_next);
      if (t != 0) acc += t * go(i - 1, e);
    }
    return acc;
  };
  Int v = go(k, 0);
  return (r - k) % 2 == 0 ? v : -v;
}

// Interior specialization m_0 = m_k = 0: the inner sum collapses to the
// single path e_1 = 0, e_{i+1} = e_i + m_i - d_i, giving
//   (-1)^{r-k} prod_i mu^{e_i}(minor_i) C(m_i, e_{i+1}).
inline Int flag_degree_t_interior(const Matroid& mat,
                                  const std::vector<Mask>& flag,
                                  const std::vector<long>& m) {
  int r = mat.rank();
  int k = static_cast<int>(flag.size()) - 1;
  check(k >= 1 && static_cast<int>(m.size()) == k + 1,
        ErrorCode::InvalidParameters, "one exponent per flag member");
  check(m.front() == 0 && m.back() == 0, ErrorCode::InvalidParameters,
        "interior form needs m_0 = m_k = 0");
  Int v = 1;
  long e = 0;
  for (int i = 1; i <= k; ++i) {
    std::vector<Int> mu = char_poly_mu(mat.minor(flag[i - 1], flag[i]));
    int d = static_cast<int>(mu.size()) - 1;
    if (e < 0 || e > d) return 0;
    long e_next = e + m[i] - d;
    v *= mu[e] * binom_nonneg(m[i], e_next);
    if (v == 0) return 0;
    e = e_next;
  }
  check(e == 0, ErrorCode::InternalError, "flag walk must close at zero");
  return (r - k) % 2 == 0 ? v : -v;
}

// Rising-basis coefficient of a -> chi(M, O(sum a_F D_F)) read directly
// off the ring by iterated backward differences over the box below m:
//   c_m = sum_{s <= m} (-1)^{|m|-|s|} prod_F C(m_F, s_F) chi(L(s)).
// This is the independent oracle for the flag Snapper coefficients (the
// difference operator shifts every rising-binomial index down by one, and
// rb(0, d) = 0 for d > 0 kills everything except the target index).
inline Int snap_coeff_oracle(const KContext& ctx, const FlatMultiIndex& mi) {
  // Rising-binomial coefficient extraction by iterated backward
  // differences of a |-> chi(prod [O(D_F)]^{a_F}) evaluated at a = 0:
  //   c_m = sum_{s <= m} (-1)^{|s|} C(m, s) chi(L(-s)).
  // By linearity of chi the binomial sums telescope inside the argument,
  //   sum_s (-1)^{s_F} C(m_F, s_F) [O(-D_F)]^{s_F} = (1 - [O(-D_F)])^{m_F},
  // leaving chi of the corresponding tau-class monomial.
  return ctx.euler(ctx.kring().tau_monomial(mi));
}

// Transport an assignment on the flats of M to the flats of a minor: each
// minor flat is lifted to its original mask (via the label vector) plus
// the contracted set, and reads that flat's value.
inline std::vector<std::pair<Mask, Int>> transport_assignment(
    const Matroid& minor, const std::vector<int>& labels, Mask add,
    const std::map<Mask, Int>& val) {
  FlatLattice ml(minor);
  std::vector<std::pair<Mask, Int>> out;
  for (int i = 0; i < ml.size(); ++i) {
    Mask lifted = add;
    Mask f = ml.flat(i);
    for (int b = 0; b < minor.n(); ++b)
      if (f & (Mask(1) << b)) lifted |= Mask(1) << labels[b];
    auto it = val.find(lifted);
    if (it != val.end() && it->second != 0) out.emplace_back(ml.flat(i), it->second);
  }
  return out;
}

// Deletion/contraction factorization of the flag Snapper polynomial: for a
// proper nonempty subset G,
//   P(a) - P(a - 1_G) = Snap_{M|G}(a restricted) * Snap_{M/G}(a shifted),
// where the right side vanishes when G is not a flat (the contraction has
// loops). Checked at `samples` assignments with entries in [-4, 4].
inline bool snapper_recursion_holds(const Matroid& m, Mask g,
                                    const SnapperPoly& snap, int samples,
                                    uint64_t seed) {
  check(g != 0 && g != m.ground() && subset_of(g, m.ground()),
        ErrorCode::InvalidParameters, "proper nonempty subset required");
  if (!m.is_flat(g)) {
    // Contracting a non-flat set produces loops; both sides are zero.
    Matroid mc = m.minor(g, m.ground());
    return !mc.loopless() && snap_fy(mc).is_zero();
  }
  std::vector<int> lr, lc;
  Matroid mr = m.minor(0, g, &lr);
  Matroid mc = m.minor(g, m.ground(), &lc);
  SnapperPoly sr = snap_fy(mr);
  SnapperPoly sc = snap_fy(mc);

  FlatLattice lat(m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int t = 0; t < samples; ++t) {
    std::map<Mask, Int> val;
    for (int i = 0; i < lat.size(); ++i) val[lat.flat(i)] = dist(rng);
    std::vector<std::pair<Mask, Int>> a(val.begin(), val.end());
    std::vector<std::pair<Mask, Int>> a2 = a;
    for (auto& [f, v] : a2)
      if (f == g) v -= 1;
    Int lhs = snap_eval(snap, a) - snap_eval(snap, a2);
    Int rhs = snap_eval(sr, transport_assignment(mr, lr, 0, val)) *
              snap_eval(sc, transport_assignment(mc, lc, g, val));
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace mkr
