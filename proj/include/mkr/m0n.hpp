#pragma once

// The moduli specialization: the Chow/K rings of the moduli space of
// stable rational curves with n marked points are those of the graphic
// matroid of the complete graph on n-1 vertices (plain flavor). Marked
// points are 0..n-1 with n-1 the reference point; boundary strata are
// indexed by subsets S of the vertex set {0..n-2}, embedded into the flat
// lattice by S -> F_S = (edges inside S). This header provides that
// bridge, the Cerberus positivity test, the subset Snapper polynomial, the
// psi-class evaluation formula, and the presentation audit for the
// subset-generated ring.

#include <functional>
#include <memory>
#include <vector>

#include "mkr/chow.hpp"
#include "mkr/intmath.hpp"
#include "mkr/kring.hpp"
#include "mkr/snapper.hpp"

namespace mkr {

class M0n {
 public:
  explicit M0n(int n) : n_(n), braid_(make_braid(n)) {
    for (int i = 0; i < n - 1; ++i)
      for (int j = i + 1; j < n - 1; ++j) ends_.emplace_back(i, j);
  }

  int n() const { return n_; }
  int vertices() const { return n_ - 1; }
  const Matroid& braid() const { return braid_; }
  int dim() const { return n_ - 3; }  // top degree of the plain rings

  // The flat of edges inside a vertex subset (needs >= 2 vertices).
  Mask flat_of(Mask vertex_set) const {
    check(popcount(vertex_set) >= 2, ErrorCode::InvalidParameters,
          "stratum subsets have at least two vertices");
    check(subset_of(vertex_set, full_mask(vertices())),
          ErrorCode::InvalidParameters, "vertex subset out of range");
    Mask f = 0;
    for (size_t e = 0; e < ends_.size(); ++e)
      if ((vertex_set >> ends_[e].first & 1) && (vertex_set >> ends_[e].second & 1))
        f |= Mask(1) << e;
    return f;
  }

  // Transport a multi-index over vertex subsets to one over braid flats.
  FlatMultiIndex to_flats(const FlatMultiIndex& vm) const {
    std::vector<std::pair<Mask, long>> raw;
    for (const auto& [s, k] : vm.entries) raw.emplace_back(flat_of(s), k);
    return FlatMultiIndex::make(raw);
  }

 private:
  static Matroid make_braid(int n) {
    check(n >= 3, ErrorCode::InvalidParameters, "need at least three marks");
    check((n - 1) * (n - 2) / 2 <= Matroid::kMaxGroundSet,
          ErrorCode::CombinatorialExplosion,
          "complete-graph ground set exceeds the supported size");
    return Matroid::complete_graph(n - 1);
  }

  int n_;
  Matroid braid_;
  std::vector<std::pair<int, int>> ends_;
};

// The Cerberus test for a multi-index over vertex subsets (each with at
// least two vertices): every nonempty subset T of the support must satisfy
//   |union of the subsets in T| - 2 >= sum of multiplicities over T.
// Supports containing a two-element subset fail on its singleton T.
inline bool cerberus_holds(const FlatMultiIndex& vm) {
  int s = static_cast<int>(vm.entries.size());
  check(s <= 24, ErrorCode::CombinatorialExplosion, "multi-index support too large");
  for (const auto& [m, k] : vm.entries) {
    check(popcount(m) >= 2, ErrorCode::InvalidParameters,
          "stratum subsets have at least two vertices");
    (void)k;
  }
  for (Mask t = 1; t < (Mask(1) << s); ++t) {
    Mask un = 0;
    long tot = 0;
    for (int i = 0; i < s; ++i)
      if (t & (Mask(1) << i)) {
        un |= vm.entries[i].first;
        tot += vm.entries[i].second;
      }
    if (popcount(un) - 2 < tot) return false;
  }
  return true;
}

// Subset Snapper polynomial of the moduli space: indices over vertex
// subsets with at least three elements (two-element subsets never pass the
// Cerberus test), total up to n-3, with 0/1 Cerberus coefficients.
inline SnapperPoly snap_m0n(int n) {
  check(n >= 3, ErrorCode::InvalidParameters, "need at least three marks");
  check(n <= 12, ErrorCode::CombinatorialExplosion, "too many marked points");
  std::vector<Mask> subs;
  for (Mask s = 0; s <= full_mask(n - 1); ++s)
    if (popcount(s) >= 3) subs.push_back(s);
  SnapperPoly out;
  std::vector<std::pair<Mask, long>> cur;
  std::function<void(size_t, long)> rec = [&](size_t from, long budget) {
    FlatMultiIndex mi = FlatMultiIndex::make(cur);
    if (cerberus_holds(mi)) out.add(mi, 1);
    if (budget == 0) return;
    for (size_t i = from; i < subs.size(); ++i)
      for (long k = 1; k <= budget; ++k) {
        cur.emplace_back(subs[i], k);
        rec(i + 1, budget - k);
        cur.pop_back();
      }
  };
  rec(0, n - 3);
  return out;
}

// Euler characteristic of psi-class combinations:
//   chi(sum_i a_i psi_i) = sum_{d, |d| <= n-3}
//       prod_i C(a_i, d_i) * multinom(n-3; n-3-|d|, d_0, ..., d_{n-1}).
inline Int snap_psi(int n, const std::vector<Int>& a) {
  check(n >= 3, ErrorCode::InvalidParameters, "need at least three marks");
  check(static_cast<int>(a.size()) == n, ErrorCode::InvalidParameters,
        "one exponent per marked point");
  long top = n - 3;
  std::vector<long> d(n, 0);
  Int acc = 0;
  std::function<void(int, long, const Int&)> rec = [&](int i, long used,
                                                       const Int& w) {
    if (w == 0) return;
    if (i == n) {
      std::vector<long> parts;
      parts.push_back(top - used);
      for (long v : d) parts.push_back(v);
      acc += w * multinom(top, parts);
      return;
    }
    for (long v = 0; used + v <= top; ++v) {
      d[i] = v;
      rec(i + 1, used + v, w * binom_gen(a[i], v));
    }
    d[i] = 0;
  };
  rec(0, 0, 1);
  return acc;
}

// Ring-level check that the subset Snapper coefficients are the Euler
// characteristics: over every multi-index on vertex subsets (two-element
// subsets included) with total at most n-3,
//   chi(braid, eta^(transported index)) == Cerberus indicator.
// Returns the number of indices checked; throws on the first mismatch.
inline size_t m0n_euler_check(const M0n& m0, const KContext& ctx) {
  check(ctx.matroid() == m0.braid() && ctx.flavor() == Flavor::Plain,
        ErrorCode::InvalidParameters,
        "context must be the plain rings of the braid matroid");
  std::vector<Mask> subs;
  for (Mask s = 0; s <= full_mask(m0.vertices()); ++s)
    if (popcount(s) >= 2) subs.push_back(s);
  size_t tested = 0;
  std::vector<std::pair<Mask, long>> cur;
  std::function<void(size_t, long)> rec = [&](size_t from, long budget) {
    FlatMultiIndex vm = FlatMultiIndex::make(cur);
    Int want = cerberus_holds(vm) ? 1 : 0;
    Int got = ctx.chi_eta(m0.to_flats(vm));
    check(got == want, ErrorCode::InternalError,
          "chi(eta^m) disagrees with the Cerberus indicator at " +
              vm.to_string());
    ++tested;
    if (budget == 0) return;
    for (size_t i = from; i < subs.size(); ++i)
      for (long k = 1; k <= budget; ++k) {
        cur.emplace_back(subs[i], k);
        rec(i + 1, budget - k);
        cur.pop_back();
      }
  };
  rec(0, m0.dim());
  return tested;
}

// Audit of the subset-generated presentation: the abstract graded ring on
// generators u_S (vertex subsets with >= 3 elements; two-element subsets
// are substituted by zero) modulo
//   (u_S - u_{S u T})(u_T - u_{S u T})
// over incomparable overlapping pairs (either factor dropping to -u_{S u T}
// when its subset has two elements), truncated above degree n-3, must be
// free of the same rank as the span of the u-monomial images in both the
// Chow ring (u_S -> h_{F_S}) and the K ring (u_S -> eta_{F_S}), with every
// defining relation vanishing in both images and the two-element classes
// vanishing outright.
struct PresentationReport {
  int abstract_rank = 0;
  int chow_span_rank = 0;
  int k_span_rank = 0;
  bool relations_vanish_chow = false;
  bool relations_vanish_k = false;
  bool small_classes_vanish = false;

  bool ok() const {
    return abstract_rank == chow_span_rank && abstract_rank == k_span_rank &&
           relations_vanish_chow && relations_vanish_k && small_classes_vanish;
  }
};

inline PresentationReport m0n_presentation_check(const M0n& m0,
                                                 const KContext& ctx) {
  check(ctx.matroid() == m0.braid() && ctx.flavor() == Flavor::Plain,
        ErrorCode::InvalidParameters,
        "context must be the plain rings of the braid matroid");
  const int verts = m0.vertices();
  std::vector<Mask> gens;  // subsets with >= 3 elements, the u variables
  for (Mask s = 0; s <= full_mask(verts); ++s)
    if (popcount(s) >= 3) gens.push_back(s);
  const int ng = static_cast<int>(gens.size());
  auto index_of = [&](Mask s) {
    for (int i = 0; i < ng; ++i)
      if (gens[i] == s) return i;
    fail(ErrorCode::InternalError, "missing generator subset");
  };

  std::vector<Var> vars;
  for (Mask s : gens) vars.push_back(Var::flat(s));
  auto vs = std::make_shared<const VarSet>(std::move(vars));

  QuotientSpec spec;
  spec.vars = vs;
  spec.trunc_degree = m0.dim() + 1;
  spec.graded = true;
  spec.admissible = [](const Expo&) { return true; };
  // u_X as a polynomial: zero when |X| = 2.
  auto u_poly = [&](Mask x) {
    return popcount(x) >= 3 ? Poly::variable(vs, index_of(x)) : Poly(vs);
  };
  std::vector<Mask> all;  // every subset with >= 2 elements
  for (Mask s = 0; s <= full_mask(verts); ++s)
    if (popcount(s) >= 2) all.push_back(s);
  std::vector<std::pair<Mask, Mask>> rel_pairs;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) {
      Mask s = all[i], t = all[j];
      if (subset_of(s, t) || subset_of(t, s)) continue;
      if ((s & t) == 0) continue;
      rel_pairs.emplace_back(s, t);
      Poly j_u = u_poly(s | t);
      spec.relations.push_back(Poly::mul(u_poly(s) - j_u, u_poly(t) - j_u));
    }

  PresentationReport rep;
  auto abstract = QuotientRing::build(std::move(spec));
  rep.abstract_rank = abstract->rank();

  // Images of the generators in both rings.
  const ChowRing& a = ctx.chow();
  const KRing& k = ctx.kring();
  std::vector<RingElement> himg, eimg;
  for (Mask s : gens) {
    himg.push_back(a.h_class(m0.flat_of(s)));
    eimg.push_back(k.eta(m0.flat_of(s)));
  }

  // Two-element classes vanish in both targets.
  rep.small_classes_vanish = true;
  for (Mask s = 0; s <= full_mask(verts); ++s)
    if (popcount(s) == 2) {
      Mask f = m0.flat_of(s);
      if (!a.h_class(f).is_zero() || !k.eta(f).is_zero())
        rep.small_classes_vanish = false;
    }

  // Defining relations vanish under both substitutions.
  rep.relations_vanish_chow = true;
  rep.relations_vanish_k = true;
  auto img = [&](Mask x, const std::vector<RingElement>& table,
                 const QuotientRing& q) {
    return popcount(x) >= 3 ? table[index_of(x)] : q.zero();
  };
  for (const auto& [s, t] : rel_pairs) {
    Mask j = s | t;
    RingElement ha = a.ring().mul(a.ring().sub(img(s, himg, a.ring()), img(j, himg, a.ring())),
                                  a.ring().sub(img(t, himg, a.ring()), img(j, himg, a.ring())));
    if (!ha.is_zero()) rep.relations_vanish_chow = false;
    RingElement hk = k.ring().mul(k.ring().sub(img(s, eimg, k.ring()), img(j, eimg, k.ring())),
                                  k.ring().sub(img(t, eimg, k.ring()), img(j, eimg, k.ring())));
    if (!hk.is_zero()) rep.relations_vanish_k = false;
  }

  // Ranks of the u-monomial spans (all exponent vectors of total <= n-3).
  auto span_rank = [&](const QuotientRing& q, const std::vector<RingElement>& table) {
    RowReducer red;
    std::function<void(int, long, const RingElement&)> rec =
        [&](int i, long budget, const RingElement& acc) {
          if (i == ng) {
            SparseRow row;
            for (const auto& [p, c] : acc.coords) row.emplace_back(p, c);
            red.add_row(std::move(row));
            return;
          }
          RingElement cur = acc;
          for (long v = 0; v <= budget; ++v) {
            if (v > 0) cur = q.mul(cur, table[i]);
            rec(i + 1, budget - v, cur);
          }
        };
    rec(0, m0.dim(), q.one());
    return red.rank();
  };
  rep.chow_span_rank = span_rank(a.ring(), himg);
  rep.k_span_rank = span_rank(k.ring(), eimg);
  return rep;
}

// Specialization check for the reference psi class: evaluating the subset
// Snapper polynomial with the full vertex set at t and everything else at
// zero must agree with snap_psi at (0, ..., 0, t); both telescope to
// C(t + n - 3, n - 3).
inline bool m0n_psi_specialization(int n, long lo = -3, long hi = 5) {
  SnapperPoly sp = snap_m0n(n);
  Mask full = full_mask(n - 1);
  for (long t = lo; t <= hi; ++t) {
    Int v1 = snap_eval(sp, {{full, Int(t)}});
    std::vector<Int> a(n, 0);
    a[n - 1] = t;
    Int v2 = snap_psi(n, a);
    Int v3 = binom_gen(Int(t) + (n - 3), n - 3);
    if (v1 != v2 || v1 != v3) return false;
  }
  return true;
}

}  // namespace mkr
