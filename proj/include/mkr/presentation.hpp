#pragma once

// Equivalence of the flat-generator presentation with the simplicial one,
// checked from both ends:
//  - inside the quotient rings: the simplicial relations vanish on the
//    h classes, and chain monomials in them span the whole ring;
//  - in the free polynomial ring: constructive certificates rewrite every
//    monomial generator (incomparable products, y_e x_F) as an explicit
//    combination of simplicial relation instances and linear relations.

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mkr/chow.hpp"
#include "mkr/hnf.hpp"
#include "mkr/matroid.hpp"
#include "mkr/poly.hpp"

namespace mkr {

// Vanishing of the simplicial relations on the h classes of the quotient:
//   (h_F - h_{F v G})(h_G - h_{F v G}) = 0   for incomparable nonempty F, G;
// plain flavor additionally h_F = 0 for rank-one F; augmented flavor
// instead h_F^2 = 0 and h_F (h_G - h_{F v G}) = 0 for rank-one F, any G.
inline bool simplicial_relations_vanish(const ChowRing& a) {
  const FlatLattice& lat = a.lattice();
  const QuotientRing& q = a.ring();
  for (int i = 1; i < lat.size(); ++i)
    for (int j = i + 1; j < lat.size(); ++j) {
      if (lat.comparable(i, j)) continue;
      int v = lat.join(i, j);
      RingElement fi = q.sub(a.h_class(lat.flat(i)), a.h_class(lat.flat(v)));
      RingElement fj = q.sub(a.h_class(lat.flat(j)), a.h_class(lat.flat(v)));
      if (!q.mul(fi, fj).is_zero()) return false;
    }
  for (int i = 1; i < lat.size(); ++i) {
    if (lat.rank_of_flat(i) != 1) continue;
    const RingElement& h = a.h_class(lat.flat(i));
    if (a.flavor() == Flavor::Plain) {
      if (!h.is_zero()) return false;
    } else {
      if (!q.mul(h, h).is_zero()) return false;
      for (int j = 1; j < lat.size(); ++j) {
        int v = lat.join(i, j);
        RingElement d = q.sub(a.h_class(lat.flat(j)), a.h_class(lat.flat(v)));
        if (!q.mul(h, d).is_zero()) return false;
      }
    }
  }
  return true;
}

// Rank of the span of all chain-supported h monomials (multiplicity totals
// up to the top degree). Equal to the ring rank exactly when those
// monomials generate the ring as a group.
inline int chain_h_span_rank(const ChowRing& a) {
  const FlatLattice& lat = a.lattice();
  const QuotientRing& q = a.ring();
  RowReducer red;
  auto add = [&](const RingElement& x) {
    SparseRow row;
    for (const auto& [p, c] : x.coords) row.emplace_back(p, c);
    red.add_row(std::move(row));
  };
  add(a.one());
  std::function<void(int, int, const RingElement&)> extend =
      [&](int last, int budget, const RingElement& acc) {
        for (int g = std::max(last + 1, 1); g < lat.size(); ++g) {
          if (last >= 1 && !lat.leq(last, g)) continue;
          RingElement cur = acc;
          for (int mult = 1; mult <= budget; ++mult) {
            cur = q.mul(cur, a.h_class(lat.flat(g)));
            add(cur);
            extend(g, budget - mult, cur);
          }
        }
      };
  extend(0, a.top_degree(), a.one());
  return red.rank();
}

// Free-ring certificates. Everything here works with untruncated
// polynomials over the presentation variables; no quotient is involved.
// Notation: S_F = sum of x_G over flats G containing F, h_F = -S_F,
// I1 = sum of all x_F, I2(e) the element relation of the flavor.
//
// Certified facts, per matroid:
//  - z_{F,G} := sum of x_{F'} x_{G'} over F' containing F, G' containing G,
//    neither containing F v G, equals (h_F - h_{FvG})(h_G - h_{FvG});
//    every term of z is an incomparable pair, the (F, G) term has strictly
//    maximal corank sum, and repeatedly eliminating maximal terms rewrites
//    any incomparable x_F x_G as a combination of z's ending at zero.
//  - augmented: y_e - h_{cl(e)} = I1 + I2(e); w_{e,F} := sum of y_e x_G
//    over G containing F avoiding e equals y_e (h_{F v cl(e)} - h_F); the
//    same elimination rewrites every y_e x_F (e outside F, F nonempty) as
//    a combination of w's ending at zero; and y_e x_empty is the explicit
//    combination y_e^2 - y_e I2(e) - (other y_e x_F), closing the loop.
inline bool monomial_certificates(const Matroid& m, Flavor fl) {
  FlatLattice lat(m);
  const int nf = lat.size();
  const int ne = fl == Flavor::Aug ? m.n() : 0;
  std::vector<Var> vars;
  for (int i = 0; i < nf; ++i) vars.push_back(Var::flat(lat.flat(i)));
  for (int e = 0; e < ne; ++e) vars.push_back(Var::element(e));
  auto vs = std::make_shared<const VarSet>(std::move(vars));
  auto xv = [&](int i) { return Poly::variable(vs, i); };
  auto yv = [&](int e) { return Poly::variable(vs, nf + e); };

  std::vector<Poly> s_poly(nf, Poly(vs));
  for (int i = 0; i < nf; ++i)
    for (int g = 0; g < nf; ++g)
      if (lat.leq(i, g)) s_poly[i] += xv(g);
  auto h_poly = [&](int i) { return -s_poly[i]; };

  Poly i1(vs);
  for (int i = 0; i < nf; ++i) i1 += xv(i);
  auto i2 = [&](int e) {
    Poly rel(vs);
    if (fl == Flavor::Aug) rel += yv(e);
    for (int i = 0; i < nf; ++i)
      if (!(lat.flat(i) & (Mask(1) << e))) {
        if (fl == Flavor::Aug)
          rel -= xv(i);
        else
          rel += xv(i);
      }
    return rel;
  };

  auto corank = [&](int i) { return m.rank() - lat.rank_of_flat(i); };

  // z term multiset for an incomparable pair, keyed by normalized index
  // pairs; and its defining identity.
  auto z_terms = [&](int i, int j) {
    int v = lat.join(i, j);
    std::map<std::pair<int, int>, Int> t;
    for (int fi = 0; fi < nf; ++fi) {
      if (!lat.leq(i, fi) || lat.leq(v, fi)) continue;
      for (int gj = 0; gj < nf; ++gj) {
        if (!lat.leq(j, gj) || lat.leq(v, gj)) continue;
        t[{std::min(fi, gj), std::max(fi, gj)}] += 1;
      }
    }
    return t;
  };
  auto pairs_to_poly = [&](const std::map<std::pair<int, int>, Int>& t) {
    Poly p(vs);
    for (const auto& [ij, c] : t) {
      Expo e(vs->size(), 0);
      e[ij.first] += 1;
      e[ij.second] += 1;
      p += Poly::monomial(vs, e) * c;
    }
    return p;
  };

  for (int i = 1; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j) {
      if (lat.comparable(i, j)) continue;
      int v = lat.join(i, j);
      Poly lhs = pairs_to_poly(z_terms(i, j));
      Poly rhs = Poly::mul(h_poly(i) - h_poly(v), h_poly(j) - h_poly(v));
      if (!(lhs == rhs)) return false;
    }

  // Elimination: rewrite x_i x_j to zero against the z's.
  for (int i0 = 1; i0 < nf; ++i0)
    for (int j0 = i0 + 1; j0 < nf; ++j0) {
      if (lat.comparable(i0, j0)) continue;
      std::map<std::pair<int, int>, Int> work;
      work[{i0, j0}] = 1;
      int guard = 0;
      while (!work.empty()) {
        check(++guard <= 100000, ErrorCode::InternalError,
              "monomial elimination failed to terminate");
        auto best = work.begin();
        long bs = -1;
        for (auto it = work.begin(); it != work.end(); ++it) {
          long cs = corank(it->first.first) + corank(it->first.second);
          if (cs > bs) {
            bs = cs;
            best = it;
          }
        }
        auto [ij, c] = *best;
        check(!lat.comparable(ij.first, ij.second), ErrorCode::InternalError,
              "comparable term appeared during elimination");
        for (const auto& [kl, zc] : z_terms(ij.first, ij.second)) {
          auto it = work.emplace(kl, 0).first;
          it->second -= c * zc;
          if (it->second == 0) work.erase(it);
        }
      }
    }

  if (fl != Flavor::Aug) return true;

  for (int e = 0; e < ne; ++e) {
    int cle = lat.require_index(m.closure_of(Mask(1) << e));
    // y_e - h_{cl(e)} = I1 + I2(e)
    if (!(yv(e) - h_poly(cle) == i1 + i2(e))) return false;
    // w identity for every flat avoiding e
    for (int f = 0; f < nf; ++f) {
      if (lat.flat(f) & (Mask(1) << e)) continue;
      Poly w(vs);
      for (int g = 0; g < nf; ++g)
        if (lat.leq(f, g) && !(lat.flat(g) & (Mask(1) << e))) {
          Expo ex(vs->size(), 0);
          ex[g] += 1;
          ex[nf + e] += 1;
          w += Poly::monomial(vs, ex);
        }
      int v = lat.join(f, cle);
      if (!(w == Poly::mul(yv(e), h_poly(v) - h_poly(f)))) return false;
    }
    // elimination of y_e x_F for nonempty F avoiding e, against the w's
    for (int f0 = 1; f0 < nf; ++f0) {
      if (lat.flat(f0) & (Mask(1) << e)) continue;
      std::map<int, Int> work;
      work[f0] = 1;
      int guard = 0;
      while (!work.empty()) {
        check(++guard <= 100000, ErrorCode::InternalError,
              "element elimination failed to terminate");
        auto best = work.begin();
        long bs = -1;
        for (auto it = work.begin(); it != work.end(); ++it)
          if (corank(it->first) > bs) {
            bs = corank(it->first);
            best = it;
          }
        auto [f, c] = *best;
        for (int g = 0; g < nf; ++g)
          if (lat.leq(f, g) && !(lat.flat(g) & (Mask(1) << e))) {
            auto it = work.emplace(g, 0).first;
            it->second -= c;
            if (it->second == 0) work.erase(it);
          }
      }
    }
    // the empty-flat case as an explicit combination
    Poly lhs(vs);
    {
      Expo ex(vs->size(), 0);
      ex[0] += 1;  // lattice index 0 is the empty flat
      ex[nf + e] += 1;
      lhs = Poly::monomial(vs, ex);
    }
    Poly rhs = Poly::mul(yv(e), yv(e)) - Poly::mul(yv(e), i2(e));
    for (int f = 1; f < nf; ++f)
      if (!(lat.flat(f) & (Mask(1) << e))) {
        Expo ex(vs->size(), 0);
        ex[f] += 1;
        ex[nf + e] += 1;
        rhs -= Poly::monomial(vs, ex);
      }
    if (!(lhs == rhs)) return false;
  }
  return true;
}

}  // namespace mkr
