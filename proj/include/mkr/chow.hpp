#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mkr/eval.hpp"
#include "mkr/matroid.hpp"
#include "mkr/quotient.hpp"

namespace mkr {

// Plain rings present the wonderful compactification, augmented rings its
// augmented cousin (one extra generator y_e per ground-set element and
// top degree r instead of r-1).
enum class Flavor { Plain, Aug };

inline const char* flavor_name(Flavor f) {
  return f == Flavor::Plain ? "plain" : "aug";
}

// Multi-index of flats with positive multiplicities, kept sorted by the
// flat's bitmask. This is the index type shared by the combinatorial
// degree/Euler formulas, the Snapper polynomials and the chain-monomial
// enumerations.
struct FlatMultiIndex {
  std::vector<std::pair<Mask, long>> entries;

  static FlatMultiIndex make(const std::vector<std::pair<Mask, long>>& raw) {
    std::map<Mask, long> acc;
    for (const auto& [m, k] : raw) {
      check(k >= 0, ErrorCode::InvalidParameters, "negative multiplicity");
      if (k > 0) acc[m] += k;
    }
    FlatMultiIndex mi;
    for (const auto& [m, k] : acc) mi.entries.emplace_back(m, k);
    return mi;
  }

  long total() const {
    long t = 0;
    for (const auto& [m, k] : entries) t += k;
    return t;
  }

  long at(Mask f) const {
    for (const auto& [m, k] : entries)
      if (m == f) return k;
    return 0;
  }

  bool empty() const { return entries.empty(); }

  bool operator==(const FlatMultiIndex& o) const { return entries == o.entries; }
  bool operator!=(const FlatMultiIndex& o) const { return !(*this == o); }
  bool operator<(const FlatMultiIndex& o) const { return entries < o.entries; }

  std::string to_string() const {
    if (entries.empty()) return "1";
    std::string s;
    for (const auto& [m, k] : entries) {
      if (!s.empty()) s += "*";
      s += mask_to_string(m);
      if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
  }
};

// The Hall-Rado rank test: every sub-multi-index m' <= m must satisfy
// rank(union of supp m') >= sum m' (strictly, for the dragon variant).
// For a fixed support the binding case is full multiplicity, so it is
// enough to range over the nonempty subsets of supp(m); the empty
// sub-index is excluded (the strict variant would fail 0 > 0 vacuously).
inline bool rado_holds(const Matroid& m, const FlatMultiIndex& mi, bool strict) {
  for (const auto& [f, k] : mi.entries) {
    check(f != 0, ErrorCode::InvalidParameters,
          "multi-index over nonempty flats required");
    check(m.is_flat(f), ErrorCode::NotAFlat, mask_to_string(f) + " is not a flat");
    (void)k;
  }
  int s = static_cast<int>(mi.entries.size());
  check(s <= 24, ErrorCode::CombinatorialExplosion, "multi-index support too large");
  for (Mask t = 1; t < (Mask(1) << s); ++t) {
    Mask un = 0;
    long tot = 0;
    for (int i = 0; i < s; ++i)
      if (t & (Mask(1) << i)) {
        un |= mi.entries[i].first;
        tot += mi.entries[i].second;
      }
    long rk = m.rank_of(un);
    if (strict ? rk <= tot : rk < tot) return false;
  }
  return true;
}

inline bool dragon_hall_rado(const Matroid& m, const FlatMultiIndex& mi) {
  return rado_holds(m, mi, true);
}
inline bool hall_rado(const Matroid& m, const FlatMultiIndex& mi) {
  return rado_holds(m, mi, false);
}

// Degree of the simplicial monomial h^m by the combinatorial 0/1 formula.
// Plain flavor: total degree r-1, dragon Hall-Rado. Augmented: total
// degree r, plain Hall-Rado.
inline Int degree_simplicial(const Matroid& m, const FlatMultiIndex& mi, Flavor fl) {
  long need = fl == Flavor::Plain ? m.rank() - 1 : m.rank();
  check(mi.total() == need, ErrorCode::WrongTotalDegree,
        "h-monomial degree " + std::to_string(mi.total()) + ", expected " +
            std::to_string(need));
  return rado_holds(m, mi, fl == Flavor::Plain) ? 1 : 0;
}

// Euler characteristic of the simplicial monomial eta^m by the same
// conditions, with no degree restriction.
inline Int euler_simplicial(const Matroid& m, const FlatMultiIndex& mi, Flavor fl) {
  return rado_holds(m, mi, fl == Flavor::Plain) ? 1 : 0;
}

// Shared FY admissibility: the flat-variable support must be a chain, and
// (augmented) every y_e in the support requires e to lie in every support
// flat. Divisors of admissible monomials stay admissible, which is what
// makes prefiltering by this test exact.
inline MonomialFilter fy_admissible_filter(std::shared_ptr<const FlatLattice> lat,
                                           int nf, int ne) {
  return [lat, nf, ne](const Expo& ex) {
    int sup[20];
    int k = 0;
    for (int i = 0; i < nf; ++i)
      if (ex[i]) {
        if (k == 20) return false;  // degree beyond any truncation used here
        sup[k++] = i;
      }
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (!lat->comparable(sup[a], sup[b])) return false;
    for (int e = 0; e < ne; ++e)
      if (ex[nf + e]) {
        Mask bit = Mask(1) << e;
        for (int a = 0; a < k; ++a)
          if (!(lat->flat(sup[a]) & bit)) return false;
      }
    return true;
  };
}

// The Chow ring of a loopless matroid in its flat-generator presentation:
// one variable x_F per flat (both the empty flat and the full ground set
// included), plus one y_e per element in the augmented flavor. Relations:
//   sum_F x_F                        (one generator)
//   sum_{F not containing e} x_F     (plain, per element)
//   y_e - sum_{F not containing e} x_F  (augmented, per element)
// together with the monomial ideal handled by the admissibility filter:
// products of incomparable flat variables vanish, y_e x_F vanishes when
// e is outside F (augmented), and everything beyond the truncation degree
// (r for plain, r+1 for augmented) vanishes.
class ChowRing {
 public:
  ChowRing(const Matroid& m, Flavor flavor, size_t monomial_cap = 500000)
      : m_(m), flavor_(flavor), lat_(std::make_shared<FlatLattice>(m)) {
    build(monomial_cap);
  }

  const Matroid& matroid() const { return m_; }
  Flavor flavor() const { return flavor_; }
  const FlatLattice& lattice() const { return *lat_; }
  std::shared_ptr<const FlatLattice> lattice_ptr() const { return lat_; }
  const QuotientRing& ring() const { return *q_; }
  std::shared_ptr<QuotientRing> ring_ptr() const { return q_; }

  int top_degree() const {
    return flavor_ == Flavor::Plain ? m_.rank() - 1 : m_.rank();
  }
  int rank() const { return q_->rank(); }

  RingElement zero() const { return q_->zero(); }
  RingElement one() const { return q_->one(); }

  // Class of the flat generator x_F.
  const RingElement& t_class(Mask f) const {
    int i = lat_->require_index(f);
    if (!t_cache_[i].ring)
      t_cache_[i] = q_->nf_poly(Poly::variable(q_->vars(), i));
    return t_cache_[i];
  }

  // Class of the element generator y_e (augmented flavor only).
  RingElement y_class(int e) const {
    check(flavor_ == Flavor::Aug, ErrorCode::InvalidParameters,
          "y classes exist only in the augmented ring");
    check(e >= 0 && e < m_.n(), ErrorCode::InvalidParameters,
          "element out of range");
    return q_->nf_poly(Poly::variable(q_->vars(), lat_->size() + e));
  }

  // Simplicial generator h_F = -(sum of t_G over flats G containing F),
  // for F a nonempty flat.
  const RingElement& h_class(Mask f) const {
    int i = lat_->require_index(f);
    check(f != 0, ErrorCode::InvalidParameters, "h classes are indexed by nonempty flats");
    if (!h_cache_[i].ring) {
      RingElement acc = q_->zero();
      for (int g = 0; g < lat_->size(); ++g)
        if (lat_->leq(i, g)) acc = q_->sub(acc, t_class(lat_->flat(g)));
      h_cache_[i] = acc;
    }
    return h_cache_[i];
  }

  RingElement h_monomial(const FlatMultiIndex& mi) const {
    RingElement acc = q_->one();
    for (const auto& [f, k] : mi.entries)
      for (long j = 0; j < k; ++j) acc = q_->mul(acc, h_class(f));
    return acc;
  }

  RingElement t_monomial(const FlatMultiIndex& mi) const {
    RingElement acc = q_->one();
    for (const auto& [f, k] : mi.entries)
      for (long j = 0; j < k; ++j) acc = q_->mul(acc, t_class(f));
    return acc;
  }

  // Degree map, normalized so that the point class h_E^{top} has degree 1.
  // For a class with mixed grading this reads off the top-degree component
  // (the ring is graded, so that component is intrinsic).
  Int degree(const RingElement& x) const {
    check(x.ring == q_.get(), ErrorCode::VarSetMismatch,
          "degree of an element from a different ring");
    return point_sign_ * x.coeff(point_pos_);
  }

  int point_basis_pos() const { return point_pos_; }
  const Int& point_sign() const { return point_sign_; }

  // Every complementary pairing A^j x A^{top-j} -> Z as a matrix of
  // degrees of products; all must be square and unimodular.
  bool poincare_unimodular() const {
    auto ranks = q_->graded_ranks();
    int top = top_degree();
    std::vector<std::vector<int>> by_degree(top + 1);
    for (int p = 0; p < q_->rank(); ++p) by_degree[q_->basis_degree(p)].push_back(p);
    for (int j = 0; j * 2 <= top; ++j) {
      const auto& lo = by_degree[j];
      const auto& hi = by_degree[top - j];
      if (lo.size() != hi.size()) return false;
      IMat p(static_cast<int>(lo.size()), static_cast<int>(hi.size()));
      for (size_t a = 0; a < lo.size(); ++a)
        for (size_t b = 0; b < hi.size(); ++b)
          p.a[a][b] = degree(q_->mul(q_->from_coords({{lo[a], 1}}),
                                     q_->from_coords({{hi[b], 1}})));
      Int d = det_bareiss(p);
      if (d != 1 && d != -1) return false;
    }
    (void)ranks;
    return true;
  }

 private:
  void build(size_t cap) {
    int r = m_.rank();
    check(r >= 1, ErrorCode::InvalidParameters, "rank zero matroid has no Chow ring here");
    int nf = lat_->size();
    int ne = flavor_ == Flavor::Aug ? m_.n() : 0;

    std::vector<Var> vars;
    vars.reserve(nf + ne);
    for (int i = 0; i < nf; ++i) vars.push_back(Var::flat(lat_->flat(i)));
    for (int e = 0; e < ne; ++e) vars.push_back(Var::element(e));
    auto vs = std::make_shared<const VarSet>(std::move(vars));

    QuotientSpec spec;
    spec.vars = vs;
    spec.trunc_degree = top_degree() + 1;
    spec.graded = true;
    spec.monomial_cap = cap;
    spec.admissible = fy_admissible_filter(lat_, nf, ne);

    Poly i1(vs);
    for (int i = 0; i < nf; ++i) i1 += Poly::variable(vs, i);
    spec.relations.push_back(i1);
    for (int e = 0; e < m_.n(); ++e) {
      Poly rel(vs);
      if (flavor_ == Flavor::Aug) rel += Poly::variable(vs, nf + e);
      for (int i = 0; i < nf; ++i)
        if (!(lat_->flat(i) & (Mask(1) << e))) {
          Poly xv = Poly::variable(vs, i);
          if (flavor_ == Flavor::Aug)
            rel -= xv;
          else
            rel += xv;
        }
      spec.relations.push_back(rel);
    }

    q_ = QuotientRing::build(std::move(spec));
    t_cache_.assign(nf, RingElement{});
    h_cache_.assign(nf, RingElement{});

    // Locate the point class and its sign: the top graded piece must be
    // rank one and h_E^{top} must hit its basis monomial with coefficient
    // +-1 (this is the Poincare-duality normalization; anything else means
    // the presentation went wrong).
    auto ranks = q_->graded_ranks();
    check(ranks[top_degree()] == 1, ErrorCode::InternalError,
          "top graded piece has rank " + std::to_string(ranks[top_degree()]));
    point_pos_ = -1;
    for (int p = 0; p < q_->rank(); ++p)
      if (q_->basis_degree(p) == top_degree()) point_pos_ = p;
    RingElement pt = top_degree() == 0 ? q_->one()
                                       : q_->pow(h_class(m_.ground()), top_degree());
    check(static_cast<int>(pt.coords.size()) == 1 && pt.coords[0].first == point_pos_,
          ErrorCode::InternalError, "h_E^top is not supported on the top basis monomial");
    point_sign_ = pt.coords[0].second;
    check(point_sign_ == 1 || point_sign_ == -1, ErrorCode::InternalError,
          "h_E^top has non-unit coefficient " + point_sign_.get_str());
  }

  Matroid m_;
  Flavor flavor_;
  std::shared_ptr<const FlatLattice> lat_;
  std::shared_ptr<QuotientRing> q_;
  mutable std::vector<RingElement> t_cache_, h_cache_;
  int point_pos_ = -1;
  Int point_sign_ = 0;
};

// Pullback A(U_E) -> A(M) along the inclusion of wonderful models: on
// generators x_S -> x_S when S is a flat of M and 0 otherwise, y_e -> y_e.
// The linear relations of the Boolean presentation visibly map into the
// relations of M (certified numerically at construction).
class ChowRestriction {
 public:
  ChowRestriction(const ChowRing& src, const ChowRing& dst)
      : subst_(build(src, dst)) {
    check(subst_.relations_vanish(), ErrorCode::InternalError,
          "restriction does not kill the Boolean Chow relations");
  }

  RingElement apply(const RingElement& x) const { return subst_.apply(x); }
  IMat matrix() const { return subst_.matrix(); }

 private:
  static SubstMap build(const ChowRing& src, const ChowRing& dst) {
    const Matroid& bm = src.matroid();
    check(bm.rank() == bm.n(), ErrorCode::InvalidParameters,
          "restriction source must be a Boolean matroid");
    check(bm.n() == dst.matroid().n(), ErrorCode::GroundSetMismatch,
          "ground set sizes differ");
    check(src.flavor() == dst.flavor(), ErrorCode::InvalidParameters,
          "flavors differ");
    std::vector<RingElement> images;
    int nf = src.lattice().size();
    for (int i = 0; i < nf; ++i) {
      Mask s = src.lattice().flat(i);
      images.push_back(dst.matroid().is_flat(s) ? dst.t_class(s) : dst.zero());
    }
    if (src.flavor() == Flavor::Aug)
      for (int e = 0; e < bm.n(); ++e) images.push_back(dst.y_class(e));
    return SubstMap(src.ring_ptr(), dst.ring_ptr(), std::move(images));
  }

  SubstMap subst_;
};

// The Bergman class Delta_M in A(U_E): the unique class with
// deg_M(restrict(xi)) = deg_{U_E}(xi * Delta_M) for every xi. Solved from
// the full (unimodular) degree pairing of the Boolean ring and re-checked
// on every basis element.
inline RingElement bergman_class(const ChowRing& boolean_ring, const ChowRing& target,
                                 const ChowRestriction& res) {
  const QuotientRing& q = boolean_ring.ring();
  int n = q.rank();
  IMat pairing(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pairing.a[i][j] = boolean_ring.degree(
          q.mul(q.from_coords({{i, 1}}), q.from_coords({{j, 1}})));
  std::vector<Int> d(n);
  for (int i = 0; i < n; ++i)
    d[i] = target.degree(res.apply(q.from_coords({{i, 1}})));
  std::vector<Int> c = solve_unimodular(pairing, d);
  std::vector<std::pair<int, Int>> coords;
  for (int j = 0; j < n; ++j)
    if (c[j] != 0) coords.emplace_back(j, c[j]);
  RingElement delta = q.from_coords(std::move(coords));
  for (int i = 0; i < n; ++i)
    check(boolean_ring.degree(q.mul(q.from_coords({{i, 1}}), delta)) == d[i],
          ErrorCode::InternalError, "Bergman class fails its defining property");
  return delta;
}

}  // namespace mkr
