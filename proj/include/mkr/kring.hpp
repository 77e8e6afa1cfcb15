#pragma once

// Grothendieck rings of loopless matroids in the flat-generator
// presentation, the exceptional isomorphism onto the Chow ring, Euler
// characteristics, Adams operations and duality, the canonical-type class
// omega with Serre-style symmetry checks, and restriction from the ambient
// Boolean ring (structure sheaf classes, projection formula).

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mkr/chow.hpp"
#include "mkr/eval.hpp"
#include "mkr/hnf.hpp"

namespace mkr {

// --------------------------------------------------------------------------
// Small dense linear-algebra helpers over Int, shared by the routines here.

inline std::vector<Int> mat_times_dense(const IMat& m, const std::vector<Int>& v) {
  check(static_cast<int>(v.size()) == m.cols, ErrorCode::InvalidParameters,
        "matrix/vector size mismatch");
  std::vector<Int> out(m.rows, 0);
  for (int j = 0; j < m.cols; ++j) {
    if (v[j] == 0) continue;
    for (int i = 0; i < m.rows; ++i)
      if (m.a[i][j] != 0) out[i] += m.a[i][j] * v[j];
  }
  return out;
}

inline std::vector<Int> row_times_mat(const std::vector<Int>& r, const IMat& m) {
  check(static_cast<int>(r.size()) == m.rows, ErrorCode::InvalidParameters,
        "vector/matrix size mismatch");
  std::vector<Int> out(m.cols, 0);
  for (int i = 0; i < m.rows; ++i) {
    if (r[i] == 0) continue;
    for (int j = 0; j < m.cols; ++j)
      if (m.a[i][j] != 0) out[j] += r[i] * m.a[i][j];
  }
  return out;
}

// Matrix of multiplication by w acting on the ring's basis.
inline IMat mult_matrix(const QuotientRing& q, const RingElement& w) {
  IMat m(q.rank(), q.rank());
  for (int j = 0; j < q.rank(); ++j) {
    RingElement col = q.mul(w, q.from_coords({{j, 1}}));
    for (const auto& [p, c] : col.coords) m.a[p][j] = c;
  }
  return m;
}

// --------------------------------------------------------------------------
// The Grothendieck ring of a loopless matroid, presented on the same
// variables as the Chow ring (one x_F per flat, one y_e per element in the
// augmented flavor) but with the multiplicative relations
//   1 - prod_F (1 - x_F)                                  (one generator)
//   prod_{F not containing e} (1 - x_F) - 1               (plain, per e)
//   prod_{F not containing e} (1 - x_F) - 1 + y_e         (augmented, per e)
// together with the same monomial ideal as the Chow ring (incomparable
// products, y_e x_F for e outside F, truncation). The ring is filtered, not
// graded; the basis is the same admissible-monomial set.
class KRing {
 public:
  KRing(const Matroid& m, Flavor flavor, size_t monomial_cap = 500000)
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
  const RingElement& tau(Mask f) const {
    int i = lat_->require_index(f);
    if (!tau_cache_[i].ring)
      tau_cache_[i] = q_->nf_poly(Poly::variable(q_->vars(), i));
    return tau_cache_[i];
  }

  // Class of the element generator y_e (augmented flavor only).
  RingElement ups(int e) const {
    check(flavor_ == Flavor::Aug, ErrorCode::InvalidParameters,
          "y classes exist only in the augmented ring");
    check(e >= 0 && e < m_.n(), ErrorCode::InvalidParameters,
          "element out of range");
    return q_->nf_poly(Poly::variable(q_->vars(), lat_->size() + e));
  }

  // Multiplicative analogue of the simplicial generator:
  //   eta_F = 1 - prod_{G >= F} (1 - tau_G)^{-1},   F a nonempty flat.
  const RingElement& eta(Mask f) const {
    int i = lat_->require_index(f);
    check(f != 0, ErrorCode::InvalidParameters,
          "eta classes are indexed by nonempty flats");
    if (!eta_cache_[i].ring) {
      RingElement prod = q_->one();
      for (int g = 0; g < lat_->size(); ++g)
        if (lat_->leq(i, g))
          prod = q_->mul(prod, q_->sub(q_->one(), tau(lat_->flat(g))));
      eta_cache_[i] = q_->sub(q_->one(), q_->unit_inverse(prod));
    }
    return eta_cache_[i];
  }

  RingElement eta_monomial(const FlatMultiIndex& mi) const {
    RingElement acc = q_->one();
    for (const auto& [f, k] : mi.entries)
      for (long j = 0; j < k; ++j) acc = q_->mul(acc, eta(f));
    return acc;
  }

  RingElement tau_monomial(const FlatMultiIndex& mi) const {
    RingElement acc = q_->one();
    for (const auto& [f, k] : mi.entries)
      for (long j = 0; j < k; ++j) acc = q_->mul(acc, tau(f));
    return acc;
  }

  // Class of the line bundle O(sum_F a_F D_F): each flat divisor enters as
  // [O(D_F)] = (1 - tau_F)^{-1}, so the assignment a contributes
  // prod_F (1 - tau_F)^{-a_F}. Exponents may be any integers.
  RingElement line_bundle(const std::vector<std::pair<Mask, Int>>& a) const {
    RingElement acc = q_->one();
    for (const auto& [f, e] : a) {
      check(e.fits_slong_p(), ErrorCode::InvalidParameters,
            "line bundle exponent out of range");
      acc = q_->mul(acc, q_->int_pow(q_->sub(q_->one(), tau(f)), -e.get_si()));
    }
    return acc;
  }

 private:
  void build(size_t cap) {
    int r = m_.rank();
    check(r >= 1, ErrorCode::InvalidParameters,
          "rank zero matroid has no Grothendieck ring here");
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
    spec.graded = false;
    spec.monomial_cap = cap;
    spec.admissible = fy_admissible_filter(lat_, nf, ne);

    // Build the product relations with the admissibility filter applied
    // term by term: the dropped terms are multiples of monomials that are
    // themselves relations, so the row space is unchanged.
    const MonomialFilter filt = spec.admissible;
    const int tr = spec.trunc_degree;
    Poly one_p = Poly::constant(vs, 1);

    Poly all = one_p;
    for (int i = 0; i < nf; ++i)
      all = Poly::mul(all, one_p - Poly::variable(vs, i), tr, &filt);
    spec.relations.push_back(one_p - all);

    for (int e = 0; e < m_.n(); ++e) {
      Poly prod = one_p;
      for (int i = 0; i < nf; ++i)
        if (!(lat_->flat(i) & (Mask(1) << e)))
          prod = Poly::mul(prod, one_p - Poly::variable(vs, i), tr, &filt);
      Poly rel = prod - one_p;
      if (flavor_ == Flavor::Aug) rel += Poly::variable(vs, nf + e);
      spec.relations.push_back(rel);
    }

    q_ = QuotientRing::build(std::move(spec));
    tau_cache_.assign(nf, RingElement{});
    eta_cache_.assign(nf, RingElement{});
  }

  Matroid m_;
  Flavor flavor_;
  std::shared_ptr<const FlatLattice> lat_;
  std::shared_ptr<QuotientRing> q_;
  mutable std::vector<RingElement> tau_cache_, eta_cache_;
};

// --------------------------------------------------------------------------
// The exceptional isomorphism zeta : K -> A, pinned down by
//   zeta(eta_{F_1} ... eta_{F_k}) = h_{F_1} ... h_{F_k}
// over all chains of nonempty flats. The constructor enumerates every
// chain-supported monomial up to the top filtration degree, row-reduces the
// pairs (coords of eta^m | coords of h^m) over Z, and demands that they
// define a full-rank, single-valued, unimodular correspondence. Every pair
// fed in is re-audited against the extracted matrix.
struct ZetaMap {
  IMat fwd;                // column j = Chow coordinates of zeta(K basis j)
  Int det = 0;             // determinant, must be +-1
  size_t pairs_audited = 0;

  ZetaMap() : fwd(0, 0) {}

  const IMat& inverse() const {
    if (!inv_) inv_ = inverse_unimodular(fwd);
    return *inv_;
  }

 private:
  mutable std::optional<IMat> inv_;
};

inline ZetaMap build_zeta(const ChowRing& a, const KRing& k) {
  check(a.matroid() == k.matroid() && a.flavor() == k.flavor(),
        ErrorCode::InvalidParameters,
        "exceptional isomorphism needs both rings of one matroid and flavor");
  check(a.rank() == k.rank(), ErrorCode::RankMismatch,
        "free ranks differ: Chow " + std::to_string(a.rank()) + ", K " +
            std::to_string(k.rank()));
  const int n = a.rank();
  const FlatLattice& lat = a.lattice();
  const QuotientRing& qa = a.ring();
  const QuotientRing& qk = k.ring();

  std::vector<std::pair<RingElement, RingElement>> pairs;  // (K side, A side)
  pairs.emplace_back(k.one(), a.one());
  // Chains of nonempty flats in lattice order (ranks increase along the
  // order, so supersets always come later); total multiplicity up to the
  // top filtration degree.
  std::function<void(int, int, const RingElement&, const RingElement&)> extend =
      [&](int last, int budget, const RingElement& ke, const RingElement& ae) {
        for (int g = std::max(last + 1, 1); g < lat.size(); ++g) {
          if (last >= 1 && !lat.leq(last, g)) continue;
          RingElement ke2 = ke, ae2 = ae;
          for (int mult = 1; mult <= budget; ++mult) {
            ke2 = qk.mul(ke2, k.eta(lat.flat(g)));
            ae2 = qa.mul(ae2, a.h_class(lat.flat(g)));
            pairs.emplace_back(ke2, ae2);
            extend(g, budget - mult, ke2, ae2);
          }
        }
      };
  extend(0, a.top_degree(), k.one(), a.one());

  RowReducer red;
  for (const auto& [ke, ae] : pairs) {
    SparseRow row;
    row.reserve(ke.coords.size() + ae.coords.size());
    for (const auto& [p, c] : ke.coords) row.emplace_back(p, c);
    for (const auto& [p, c] : ae.coords) row.emplace_back(n + p, c);
    red.add_row(std::move(row));
  }

  for (int col : red.pivot_cols())
    check(col < n, ErrorCode::InconsistentPairs,
          "two chain monomials with equal K class but different Chow class");
  check(red.rank() == n, ErrorCode::SpanDeficit,
        "chain monomials span only rank " + std::to_string(red.rank()) +
            " of " + std::to_string(n));
  check(red.all_pivots_unit(), ErrorCode::SpanDeficit,
        "chain monomials span a finite-index subgroup of the K lattice");

  red.back_reduce();
  ZetaMap z;
  z.fwd = IMat(n, n);
  for (int j = 0; j < n; ++j) {
    const SparseRow& row = red.pivot_row(j);
    for (const auto& [col, c] : row) {
      if (col == j) continue;
      check(col >= n, ErrorCode::InternalError, "reduced row not in graph form");
      z.fwd.a[col - n][j] = c;
    }
  }
  z.det = det_bareiss(z.fwd);
  check(z.det == 1 || z.det == -1, ErrorCode::TorsionDetected,
        "exceptional map has determinant " + z.det.get_str() +
            "; its cokernel is not free");

  // Audit every pair against the extracted matrix.
  for (const auto& [ke, ae] : pairs) {
    std::vector<Int> kv = qk.dense_coords(ke);
    std::vector<Int> av = qa.dense_coords(ae);
    check(mat_times_dense(z.fwd, kv) == av, ErrorCode::InternalError,
          "extracted matrix fails to reproduce a defining pair");
  }
  z.pairs_audited = pairs.size();
  return z;
}

// --------------------------------------------------------------------------
// Certificate that a substitution pattern on the flat-generator variables
// respects the multiplicative relations. The monomial relations hold
// automatically for every pattern used in this library: each image of x_F
// is either zero or a multiple of the target's own tau class of the same
// flat (and likewise for y_e), so products of incomparable generators land
// on products that already vanish in the target. What remains to check are
// the product identities, evaluated directly on the images:
//   prod over all source flats of (1 - img_F) == 1
//   per element e: prod over source flats not containing e of (1 - img_F)
//                  == 1 (plain) or 1 - img_{y_e} (augmented)
inline void certify_k_images(const FlatLattice& src_lat, Flavor flavor,
                             int n_elems, const QuotientRing& dst,
                             const std::vector<RingElement>& images) {
  int nf = src_lat.size();
  check(static_cast<int>(images.size()) ==
            nf + (flavor == Flavor::Aug ? n_elems : 0),
        ErrorCode::InvalidParameters, "one image per source generator");
  RingElement all = dst.one();
  for (int i = 0; i < nf; ++i)
    all = dst.mul(all, dst.sub(dst.one(), images[i]));
  check(all == dst.one(), ErrorCode::InternalError,
        "substitution breaks the global product relation");
  for (int e = 0; e < n_elems; ++e) {
    RingElement prod = dst.one();
    for (int i = 0; i < nf; ++i)
      if (!(src_lat.flat(i) & (Mask(1) << e)))
        prod = dst.mul(prod, dst.sub(dst.one(), images[i]));
    RingElement want = flavor == Flavor::Aug
                           ? dst.sub(dst.one(), images[nf + e])
                           : dst.one();
    check(prod == want, ErrorCode::InternalError,
          "substitution breaks the product relation of element " +
              std::to_string(e));
  }
}

// --------------------------------------------------------------------------
// A matroid's Chow and Grothendieck rings tied together by the exceptional
// isomorphism. Provides Euler characteristics (via the degree map and the
// inverse Todd-style correction), Adams operations, duality, the rank
// functional epsilon, and lambda operations.
class KContext {
 public:
  KContext(const Matroid& m, Flavor flavor, size_t monomial_cap = 500000)
      : KContext(std::make_shared<ChowRing>(m, flavor, monomial_cap),
                 std::make_shared<KRing>(m, flavor, monomial_cap)) {}

  KContext(std::shared_ptr<ChowRing> a, std::shared_ptr<KRing> k)
      : chow_(std::move(a)), k_(std::move(k)), zeta_(build_zeta(*chow_, *k_)) {
    const QuotientRing& qa = chow_->ring();
    todd_inv_ = qa.unit_inverse(
        qa.sub(chow_->one(), chow_->h_class(chow_->matroid().ground())));
    // chi is a linear functional; precompose degree(- * todd) with zeta.
    const int n = rank();
    std::vector<Int> deg_todd(n);
    for (int i = 0; i < n; ++i)
      deg_todd[i] = chow_->degree(qa.mul(qa.from_coords({{i, 1}}), todd_inv_));
    chi_row_ = row_times_mat(deg_todd, zeta_.fwd);
  }

  const ChowRing& chow() const { return *chow_; }
  const KRing& kring() const { return *k_; }
  std::shared_ptr<ChowRing> chow_ptr() const { return chow_; }
  std::shared_ptr<KRing> kring_ptr() const { return k_; }
  const ZetaMap& zeta() const { return zeta_; }
  Flavor flavor() const { return k_->flavor(); }
  const Matroid& matroid() const { return k_->matroid(); }
  int rank() const { return k_->rank(); }
  const RingElement& todd_inverse() const { return todd_inv_; }
  const std::vector<Int>& chi_row() const { return chi_row_; }

  RingElement zeta_apply(const RingElement& kx) const {
    check(kx.ring == k_->ring_ptr().get(), ErrorCode::VarSetMismatch,
          "element is not in this K ring");
    std::vector<Int> acc(rank(), 0);
    for (const auto& [p, c] : kx.coords)
      for (int i = 0; i < rank(); ++i)
        if (zeta_.fwd.a[i][p] != 0) acc[i] += c * zeta_.fwd.a[i][p];
    return from_dense(chow_->ring(), acc);
  }

  RingElement zeta_inv_apply(const RingElement& ax) const {
    check(ax.ring == chow_->ring_ptr().get(), ErrorCode::VarSetMismatch,
          "element is not in this Chow ring");
    const IMat& inv = zeta_.inverse();
    std::vector<Int> acc(rank(), 0);
    for (const auto& [p, c] : ax.coords)
      for (int i = 0; i < rank(); ++i)
        if (inv.a[i][p] != 0) acc[i] += c * inv.a[i][p];
    return from_dense(k_->ring(), acc);
  }

  // Euler characteristic chi(xi) = deg(zeta(xi) * (1 - h_E)^{-1}).
  Int euler(const RingElement& kx) const {
    check(kx.ring == k_->ring_ptr().get(), ErrorCode::VarSetMismatch,
          "element is not in this K ring");
    Int s = 0;
    for (const auto& [p, c] : kx.coords) s += c * chi_row_[p];
    return s;
  }

  // Same value computed through the ring operations; used to cross-check
  // the linear-functional shortcut.
  Int euler_direct(const RingElement& kx) const {
    return chow_->degree(chow_->ring().mul(zeta_apply(kx), todd_inv_));
  }

  Int chi_eta(const FlatMultiIndex& mi) const {
    return euler(k_->eta_monomial(mi));
  }

  // Adams operation psi^t as a matrix on the K basis: every generator g
  // (each of the form 1 - [line bundle]) maps to 1 - (1 - g)^t.
  const IMat& adams(long t) const {
    check(t >= 1, ErrorCode::InvalidParameters,
          "Adams operations here are indexed by positive integers");
    auto it = adams_.find(t);
    if (it != adams_.end()) return it->second;
    const QuotientRing& q = k_->ring();
    std::vector<RingElement> images = generator_images([&](const RingElement& g) {
      return q.sub(q.one(), q.pow(q.sub(q.one(), g), static_cast<int>(t)));
    });
    certify_k_images(k_->lattice(), k_->flavor(), k_->matroid().n(), q, images);
    SubstMap s(k_->ring_ptr(), k_->ring_ptr(), images);
    return adams_.emplace(t, s.matrix()).first->second;
  }

  // Duality xi -> xi^vee: every generator maps to 1 - (1 - g)^{-1}.
  const IMat& duality() const {
    if (dual_) return *dual_;
    const QuotientRing& q = k_->ring();
    std::vector<RingElement> images = generator_images([&](const RingElement& g) {
      return q.sub(q.one(), q.unit_inverse(q.sub(q.one(), g)));
    });
    certify_k_images(k_->lattice(), k_->flavor(), k_->matroid().n(), q, images);
    SubstMap s(k_->ring_ptr(), k_->ring_ptr(), images);
    dual_ = s.matrix();
    return *dual_;
  }

  RingElement apply(const IMat& m, const RingElement& kx) const {
    check(kx.ring == k_->ring_ptr().get(), ErrorCode::VarSetMismatch,
          "element is not in this K ring");
    check(m.rows == rank() && m.cols == rank(), ErrorCode::InvalidParameters,
          "operator matrix has the wrong shape");
    std::vector<Int> acc(rank(), 0);
    for (const auto& [p, c] : kx.coords)
      for (int i = 0; i < rank(); ++i)
        if (m.a[i][p] != 0) acc[i] += c * m.a[i][p];
    return from_dense(k_->ring(), acc);
  }

  // Rank functional: the coefficient of 1 in the basis expansion.
  Int epsilon(const RingElement& kx) const {
    check(kx.ring == k_->ring_ptr().get(), ErrorCode::VarSetMismatch,
          "element is not in this K ring");
    return kx.coeff(k_->ring().one_position());
  }

  // Lambda operations via the Newton recurrence
  //   t * lambda^t(xi) = sum_{i=1}^{t} (-1)^{i-1} psi^i(xi) lambda^{t-i}(xi).
  // Division by t must be exact in every coordinate.
  RingElement lambda(int t, const RingElement& xi) const {
    check(t >= 0, ErrorCode::InvalidParameters, "negative lambda index");
    const QuotientRing& q = k_->ring();
    std::vector<RingElement> lam{q.one()};
    std::vector<RingElement> psi{q.zero()};  // psi[i] = psi^i(xi), i >= 1
    for (int i = 1; i <= t; ++i) psi.push_back(i == 1 ? xi : apply(adams(i), xi));
    for (int j = 1; j <= t; ++j) {
      RingElement acc = q.zero();
      for (int i = 1; i <= j; ++i) {
        RingElement term = q.mul(psi[i], lam[j - i]);
        acc = (i % 2 == 1) ? q.add(acc, term) : q.sub(acc, term);
      }
      RingElement next = q.zero();
      next.ring = acc.ring;
      for (auto& [p, c] : acc.coords) {
        check(c % j == 0, ErrorCode::NonIntegralLambda,
              "lambda^" + std::to_string(j) + " is not integral here");
        next.coords.emplace_back(p, c / j);
      }
      lam.push_back(std::move(next));
    }
    return lam[t];
  }

  static RingElement from_dense(const QuotientRing& q, const std::vector<Int>& v) {
    std::vector<std::pair<int, Int>> coords;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
      if (v[i] != 0) coords.emplace_back(i, v[i]);
    return q.from_coords(std::move(coords));
  }

 private:
  std::vector<RingElement> generator_images(
      const std::function<RingElement(const RingElement&)>& f) const {
    std::vector<RingElement> images;
    const FlatLattice& lat = k_->lattice();
    images.reserve(lat.size() + k_->matroid().n());
    for (int i = 0; i < lat.size(); ++i) images.push_back(f(k_->tau(lat.flat(i))));
    if (k_->flavor() == Flavor::Aug)
      for (int e = 0; e < k_->matroid().n(); ++e) images.push_back(f(k_->ups(e)));
    return images;
  }

  std::shared_ptr<ChowRing> chow_;
  std::shared_ptr<KRing> k_;
  ZetaMap zeta_;
  RingElement todd_inv_;
  std::vector<Int> chi_row_;
  mutable std::map<long, IMat> adams_;
  mutable std::optional<IMat> dual_;
};

// --------------------------------------------------------------------------
// Support numbers of the matroid polytope rays, read off from the dual
// matroid's rank function. Plain flavor: rays are indexed by proper
// nonempty subsets S with a_S = rk*(E \ S) - rk*(E) (base polytope of the
// dual, normalized to lattice level zero). Augmented flavor: rays are
// indexed by all proper subsets including the empty one, with
// a_S = rk*(E \ S), plus one ray per element with coefficient zero
// (independence polytope of the dual).
struct RayCoefficient {
  bool element_ray = false;
  Mask subset = 0;
  int element = -1;
  Int a = 0;
};

inline std::vector<RayCoefficient> polytope_coeffs(const Matroid& m, Flavor fl) {
  Matroid dual = m.dual();
  int rd = dual.rank();
  std::vector<RayCoefficient> out;
  Mask full = m.ground();
  for (Mask s = (fl == Flavor::Plain ? 1 : 0); s < full; ++s) {
    if (fl == Flavor::Plain && s == 0) continue;
    RayCoefficient rc;
    rc.subset = s;
    rc.a = Int(dual.rank_of(full & ~s));
    if (fl == Flavor::Plain) rc.a -= rd;
    out.push_back(rc);
  }
  if (fl == Flavor::Aug)
    for (int e = 0; e < m.n(); ++e) {
      RayCoefficient rc;
      rc.element_ray = true;
      rc.element = e;
      out.push_back(rc);
    }
  return out;
}

// The canonical-type class: the line-bundle class of the anticanonical-
// shifted boundary, assembled flat by flat. Only flat rays carry nonzero
// polytope coefficients here, because the coefficient of a non-flat ray
// equals that of its closure and those rays are absent from the fan.
//
// Plain flavor: omega = prod over proper nonempty flats F of
// (1 - tau_F)^{1 - a_F} times (1 - tau_E)^{corank(M)}. The last factor
// translates the dual base polytope from lattice level corank(M) down to
// the level-zero lattice of the projective fan, where sum_{S: f in S} t_S
// = -t_E turns a uniform translation into a power of (1 - tau_E).
//
// Augmented flavor: omega = prod over proper flats F (empty included) of
// (1 - tau_F)^{1 - a_F} times prod over elements e of (1 - ups_e); the
// element rays all carry coefficient 0, hence exponent 1 - 0 = 1, and no
// translation is needed.
inline RingElement omega_class(const KRing& k) {
  const Matroid& m = k.matroid();
  const FlatLattice& lat = k.lattice();
  const QuotientRing& q = k.ring();
  Matroid dual = m.dual();
  int rd = dual.rank();
  Mask full = m.ground();
  RingElement acc = q.one();
  for (int i = 0; i < lat.size(); ++i) {
    Mask f = lat.flat(i);
    if (f == full) continue;
    if (k.flavor() == Flavor::Plain && f == 0) continue;
    long a = dual.rank_of(full & ~f);
    if (k.flavor() == Flavor::Plain) a -= rd;
    long expn = 1 - a;
    acc = q.mul(acc, q.int_pow(q.sub(q.one(), k.tau(f)), expn));
  }
  if (k.flavor() == Flavor::Plain) {
    acc = q.mul(acc, q.int_pow(q.sub(q.one(), k.tau(full)), rd));
  } else {
    for (int e = 0; e < m.n(); ++e)
      acc = q.mul(acc, q.sub(q.one(), k.ups(e)));
  }
  return acc;
}

// --------------------------------------------------------------------------
// Serre-style duality report. For the plain flavor the identity
//   chi(xi) = (-1)^{rank-1} chi(omega * xi^vee)
// is expected to hold on the whole ring; the variant without omega is
// evaluated alongside it for comparison. For the augmented flavor both
// candidate identities (sign (-1)^{rank}) are evaluated and reported as
// found. The power symmetry chi(omega^l) = (-1)^{rank-1} chi(omega^{1-l})
// is evaluated for the plain flavor over l in [-2, 3].
struct SerreReport {
  Flavor flavor = Flavor::Plain;
  bool with_omega = false;
  bool without_omega = false;
  std::optional<bool> omega_power_symmetry;
};

inline SerreReport serre_check(const KContext& ctx) {
  const KRing& k = ctx.kring();
  const QuotientRing& q = k.ring();
  int r = ctx.matroid().rank();
  int sexp = ctx.flavor() == Flavor::Plain ? r - 1 : r;
  Int sign = sexp % 2 == 0 ? 1 : -1;

  RingElement omega = omega_class(k);
  const IMat& dual = ctx.duality();
  const std::vector<Int>& chi = ctx.chi_row();
  std::vector<Int> chi_omega = row_times_mat(chi, mult_matrix(q, omega));

  std::vector<Int> rhs_w = row_times_mat(chi_omega, dual);
  std::vector<Int> rhs_wo = row_times_mat(chi, dual);

  SerreReport rep;
  rep.flavor = ctx.flavor();
  rep.with_omega = true;
  rep.without_omega = true;
  for (int j = 0; j < ctx.rank(); ++j) {
    if (chi[j] != sign * rhs_w[j]) rep.with_omega = false;
    if (chi[j] != sign * rhs_wo[j]) rep.without_omega = false;
  }

  if (ctx.flavor() == Flavor::Plain) {
    bool sym = true;
    std::map<long, Int> f;
    for (long l = -2; l <= 3; ++l) f[l] = ctx.euler(q.int_pow(omega, l));
    for (long l = -2; l <= 3; ++l)
      if (f[l] != sign * f[1 - l]) sym = false;
    rep.omega_power_symmetry = sym;
  }
  return rep;
}

// --------------------------------------------------------------------------
// Restriction K(Boolean) -> K(M): tau_S maps to tau_S when S is a flat of M
// and to zero otherwise; ups_e maps to ups_e. The product identities are
// certified on construction (non-flat factors contribute 1 - 0 = 1, so the
// target's own relations close the products).
class KRestriction {
 public:
  KRestriction(const KRing& src, const KRing& dst) {
    check(src.matroid().n() == dst.matroid().n() &&
              src.matroid().rank() == src.matroid().n(),
          ErrorCode::GroundSetMismatch,
          "restriction goes from the Boolean ring on the same ground set");
    check(src.flavor() == dst.flavor(), ErrorCode::InvalidParameters,
          "flavors must match");
    check(dst.matroid().loopless(), ErrorCode::LoopyMatroid,
          "target matroid must be loopless");
    std::vector<RingElement> images;
    const FlatLattice& slat = src.lattice();
    images.reserve(slat.size() + src.matroid().n());
    for (int i = 0; i < slat.size(); ++i) {
      Mask s = slat.flat(i);
      images.push_back(dst.matroid().is_flat(s) ? dst.tau(s) : dst.zero());
    }
    if (src.flavor() == Flavor::Aug)
      for (int e = 0; e < src.matroid().n(); ++e) images.push_back(dst.ups(e));
    certify_k_images(slat, src.flavor(), src.matroid().n(), dst.ring(), images);
    subst_.emplace(src.ring_ptr(), dst.ring_ptr(), std::move(images));
  }

  RingElement apply(const RingElement& x) const { return subst_->apply(x); }
  IMat matrix() const { return subst_->matrix(); }

 private:
  std::optional<SubstMap> subst_;
};

// The K-theoretic structure sheaf class of a matroid inside the Boolean
// ambient ring: pull the Chow-side fundamental class (defined by the
// pairing deg_M(restrict(b)) = deg_Bool(b * Delta)) back through the
// ambient exceptional isomorphism.
inline RingElement structure_sheaf_class(const KContext& ambient,
                                         const ChowRing& target,
                                         const ChowRestriction& res) {
  RingElement delta = bergman_class(ambient.chow(), target, res);
  return ambient.zeta_inv_apply(delta);
}

// Compatibility of restriction with the exceptional isomorphisms and the
// pushforward: the square zeta_target(restrict(xi)) = restrict(zeta(xi))
// as matrices, and the projection formula chi_M(restrict(xi)) =
// chi_Bool(xi * [O_M]) as linear functionals.
struct CompatibilityReport {
  bool square_commutes = false;
  bool projection_formula = false;
};

inline CompatibilityReport compatibility_check(const KContext& ambient,
                                               const KContext& target) {
  ChowRestriction cres(ambient.chow(), target.chow());
  KRestriction kres(ambient.kring(), target.kring());
  IMat rc = cres.matrix();
  IMat rk = kres.matrix();

  CompatibilityReport rep;
  rep.square_commutes = rc.mul(ambient.zeta().fwd) == target.zeta().fwd.mul(rk);

  RingElement om = structure_sheaf_class(ambient, target.chow(), cres);
  std::vector<Int> lhs = row_times_mat(target.chi_row(), rk);
  std::vector<Int> rhs =
      row_times_mat(ambient.chi_row(), mult_matrix(ambient.kring().ring(), om));
  rep.projection_formula = lhs == rhs;
  return rep;
}

}  // namespace mkr
