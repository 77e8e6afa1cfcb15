#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "mkr/error.hpp"
#include "mkr/hnf.hpp"
#include "mkr/poly.hpp"

namespace mkr {

class QuotientRing;

// An element of a QuotientRing: sparse coordinates over the ring's
// monomial basis. Elements are immutable values; all arithmetic goes
// through the owning ring.
struct RingElement {
  const QuotientRing* ring = nullptr;
  std::vector<std::pair<int, Int>> coords;  // (basis position, coefficient), sorted

  bool is_zero() const { return coords.empty(); }
  bool operator==(const RingElement& o) const {
    return ring == o.ring && coords == o.coords;
  }
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  Int coeff(int basis_pos) const {
    auto it = std::lower_bound(
        coords.begin(), coords.end(), basis_pos,
        [](const auto& p, int k) { return p.first < k; });
    return it != coords.end() && it->first == basis_pos ? it->second : Int(0);
  }
};

struct QuotientSpec {
  VarSetPtr vars;
  // Monomial prefilter: which monomials survive the monomial part of the
  // ideal. Must be multiplicatively closed downward (a divisor of an
  // admissible monomial is admissible) and is in particular responsible
  // for degree truncation. The filter is consulted for every candidate
  // monomial of degree < trunc_degree.
  MonomialFilter admissible;
  // Non-monomial relation generators.
  std::vector<Poly> relations;
  // Monomials of degree >= trunc_degree are treated as zero.
  int trunc_degree = 0;
  // Homogeneous relations? (then graded ranks are meaningful)
  bool graded = false;
  // Safety valve for runaway enumerations.
  size_t monomial_cap = 500000;
};

// Z-algebra presented as (span of admissible monomials) / (integer row
// lattice of relation instances). Admissible monomials of degree below the
// truncation are enumerated in graded-lex order; every relation generator
// is multiplied by every admissible monomial, projected back to the
// admissible span (terms outside it lie in the monomial ideal and vanish),
// and the resulting integer row lattice is brought to reduced echelon form.
// The quotient must be a free Z-module: all pivots are required to be 1,
// and the non-pivot monomials (greedy in the fixed order) form the basis.
class QuotientRing : public std::enable_shared_from_this<QuotientRing> {
 public:
  static std::shared_ptr<QuotientRing> build(QuotientSpec spec) {
    auto q = std::shared_ptr<QuotientRing>(new QuotientRing(std::move(spec)));
    q->construct();
    return q;
  }

  const VarSetPtr& vars() const { return spec_.vars; }
  int trunc_degree() const { return spec_.trunc_degree; }
  bool graded() const { return spec_.graded; }
  const std::vector<Poly>& relations() const { return spec_.relations; }

  int monomial_count() const { return static_cast<int>(monomials_.size()); }
  const Expo& monomial(int idx) const { return monomials_[idx]; }

  int rank() const { return static_cast<int>(basis_.size()); }
  // Basis monomial (as monomial index) at basis position p.
  int basis_monomial(int p) const { return basis_[p]; }
  const Expo& basis_expo(int p) const { return monomials_[basis_[p]]; }
  int basis_degree(int p) const { return expo_degree(monomials_[basis_[p]]); }

  std::vector<int> graded_ranks() const {
    check(spec_.graded, ErrorCode::InvalidParameters, "ring is not graded");
    std::vector<int> out(spec_.trunc_degree, 0);
    for (int b : basis_) out[expo_degree(monomials_[b])]++;
    return out;
  }

  int index_of_monomial(const Expo& e) const {
    auto it = mono_index_.find(mono_key(e));
    return it == mono_index_.end() ? -1 : it->second;
  }

  bool is_admissible(const Expo& e) const {
    return expo_degree(e) < spec_.trunc_degree && spec_.admissible(e);
  }

  // --- element constructors -------------------------------------------------

  RingElement zero() const { return RingElement{this, {}}; }

  RingElement one() const {
    Expo unit(spec_.vars->size(), 0);
    return nf_poly(Poly::monomial(spec_.vars, unit));
  }

  RingElement from_coords(std::vector<std::pair<int, Int>> coords) const {
    std::sort(coords.begin(), coords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [p, c] : coords)
      check(p >= 0 && p < rank(), ErrorCode::InvalidParameters,
            "basis position out of range");
    coords.erase(std::remove_if(coords.begin(), coords.end(),
                                [](const auto& pc) { return pc.second == 0; }),
                 coords.end());
    return RingElement{this, std::move(coords)};
  }

  std::vector<Int> dense_coords(const RingElement& x) const {
    std::vector<Int> v(rank(), 0);
    for (const auto& [p, c] : x.coords) v[p] = c;
    return v;
  }

  // Normal form of an arbitrary polynomial over the ring's variables.
  RingElement nf_poly(const Poly& p) const {
    check(p.varset() == spec_.vars || *p.varset() == *spec_.vars,
          ErrorCode::VarSetMismatch, "polynomial over wrong variable set");
    RingElement acc = zero();
    for (const auto& [e, c] : p.terms()) {
      if (!is_admissible(e)) continue;  // monomial ideal or truncation
      int idx = index_of_monomial(e);
      check(idx >= 0, ErrorCode::InternalError, "admissible monomial missing");
      accumulate(acc, nf_monomial(idx), c);
    }
    return acc;
  }

  // Representative polynomial (a Z-combination of basis monomials).
  Poly representative(const RingElement& x) const {
    Poly p(spec_.vars);
    for (const auto& [pos, c] : x.coords)
      p.add_term(monomials_[basis_[pos]], c);
    return p;
  }

  // --- arithmetic -------------------------------------------------------------

  RingElement add(const RingElement& a, const RingElement& b) const {
    RingElement r = a;
    accumulate(r, b, 1);
    return r;
  }
  RingElement sub(const RingElement& a, const RingElement& b) const {
    RingElement r = a;
    accumulate(r, b, -1);
    return r;
  }
  RingElement scale(const RingElement& a, const Int& c) const {
    if (c == 0) return zero();
    RingElement r = a;
    for (auto& [p, v] : r.coords) v *= c;
    return r;
  }

  RingElement mul(const RingElement& a, const RingElement& b) const {
    require_owned(a);
    require_owned(b);
    RingElement acc = zero();
    for (const auto& [pa, ca] : a.coords) {
      const Expo& ea = monomials_[basis_[pa]];
      for (const auto& [pb, cb] : b.coords) {
        const Expo& eb = monomials_[basis_[pb]];
        Expo e(ea.size());
        for (size_t i = 0; i < e.size(); ++i)
          e[i] = static_cast<uint8_t>(ea[i] + eb[i]);
        if (!is_admissible(e)) continue;  // monomial ideal / truncation
        int idx = index_of_monomial(e);
        check(idx >= 0, ErrorCode::InternalError, "admissible monomial missing");
        accumulate(acc, nf_monomial(idx), ca * cb);
      }
    }
    return acc;
  }

  RingElement pow(const RingElement& a, int k) const {
    check(k >= 0, ErrorCode::InvalidParameters, "negative ring power");
    RingElement r = one();
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  // Inverse of an element whose basis-coordinate at the monomial 1 is +-1
  // and whose remaining part is nilpotent (always true here: every
  // positive-degree monomial dies at the truncation). Geometric series.
  RingElement unit_inverse(const RingElement& x) const {
    Int s = x.coeff(one_position());
    check(s == 1 || s == -1, ErrorCode::NonUnitConstantTerm,
          "element is not a unit (coordinate at 1 is " + s.get_str() + ")");
    RingElement nu = sub(scale(x, s), one());  // s*x = 1 + nu
    RingElement acc = one();
    RingElement p = one();
    for (int k = 1; k < spec_.trunc_degree; ++k) {
      p = mul(p, nu);
      if (p.is_zero()) break;
      accumulate(acc, p, (k % 2 == 0) ? 1 : -1);
    }
    return scale(acc, s);
  }

  // Integer power allowing negative exponents for units.
  RingElement int_pow(const RingElement& a, long k) const {
    if (k >= 0) return pow(a, static_cast<int>(k));
    return pow(unit_inverse(a), static_cast<int>(-k));
  }

  // Basis position of the monomial 1 (constant). The relation rows of the
  // rings built here have no constant term, so 1 is always a basis monomial.
  int one_position() const {
    check(one_pos_ >= 0, ErrorCode::InternalError, "constant monomial not in basis");
    return one_pos_;
  }

  // Top graded component of an element (degree = max basis degree present).
  RingElement top_component(const RingElement& x, int degree) const {
    RingElement r = zero();
    for (const auto& [p, c] : x.coords)
      if (basis_degree(p) == degree) r.coords.emplace_back(p, c);
    return r;
  }

 private:
  explicit QuotientRing(QuotientSpec spec) : spec_(std::move(spec)) {}

  static std::string mono_key(const Expo& e) {
    return std::string(e.begin(), e.end());
  }

  void require_owned(const RingElement& x) const {
    check(x.ring == this, ErrorCode::VarSetMismatch,
          "element belongs to a different ring");
  }

  static void accumulate(RingElement& acc, const RingElement& inc, const Int& k) {
    if (k == 0 || inc.coords.empty()) return;
    std::vector<std::pair<int, Int>> out;
    out.reserve(acc.coords.size() + inc.coords.size());
    size_t i = 0, j = 0;
    while (i < acc.coords.size() || j < inc.coords.size()) {
      if (j == inc.coords.size() ||
          (i < acc.coords.size() && acc.coords[i].first < inc.coords[j].first)) {
        out.push_back(std::move(acc.coords[i++]));
      } else if (i == acc.coords.size() ||
                 inc.coords[j].first < acc.coords[i].first) {
        out.emplace_back(inc.coords[j].first, k * inc.coords[j].second);
        ++j;
      } else {
        Int v = acc.coords[i].second + k * inc.coords[j].second;
        if (v != 0) out.emplace_back(acc.coords[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    acc.coords = std::move(out);
  }

  void construct() {
    enumerate_monomials();
    // Feed every relation instance: generator times admissible monomial,
    // projected to the admissible span. Multiples by inadmissible monomials
    // project to zero (every term would be a multiple of an inadmissible
    // monomial), so this exhausts the ideal's image in the span.
    for (const Poly& g : spec_.relations) {
      check(g.varset() == spec_.vars || *g.varset() == *spec_.vars,
            ErrorCode::VarSetMismatch, "relation over wrong variable set");
      for (const Expo& m : monomials_) {
        SparseRow row;
        for (const auto& [e, c] : g.terms()) {
          Expo prod(e.size());
          for (size_t i = 0; i < e.size(); ++i)
            prod[i] = static_cast<uint8_t>(e[i] + m[i]);
          if (!is_admissible(prod)) continue;
          auto it = mono_index_.find(mono_key(prod));
          check(it != mono_index_.end(), ErrorCode::InternalError,
                "admissible monomial missing from enumeration");
          row.emplace_back(it->second, c);
        }
        if (!row.empty()) reducer_.add_row(std::move(row));
      }
    }

    if (!reducer_.all_pivots_unit()) diagnose_non_unit_pivots();
    reducer_.back_reduce();

    std::vector<char> is_pivot(monomials_.size(), 0);
    for (int c : reducer_.pivot_cols()) is_pivot[c] = 1;
    for (int i = 0; i < static_cast<int>(monomials_.size()); ++i)
      if (!is_pivot[i]) basis_.push_back(i);
    basis_pos_.assign(monomials_.size(), -1);
    for (int p = 0; p < static_cast<int>(basis_.size()); ++p)
      basis_pos_[basis_[p]] = p;

    Expo unit(spec_.vars->size(), 0);
    int idx = index_of_monomial(unit);
    one_pos_ = idx >= 0 ? basis_pos_[idx] : -1;

    nf_cache_.assign(monomials_.size(), RingElement{});
    nf_cached_.assign(monomials_.size(), 0);
  }

  void enumerate_monomials() {
    // All monomials of degree < trunc_degree passing the admissibility
    // filter, in graded-lex order.
    const int nv = spec_.vars->size();
    std::vector<Expo> all;
    Expo cur(nv, 0);
    enumerate_rec(cur, 0, spec_.trunc_degree - 1, all);
    check(all.size() <= spec_.monomial_cap, ErrorCode::CombinatorialExplosion,
          "admissible monomial count exceeds cap");
    std::sort(all.begin(), all.end(), GradedLexLess{});
    monomials_ = std::move(all);
    for (int i = 0; i < static_cast<int>(monomials_.size()); ++i)
      mono_index_[mono_key(monomials_[i])] = i;
  }

  void enumerate_rec(Expo& cur, int var, int budget, std::vector<Expo>& out) {
    if (var == static_cast<int>(cur.size())) {
      if (spec_.admissible(cur)) out.push_back(cur);
      return;
    }
    for (int d = 0; d <= budget; ++d) {
      cur[var] = static_cast<uint8_t>(d);
      enumerate_rec(cur, var + 1, budget - d, out);
    }
    cur[var] = 0;
  }

  [[noreturn]] void diagnose_non_unit_pivots() const {
    // Distinguish genuine torsion from a failed greedy basis choice by the
    // elementary divisors of the full relation lattice.
    IMat m(reducer_.rank(), monomial_count());
    int r = 0;
    for (int c : reducer_.pivot_cols()) {
      for (const auto& [col, v] : reducer_.pivot_row(c)) m.a[r][col] = v;
      ++r;
    }
    for (const Int& d : smith_divisors(m))
      if (d != 0 && d != 1)
        fail(ErrorCode::TorsionDetected,
             "quotient has torsion (elementary divisor " + d.get_str() + ")");
    fail(ErrorCode::InternalError,
         "free quotient but greedy monomial basis is not unimodular");
  }

  // Normal form of an admissible monomial, cached.
  const RingElement& nf_monomial(int idx) const {
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      if (nf_cached_[idx]) return nf_cache_[idx];
    }
    RingElement r;
    r.ring = this;
    if (basis_pos_[idx] >= 0) {
      r.coords.emplace_back(basis_pos_[idx], 1);
    } else {
      SparseRow reduced = reducer_.reduce({{idx, Int(1)}});
      for (const auto& [col, v] : reduced) {
        check(basis_pos_[col] >= 0, ErrorCode::InternalError,
              "reduction left a pivot coordinate");
        r.coords.emplace_back(basis_pos_[col], v);
      }
      std::sort(r.coords.begin(), r.coords.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!nf_cached_[idx]) {
      nf_cache_[idx] = std::move(r);
      nf_cached_[idx] = 1;
    }
    return nf_cache_[idx];
  }

  QuotientSpec spec_;
  std::vector<Expo> monomials_;
  std::unordered_map<std::string, int> mono_index_;
  RowReducer reducer_;
  std::vector<int> basis_;
  std::vector<int> basis_pos_;
  int one_pos_ = -1;

  mutable std::mutex cache_mutex_;
  mutable std::vector<RingElement> nf_cache_;
  mutable std::vector<char> nf_cached_;
};

}  // namespace mkr
