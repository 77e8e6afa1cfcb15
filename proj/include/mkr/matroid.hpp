#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mkr/error.hpp"
#include "mkr/intmath.hpp"
#include "mkr/subset.hpp"

namespace mkr {

// A matroid on {0..n-1}, stored by its explicit basis list. Construction
// validates the basis-exchange axiom, so every Matroid object that exists
// is a real matroid. Rank of every subset is precomputed (2^n table);
// everything else (closure, flats, minors, duals) reads off that oracle.
class Matroid {
 public:
  static constexpr int kMaxGroundSet = 16;

  static Matroid from_bases(int n, std::vector<Mask> bases) {
    return Matroid(n, std::move(bases));
  }

  static Matroid from_basis_lists(int n, const std::vector<std::vector<int>>& lists) {
    std::vector<Mask> bs;
    bs.reserve(lists.size());
    for (const auto& b : lists) {
      Mask m = 0;
      for (int e : b) {
        check(e >= 0 && e < n, ErrorCode::InvalidParameters,
              "basis element " + std::to_string(e) + " out of range");
        check(!(m & (Mask(1) << e)), ErrorCode::InvalidParameters,
              "repeated element in basis");
        m |= Mask(1) << e;
      }
      bs.push_back(m);
    }
    return from_bases(n, std::move(bs));
  }

  // U_{r,n}: every r-subset is a basis. r = 0 gives the rank-zero matroid
  // whose sole basis is the empty set (all elements loops).
  static Matroid uniform(int r, int n) {
    check(n >= 0 && r >= 0 && r <= n, ErrorCode::InvalidParameters,
          "uniform needs 0 <= r <= n");
    check(n <= kMaxGroundSet, ErrorCode::CombinatorialExplosion,
          "ground set too large");
    std::vector<Mask> bases;
    for (Mask s = 0; s <= full_mask(n) && n > 0; ++s)
      if (popcount(s) == r) bases.push_back(s);
    if (n == 0) bases.push_back(0);
    return from_bases(n, std::move(bases));
  }

  static Matroid boolean_matroid(int n) { return uniform(n, n); }

  // Cycle matroid of a (multi)graph; elements are the edges in the order
  // given. Self-loops become matroid loops.
  static Matroid graphic(int vertices, const std::vector<std::pair<int, int>>& edges) {
    check(vertices >= 1, ErrorCode::InvalidParameters, "graphic needs >= 1 vertex");
    int n = static_cast<int>(edges.size());
    check(n <= kMaxGroundSet, ErrorCode::CombinatorialExplosion, "too many edges");
    for (auto [u, v] : edges)
      check(u >= 0 && u < vertices && v >= 0 && v < vertices,
            ErrorCode::InvalidParameters, "edge endpoint out of range");
    auto forest_rank = [&](Mask s) {
      std::vector<int> parent(vertices);
      for (int i = 0; i < vertices; ++i) parent[i] = i;
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      int rk = 0;
      for (int e = 0; e < n; ++e) {
        if (!(s & (Mask(1) << e))) continue;
        int a = find(edges[e].first), b = find(edges[e].second);
        if (a != b) {
          parent[a] = b;
          ++rk;
        }
      }
      return rk;
    };
    int r = forest_rank(full_mask(n));
    std::vector<Mask> bases;
    for (Mask s = 0; s <= full_mask(n) && n > 0; ++s)
      if (popcount(s) == r && forest_rank(s) == r) bases.push_back(s);
    if (n == 0) bases.push_back(0);
    return from_bases(n, std::move(bases));
  }

  static Matroid complete_graph(int vertices) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < vertices; ++i)
      for (int j = i + 1; j < vertices; ++j) edges.emplace_back(i, j);
    return graphic(vertices, edges);
  }

  // The Fano plane: seven points, seven three-point lines; bases are the
  // 28 triples that are not lines.
  static Matroid fano() {
    static const std::vector<std::vector<int>> lines = {
        {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    std::set<Mask> line_masks;
    for (const auto& l : lines) line_masks.insert(mask_from_elements(l));
    std::vector<Mask> bases;
    for (Mask s = 0; s <= full_mask(7); ++s)
      if (popcount(s) == 3 && !line_masks.count(s)) bases.push_back(s);
    return from_bases(7, std::move(bases));
  }

  int n() const { return n_; }
  int rank() const { return rank_; }
  const std::vector<Mask>& bases() const { return bases_; }
  Mask ground() const { return full_mask(n_); }

  int rank_of(Mask s) const { return rank_table_[s & ground()]; }

  Mask closure_of(Mask s) const {
    s &= ground();
    int r = rank_of(s);
    Mask cl = s;
    for (int e = 0; e < n_; ++e)
      if (!(s & (Mask(1) << e)) && rank_of(s | (Mask(1) << e)) == r)
        cl |= Mask(1) << e;
    return cl;
  }

  bool is_flat(Mask s) const { return closure_of(s) == (s & ground()); }

  bool is_independent(Mask s) const { return rank_of(s) == popcount(s); }

  Mask loop_set() const { return loops_; }
  bool loopless() const { return loops_ == 0; }

  std::vector<Mask> independent_sets() const {
    std::vector<Mask> out;
    for (Mask s = 0; s <= ground(); ++s) {
      if (is_independent(s)) out.push_back(s);
      if (n_ == 0) break;
    }
    return out;
  }

  // Minor M | [F, G] = (M restricted to G) contracted by F, for nested
  // F subset G. Elements are relabelled 0..|G\F|-1 in increasing original
  // order; `labels` (if given) receives the original labels.
  Matroid minor(Mask contract_f, Mask keep_g, std::vector<int>* labels = nullptr) const {
    contract_f &= ground();
    keep_g &= ground();
    check(subset_of(contract_f, keep_g), ErrorCode::NotNested,
          "minor needs F subset G");
    std::vector<int> elems = mask_elements(keep_g & ~contract_f);
    if (labels) *labels = elems;
    int k = static_cast<int>(elems.size());
    int base_rank = rank_of(contract_f);
    auto sub_rank = [&](Mask s) {
      Mask orig = contract_f;
      for (int i = 0; i < k; ++i)
        if (s & (Mask(1) << i)) orig |= Mask(1) << elems[i];
      return rank_of(orig) - base_rank;
    };
    int r = sub_rank(full_mask(k));
    std::vector<Mask> bases;
    for (Mask s = 0; s <= full_mask(k) && k > 0; ++s)
      if (popcount(s) == r && sub_rank(s) == popcount(s)) bases.push_back(s);
    if (k == 0) bases.push_back(0);
    return from_bases(k, std::move(bases));
  }

  Matroid contraction(Mask f) const { return minor(f, ground()); }
  Matroid restriction(Mask g) const { return minor(0, g); }

  Matroid dual() const {
    std::vector<Mask> co;
    co.reserve(bases_.size());
    for (Mask b : bases_) co.push_back(ground() & ~b);
    return from_bases(n_, std::move(co));
  }

  bool operator==(const Matroid& o) const { return n_ == o.n_ && bases_ == o.bases_; }
  bool operator!=(const Matroid& o) const { return !(*this == o); }

 private:
  Matroid(int n, std::vector<Mask> bases) : n_(n), bases_(std::move(bases)) {
    check(n >= 0 && n <= kMaxGroundSet, ErrorCode::InvalidParameters,
          "ground set size must be in [0, 16]");
    check(!bases_.empty(), ErrorCode::EmptyBasisSet, "no bases given");
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    for (Mask b : bases_)
      check(subset_of(b, ground()), ErrorCode::InvalidParameters,
            "basis uses elements outside the ground set");
    rank_ = popcount(bases_[0]);
    for (Mask b : bases_)
      check(popcount(b) == rank_, ErrorCode::UnequalBasisSizes,
            "bases " + mask_to_string(bases_[0]) + " and " + mask_to_string(b) +
                " have different sizes");
    validate_exchange();
    build_rank_table();
    loops_ = 0;
    for (int e = 0; e < n_; ++e)
      if (rank_of(Mask(1) << e) == 0) loops_ |= Mask(1) << e;
  }

  void validate_exchange() {
    std::set<Mask> basis_set(bases_.begin(), bases_.end());
    for (Mask a : bases_) {
      for (Mask b : bases_) {
        if (a == b) continue;
        Mask only_a = a & ~b;
        for (int e : mask_elements(only_a)) {
          bool found = false;
          for (int f : mask_elements(b & ~a)) {
            Mask cand = (a & ~(Mask(1) << e)) | (Mask(1) << f);
            if (basis_set.count(cand)) {
              found = true;
              break;
            }
          }
          check(found, ErrorCode::ExchangeAxiomViolation,
                "no exchange for " + std::to_string(e) + " in pair " +
                    mask_to_string(a) + ", " + mask_to_string(b));
        }
      }
    }
  }

  void build_rank_table() {
    size_t size = size_t(1) << n_;
    rank_table_.assign(size, 0);
    for (Mask s = 0; s < Mask(size); ++s) {
      int best = 0;
      for (Mask b : bases_) best = std::max(best, popcount(b & s));
      rank_table_[s] = static_cast<uint8_t>(best);
    }
  }

  int n_;
  int rank_;
  std::vector<Mask> bases_;
  std::vector<uint8_t> rank_table_;
  Mask loops_;
};

// The lattice of flats of a loopless matroid, in the deterministic
// (rank, lexicographic) order. Join and Moebius tables are precomputed.
class FlatLattice {
 public:
  explicit FlatLattice(const Matroid& m) : matroid_(m) {
    check(m.loopless(), ErrorCode::LoopyMatroid,
          "flat lattice requires a loopless matroid (loops " +
              mask_to_string(m.loop_set()) + ")");
    std::set<Mask> seen;
    for (Mask s = 0; s <= m.ground(); ++s) {
      seen.insert(m.closure_of(s));
      if (m.n() == 0) break;
    }
    flats_.assign(seen.begin(), seen.end());
    std::sort(flats_.begin(), flats_.end(), [&](Mask a, Mask b) {
      int ra = m.rank_of(a), rb = m.rank_of(b);
      if (ra != rb) return ra < rb;
      return lex_less_as_sets(a, b);
    });
    for (int i = 0; i < size(); ++i) index_[flats_[i]] = i;

    int k = size();
    join_.assign(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        int ij = index_.at(m.closure_of(flats_[i] | flats_[j]));
        join_[i][j] = join_[j][i] = ij;
      }

    // Moebius function on intervals, by the defining recursion
    // mu(F,F) = 1, sum_{F <= H <= G} mu(F,H) = 0.
    mobius_.assign(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i) {
      mobius_[i][i] = 1;
      for (int j = i + 1; j < k; ++j) {
        if (!leq(i, j)) continue;
        long long s = 0;
        for (int h = i; h < j; ++h)
          if (leq(i, h) && leq(h, j)) s += mobius_[i][h];
        mobius_[i][j] = -s;
      }
    }
  }

  const Matroid& matroid() const { return matroid_; }
  int size() const { return static_cast<int>(flats_.size()); }
  Mask flat(int i) const { return flats_[i]; }
  int rank_of_flat(int i) const { return matroid_.rank_of(flats_[i]); }
  int bottom() const { return 0; }
  int top() const { return size() - 1; }

  int index_of(Mask f) const {
    auto it = index_.find(f);
    return it == index_.end() ? -1 : it->second;
  }

  int require_index(Mask f) const {
    int i = index_of(f);
    check(i >= 0, ErrorCode::NotAFlat, mask_to_string(f) + " is not a flat");
    return i;
  }

  bool leq(int i, int j) const { return subset_of(flats_[i], flats_[j]); }
  bool comparable(int i, int j) const { return leq(i, j) || leq(j, i); }
  int join(int i, int j) const { return join_[i][j]; }
  long long mobius(int i, int j) const { return mobius_[i][j]; }

  std::vector<int> flats_of_rank(int r) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (rank_of_flat(i) == r) out.push_back(i);
    return out;
  }

  // All chains bottom = F_0 < F_1 < ... < F_k = top of proper flats in
  // between; each returned chain lists the lattice indices including the
  // endpoints.
  std::vector<std::vector<int>> full_flags() const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur{bottom()};
    complete_flags(cur, out);
    return out;
  }

 private:
  void complete_flags(std::vector<int>& cur, std::vector<std::vector<int>>& out) const {
    int last = cur.back();
    if (last == top()) {
      if (cur.size() >= 2) out.push_back(cur);
      return;
    }
    for (int j = 0; j < size(); ++j) {
      if (j == last || !leq(last, j)) continue;
      cur.push_back(j);
      complete_flags(cur, out);
      cur.pop_back();
    }
  }

  Matroid matroid_;
  std::vector<Mask> flats_;
  std::map<Mask, int> index_;
  std::vector<std::vector<int>> join_;
  std::vector<std::vector<long long>> mobius_;
};

// Coefficients mu^0, ..., mu^{r-1} of the reduced characteristic
// polynomial: chi_M(t) = sum_F mu(empty, F) t^{r - rk F} is divisible by
// (t - 1); mu^j is the absolute value of the coefficient of t^{r-1-j} in
// the quotient.
inline std::vector<Int> char_poly_mu(const Matroid& m) {
  check(m.loopless(), ErrorCode::LoopyMatroid, "characteristic polynomial needs loopless");
  check(m.rank() >= 1, ErrorCode::InvalidParameters, "rank must be >= 1");
  FlatLattice lat(m);
  int r = m.rank();
  std::vector<Int> chi(r + 1, 0);  // chi[d] = coefficient of t^d
  for (int i = 0; i < lat.size(); ++i)
    chi[r - lat.rank_of_flat(i)] += Int(static_cast<long>(lat.mobius(lat.bottom(), i)));
  // Synthetic division by (t - 1), top coefficient first.
  std::vector<Int> q(r, 0);
  Int carry = 0;
  for (int d = r; d >= 1; --d) {
    carry += chi[d];
    q[d - 1] = carry;
  }
  check(carry + chi[0] == 0, ErrorCode::NonExactDivision,
        "characteristic polynomial not divisible by t-1");
  std::vector<Int> mu(r);
  for (int j = 0; j < r; ++j) {
    mu[j] = abs(q[r - 1 - j]);
    // The reduced characteristic polynomial alternates in sign.
    check(q[r - 1 - j] == (j % 2 == 0 ? mu[j] : -mu[j]), ErrorCode::InternalError,
          "unexpected sign pattern in reduced characteristic polynomial");
  }
  return mu;
}

}  // namespace mkr
