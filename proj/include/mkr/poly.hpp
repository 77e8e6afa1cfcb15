#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "mkr/error.hpp"
#include "mkr/intmath.hpp"
#include "mkr/subset.hpp"

namespace mkr {

// A ring variable. Flat variables carry the flat's subset mask, element
// variables the element index; plain labelled variables are for generic
// polynomial work (test rings, the moduli presentation ring).
struct Var {
  enum class Kind { Flat, Elem, Label };
  Kind kind;
  Mask mask = 0;  // Kind::Flat
  int elem = -1;  // Kind::Elem
  std::string name;

  static Var flat(Mask m) {
    return Var{Kind::Flat, m, -1, "x" + mask_to_string(m)};
  }
  static Var element(int e) {
    return Var{Kind::Elem, 0, e, "y" + std::to_string(e)};
  }
  static Var label(const std::string& n) { return Var{Kind::Label, 0, -1, n}; }

  bool operator==(const Var& o) const {
    return kind == o.kind && mask == o.mask && elem == o.elem && name == o.name;
  }
};

// Ordered, immutable variable list. Polynomials over different VarSets
// never mix.
class VarSet {
 public:
  explicit VarSet(std::vector<Var> vars) : vars_(std::move(vars)) {
    for (int i = 0; i < size(); ++i) {
      const Var& v = vars_[i];
      if (v.kind == Var::Kind::Flat) flat_index_[v.mask] = i;
      if (v.kind == Var::Kind::Elem) elem_index_[v.elem] = i;
      name_index_[v.name] = i;
    }
  }

  int size() const { return static_cast<int>(vars_.size()); }
  const Var& var(int i) const { return vars_[i]; }

  int find_flat(Mask m) const {
    auto it = flat_index_.find(m);
    return it == flat_index_.end() ? -1 : it->second;
  }
  int find_elem(int e) const {
    auto it = elem_index_.find(e);
    return it == elem_index_.end() ? -1 : it->second;
  }
  int find_name(const std::string& n) const {
    auto it = name_index_.find(n);
    return it == name_index_.end() ? -1 : it->second;
  }

  bool operator==(const VarSet& o) const { return vars_ == o.vars_; }

 private:
  std::vector<Var> vars_;
  std::map<Mask, int> flat_index_;
  std::map<int, int> elem_index_;
  std::map<std::string, int> name_index_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

// Exponent vector, one byte per variable (total degrees here never exceed
// a few dozen).
using Expo = std::vector<uint8_t>;

inline int expo_degree(const Expo& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Graded order: lower total degree first, then reverse-lexicographic
// comparison of exponent vectors, so monomials heavy in early variables
// sort first. Variables are listed with low-rank flats first, and the
// greedy echelon basis keeps the later (high-rank) monomials; that choice
// is what makes the quotients come out with unit pivots. This single order
// drives polynomial term storage, admissible-monomial enumeration and
// basis selection, keeping every computation deterministic.
struct GradedLexLess {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = expo_degree(a), db = expo_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

using MonomialFilter = std::function<bool(const Expo&)>;

// Sparse exact-integer multivariate polynomial.
class Poly {
 public:
  Poly() = default;
  explicit Poly(VarSetPtr vs) : vs_(std::move(vs)) {}

  static Poly constant(VarSetPtr vs, const Int& c) {
    Poly p(std::move(vs));
    if (c != 0) p.terms_[Expo(p.vs_->size(), 0)] = c;
    return p;
  }
  static Poly variable(VarSetPtr vs, int idx, int power = 1) {
    Poly p(vs);
    check(idx >= 0 && idx < vs->size(), ErrorCode::InvalidParameters,
          "variable index out of range");
    Expo e(vs->size(), 0);
    e[idx] = static_cast<uint8_t>(power);
    if (power != 0 || true) p.terms_[e] = 1;
    return p;
  }
  static Poly monomial(VarSetPtr vs, const Expo& e, const Int& c = 1) {
    Poly p(std::move(vs));
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  const VarSetPtr& varset() const { return vs_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Expo, Int, GradedLexLess>& terms() const { return terms_; }

  Int coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
  }
  Int constant_term() const { return coeff(Expo(vs_->size(), 0)); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, expo_degree(e));
    return d;
  }

  void add_term(const Expo& e, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    require_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    require_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  Poly operator-() const {
    Poly r(vs_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  Poly& operator*=(const Int& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }
  friend Poly operator*(Poly a, const Int& c) { return a *= c; }
  friend Poly operator*(const Int& c, Poly a) { return a *= c; }

  // Product, optionally truncating away every term of degree >= maxdeg_excl
  // and every term failing `filter`. Dropping such terms mid-product is
  // sound whenever they generate a monomial ideal that is being quotiented
  // out: any multiple of a dropped monomial would be dropped too.
  static Poly mul(const Poly& a, const Poly& b, int maxdeg_excl = -1,
                  const MonomialFilter* filter = nullptr) {
    a.require_same_vars(b);
    Poly r(a.vs_);
    for (const auto& [ea, ca] : a.terms_) {
      int da = expo_degree(ea);
      for (const auto& [eb, cb] : b.terms_) {
        if (maxdeg_excl >= 0 && da + expo_degree(eb) >= maxdeg_excl) continue;
        Expo e(ea.size());
        for (size_t i = 0; i < e.size(); ++i)
          e[i] = static_cast<uint8_t>(ea[i] + eb[i]);
        if (filter && !(*filter)(e)) continue;
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }

  Poly truncated(int maxdeg_excl, const MonomialFilter* filter = nullptr) const {
    Poly r(vs_);
    for (const auto& [e, c] : terms_) {
      if (maxdeg_excl >= 0 && expo_degree(e) >= maxdeg_excl) continue;
      if (filter && !(*filter)(e)) continue;
      r.terms_[e] = c;
    }
    return r;
  }

  Poly pow(int k, int maxdeg_excl = -1, const MonomialFilter* filter = nullptr) const {
    check(k >= 0, ErrorCode::InvalidParameters, "negative power");
    Poly r = constant(vs_, 1);
    for (int i = 0; i < k; ++i) r = mul(r, *this, maxdeg_excl, filter);
    return r;
  }

  bool operator==(const Poly& o) const {
    require_same_vars(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.get_str();
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) {
          s += "*" + vs_->var(static_cast<int>(i)).name;
          if (e[i] > 1) s += "^" + std::to_string(int(e[i]));
        }
    }
    return s;
  }

  void require_same_vars(const Poly& o) const {
    check(vs_ && o.vs_ && (vs_ == o.vs_ || *vs_ == *o.vs_),
          ErrorCode::VarSetMismatch, "polynomials over different variable sets");
  }

 private:
  VarSetPtr vs_;
  std::map<Expo, Int, GradedLexLess> terms_;
};

// Inverse of a polynomial with constant term +-1, as a truncated geometric
// series: p*q == 1 modulo terms of degree > maxdeg.
inline Poly invert_unipotent(const Poly& p, int maxdeg,
                             const MonomialFilter* filter = nullptr) {
  check(maxdeg >= 0, ErrorCode::InvalidParameters, "maxdeg must be >= 0");
  Int c0 = p.constant_term();
  check(c0 == 1 || c0 == -1, ErrorCode::NonUnitConstantTerm,
        "constant term must be +-1, got " + c0.get_str());
  // p = s(1 - u) with s = +-1 and u of positive valuation, so
  // p^{-1} = s(1 + u + u^2 + ...); the series stops at degree maxdeg.
  Poly s_one = Poly::constant(p.varset(), c0);
  Poly u = s_one - (p * c0).truncated(maxdeg + 1, filter);
  Poly acc = Poly::constant(p.varset(), 1);
  Poly upow = Poly::constant(p.varset(), 1);
  for (int k = 1; k <= maxdeg; ++k) {
    upow = Poly::mul(upow, u, maxdeg + 1, filter);
    if (upow.is_zero()) break;
    acc += upow;
  }
  return acc * c0;
}

}  // namespace mkr
