#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "mkr/quotient.hpp"

namespace mkr {

// Evaluates polynomials over one quotient ring's variables inside another
// (possibly the same) ring, given an image element per source variable.
// This is the engine behind Adams operations, the duality involution and
// the Boolean-to-M restriction maps, which are all defined by substitution
// on generators. Per-variable powers are memoized.
//
// Whether a substitution actually descends to the source quotient is the
// caller's business: callers verify that every defining relation evaluates
// to zero (see the certification helpers next to each map).
class SubstMap {
 public:
  SubstMap(std::shared_ptr<const QuotientRing> src,
           std::shared_ptr<const QuotientRing> dst,
           std::vector<RingElement> var_images)
      : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(var_images)) {
    check(static_cast<int>(images_.size()) == src_->vars()->size(),
          ErrorCode::InvalidParameters, "one image per source variable required");
    pow_memo_.resize(images_.size());
    for (size_t i = 0; i < images_.size(); ++i)
      pow_memo_[i].push_back(dst_->one());  // exponent 0
  }

  const QuotientRing& src() const { return *src_; }
  const QuotientRing& dst() const { return *dst_; }

  RingElement eval_expo(const Expo& e) const {
    RingElement acc = dst_->one();
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) acc = dst_->mul(acc, var_power(static_cast<int>(i), e[i]));
    return acc;
  }

  RingElement eval_poly(const Poly& p) const {
    RingElement acc = dst_->zero();
    for (const auto& [e, c] : p.terms())
      acc = dst_->add(acc, dst_->scale(eval_expo(e), c));
    return acc;
  }

  // Image of a source ring element (its basis-monomial representative is
  // substituted term by term).
  RingElement apply(const RingElement& x) const {
    check(x.ring == src_.get(), ErrorCode::VarSetMismatch,
          "element does not belong to the source ring");
    RingElement acc = dst_->zero();
    for (const auto& [pos, c] : x.coords)
      acc = dst_->add(acc, dst_->scale(eval_expo(src_->basis_expo(pos)), c));
    return acc;
  }

  // Dense matrix of the induced linear map: column j holds the destination
  // coordinates of the image of source basis element j.
  IMat matrix() const {
    IMat m(dst_->rank(), src_->rank());
    for (int j = 0; j < src_->rank(); ++j) {
      RingElement img = eval_expo(src_->basis_expo(j));
      for (const auto& [pos, c] : img.coords) m.a[pos][j] = c;
    }
    return m;
  }

  // Evaluate every stored relation generator of the source presentation;
  // suitable as a descent certificate when the monomial part of the source
  // ideal is taken care of structurally (see call sites).
  bool relations_vanish() const {
    for (const Poly& g : src_->relations())
      if (!eval_poly(g).is_zero()) return false;
    return true;
  }

 private:
  const RingElement& var_power(int var, int k) const {
    auto& memo = pow_memo_[var];
    while (static_cast<int>(memo.size()) <= k)
      memo.push_back(dst_->mul(memo.back(), images_[var]));
    return memo[k];
  }

  std::shared_ptr<const QuotientRing> src_, dst_;
  std::vector<RingElement> images_;
  mutable std::vector<std::vector<RingElement>> pow_memo_;
};

}  // namespace mkr
