#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace mkr {

// Ground-set subsets as bitmasks, element i <-> bit i. Ground sets are
// desk-scale (n <= 16 enforced at matroid construction), so 32 bits is
// plenty.
using Mask = uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

inline Mask full_mask(int n) { return n >= 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }

inline std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  for (int e = 0; m; ++e, m >>= 1)
    if (m & 1) out.push_back(e);
  return out;
}

inline Mask mask_from_elements(const std::vector<int>& elems) {
  Mask m = 0;
  for (int e : elems) m |= Mask(1) << e;
  return m;
}

// Lexicographic order on the sorted element lists: {0,3} < {1,2} because
// 0 < 1. Used for the deterministic (rank, lex) flat order.
inline bool lex_less_as_sets(Mask a, Mask b) {
  if (a == b) return false;
  while (true) {
    if (a == 0) return b != 0;
    if (b == 0) return false;
    int ea = std::countr_zero(a), eb = std::countr_zero(b);
    if (ea != eb) return ea < eb;
    a &= a - 1;
    b &= b - 1;
  }
}

inline std::string mask_to_string(Mask m) {
  if (m == 0) return "{}";
  std::string s = "{";
  bool first = true;
  for (int e : mask_elements(m)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

// Visit all subsets of `sup` (including 0 and sup itself).
template <typename F>
void for_each_subset(Mask sup, F&& f) {
  Mask s = sup;
  while (true) {
    f(s);
    if (s == 0) break;
    s = (s - 1) & sup;
  }
}

}  // namespace mkr
