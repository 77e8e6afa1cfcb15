#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "mkr/error.hpp"

namespace mkr {

// All ring coefficients, degrees and combinatorial values are exact
// integers. mpz via gmpxx; no modular arithmetic anywhere.
using Int = mpz_class;

inline Int factorial(long n) {
  check(n >= 0, ErrorCode::InvalidParameters, "factorial of negative");
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// Combinatorial binomial: zero outside 0 <= k <= n. This is the convention
// the closed-form degree/coefficient formulas use ("0 when arguments
// negative or top smaller than bottom").
inline Int binom_nonneg(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);  // exact: product of j consecutive integers is divisible by j!
  }
  return r;
}

// Generalized binomial C(a, d) for arbitrary integer a and d >= 0:
// a(a-1)...(a-d+1)/d!. Needed to evaluate polynomial formulas at negative
// integer points.
inline Int binom_gen(const Int& a, long d) {
  if (d < 0) return 0;
  Int num = 1;
  for (long i = 0; i < d; ++i) num *= (a - i);
  Int den = factorial(d);
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  check(r == 0, ErrorCode::NonExactDivision, "binom_gen not integral");
  return q;
}

// Rising binomial coefficient x^{(d)} = x(x+1)...(x+d-1)/d! = C(x+d-1, d),
// defined for every integer x (generalized binomial).
inline Int rising_binom(const Int& x, long d) {
  if (d < 0) return 0;
  if (d == 0) return 1;
  return binom_gen(x + d - 1, d);
}

// Multinomial C(n; parts...) = n!/(prod parts!) when all parts are
// nonnegative and sum to n, else 0.
inline Int multinom(long n, const std::vector<long>& parts) {
  if (n < 0) return 0;
  long sum = 0;
  for (long p : parts) {
    if (p < 0) return 0;
    sum += p;
  }
  if (sum != n) return 0;
  Int r = factorial(n);
  for (long p : parts) r /= factorial(p);
  return r;
}

inline Int trinom(long m, long a, long b, long c) { return multinom(m, {a, b, c}); }

}  // namespace mkr
