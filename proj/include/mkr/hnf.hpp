#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "mkr/error.hpp"
#include "mkr/intmath.hpp"

namespace mkr {

// Sparse integer row: (column, coefficient) pairs sorted by column, no
// zero coefficients.
using SparseRow = std::vector<std::pair<int, Int>>;

inline void row_normalize(SparseRow& r) {
  std::sort(r.begin(), r.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  for (auto& [c, v] : r) {
    if (!out.empty() && out.back().first == c)
      out.back().second += v;
    else
      out.emplace_back(c, v);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& p) { return p.second == 0; }),
            out.end());
  r = std::move(out);
}

// r += k * s  (both sorted; merge)
inline void row_axpy(SparseRow& r, const Int& k, const SparseRow& s) {
  if (k == 0 || s.empty()) return;
  SparseRow out;
  out.reserve(r.size() + s.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
      out.push_back(std::move(r[i++]));
    } else if (i == r.size() || s[j].first < r[i].first) {
      out.emplace_back(s[j].first, k * s[j].second);
      ++j;
    } else {
      Int v = r[i].second + k * s[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r = std::move(out);
}

// Incremental integer row-echelon (Hermite) reduction. Rows are fed one at
// a time; the reducer maintains pivot rows (one per pivot column, pivot =
// leading entry, kept positive) whose span equals the span of everything
// fed in. back_reduce() then produces the canonical reduced form, after
// which reduce() computes normal forms against the row lattice (requires
// all pivots to be 1, i.e. the quotient by the lattice is free with the
// non-pivot coordinates as basis).
class RowReducer {
 public:
  // Returns true if the row increased the rank (created a new pivot).
  bool add_row(SparseRow r) {
    row_normalize(r);
    bool grew = false;
    while (!r.empty()) {
      int col = r.front().first;
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        if (r.front().second < 0)
          for (auto& [c, v] : r) v = -v;
        pivots_.emplace(col, std::move(r));
        grew = true;
        break;
      }
      const Int a = r.front().second;
      const Int b = it->second.front().second;
      if (a % b == 0) {
        row_axpy(r, -(a / b), it->second);
      } else {
        // Combine the two rows unimodularly so the pivot becomes gcd(a,b):
        // np = s*r + t*p has leading entry g; q2 = (-b/g)*r + (a/g)*p has
        // leading entry 0. span{np, q2} = span{r, p} (the transform has
        // determinant 1).
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                   b.get_mpz_t());
        const SparseRow p = it->second;
        SparseRow np;
        np.reserve(r.size());
        for (const auto& [c, v] : r) np.emplace_back(c, s * v);
        row_axpy(np, t, p);
        SparseRow q2;
        q2.reserve(r.size());
        Int mb = -(b / g), af = a / g;
        for (const auto& [c, v] : r) q2.emplace_back(c, mb * v);
        row_axpy(q2, af, p);
        it->second = std::move(np);
        r = std::move(q2);
      }
    }
    return grew;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

  std::vector<int> pivot_cols() const {
    std::vector<int> out;
    out.reserve(pivots_.size());
    for (const auto& [c, row] : pivots_) out.push_back(c);
    return out;
  }

  bool has_pivot(int col) const { return pivots_.count(col) != 0; }

  const SparseRow& pivot_row(int col) const { return pivots_.at(col); }

  bool all_pivots_unit() const {
    for (const auto& [c, row] : pivots_)
      if (row.front().second != 1) return false;
    return true;
  }

  std::vector<std::pair<int, Int>> pivot_values() const {
    std::vector<std::pair<int, Int>> out;
    for (const auto& [c, row] : pivots_) out.emplace_back(c, row.front().second);
    return out;
  }

  // Canonicalize: clear entries above each pivot (reduce them into
  // [0, pivot); with unit pivots they vanish entirely, leaving each pivot
  // row supported on its pivot column plus non-pivot columns only).
  void back_reduce() {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const int col = it->first;
      const Int& lead = it->second.front().second;
      for (auto jt = pivots_.begin(); jt != pivots_.end(); ++jt) {
        if (jt->first == col) continue;
        SparseRow& row = jt->second;
        auto pos = std::lower_bound(
            row.begin(), row.end(), col,
            [](const auto& p, int c) { return p.first < c; });
        if (pos == row.end() || pos->first != col) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), pos->second.get_mpz_t(), lead.get_mpz_t());
        if (q != 0) row_axpy(row, -q, it->second);
      }
    }
    back_reduced_ = true;
  }

  // Normal form of a vector modulo the row lattice: subtract pivot rows to
  // clear every pivot coordinate. Exact only with unit pivots (checked).
  SparseRow reduce(SparseRow v) const {
    check(back_reduced_, ErrorCode::InternalError, "reduce before back_reduce");
    row_normalize(v);
    SparseRow out;
    size_t i = 0;
    while (i < v.size()) {
      int col = v[i].first;
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        out.push_back(v[i]);
        ++i;
        continue;
      }
      check(it->second.front().second == 1, ErrorCode::TorsionDetected,
            "non-unit pivot during reduction");
      Int k = v[i].second;
      // Pivot rows are back-reduced: their support beyond the pivot column
      // avoids every pivot column, so a single sweep suffices.
      SparseRow tail(v.begin() + i, v.end());
      row_axpy(tail, -k, it->second);
      v.erase(v.begin() + i, v.end());
      v.insert(v.end(), tail.begin(), tail.end());
    }
    return out;
  }

 private:
  std::map<int, SparseRow> pivots_;
  bool back_reduced_ = false;
};

// ---------------------------------------------------------------------------
// Dense exact-integer matrices (used for the zeta matrix, pairings, and the
// public hnf() with transform).

struct IMat {
  int rows = 0, cols = 0;
  std::vector<std::vector<Int>> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(r, std::vector<Int>(c, 0)) {}

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }

  Int& at(int i, int j) { return a[i][j]; }
  const Int& at(int i, int j) const { return a[i][j]; }

  bool operator==(const IMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  IMat mul(const IMat& o) const {
    check(cols == o.rows, ErrorCode::InvalidParameters, "matrix shape mismatch");
    IMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (a[i][k] == 0) continue;
        for (int j = 0; j < o.cols; ++j)
          if (o.a[k][j] != 0) r.a[i][j] += a[i][k] * o.a[k][j];
      }
    return r;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    check(static_cast<int>(v.size()) == cols, ErrorCode::InvalidParameters,
          "vector length mismatch");
    std::vector<Int> r(rows, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (a[i][j] != 0 && v[j] != 0) r[i] += a[i][j] * v[j];
    return r;
  }
};

// Fraction-free determinant (Bareiss).
inline Int det_bareiss(IMat m) {
  check(m.rows == m.cols, ErrorCode::InvalidParameters, "det of non-square");
  int n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.a[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.a[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(m.a[k], m.a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int v = m.a[i][j] * m.a[k][k] - m.a[i][k] * m.a[k][j];
        m.a[i][j] = v / prev;  // exact by Bareiss
      }
    prev = m.a[k][k];
  }
  return sign > 0 ? m.a[n - 1][n - 1] : -m.a[n - 1][n - 1];
}

// Row-style Hermite normal form with transform: returns (H, U) with
// U * A = H, U unimodular, H in row echelon form with positive pivots and
// entries above each pivot reduced into [0, pivot).
inline std::pair<IMat, IMat> hnf_with_transform(const IMat& A) {
  IMat H = A;
  IMat U = IMat::identity(A.rows);
  int row = 0;
  for (int col = 0; col < A.cols && row < A.rows; ++col) {
    // Clear the column below `row` by gcd steps.
    while (true) {
      int nz = -1;
      for (int i = row + 1; i < A.rows; ++i)
        if (H.a[i][col] != 0) {
          nz = i;
          break;
        }
      if (H.a[row][col] == 0) {
        if (nz < 0) break;
        std::swap(H.a[row], H.a[nz]);
        std::swap(U.a[row], U.a[nz]);
        continue;
      }
      if (nz < 0) break;
      Int a = H.a[row][col], b = H.a[nz][col];
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Int af = a / g, bf = b / g;
      for (int j = 0; j < A.cols; ++j) {
        Int hr = H.a[row][j], hn = H.a[nz][j];
        H.a[row][j] = s * hr + t * hn;
        H.a[nz][j] = -bf * hr + af * hn;
      }
      for (int j = 0; j < A.rows; ++j) {
        Int ur = U.a[row][j], un = U.a[nz][j];
        U.a[row][j] = s * ur + t * un;
        U.a[nz][j] = -bf * ur + af * un;
      }
    }
    if (H.a[row][col] == 0) continue;
    if (H.a[row][col] < 0) {
      for (int j = 0; j < A.cols; ++j) H.a[row][j] = -H.a[row][j];
      for (int j = 0; j < A.rows; ++j) U.a[row][j] = -U.a[row][j];
    }
    // Reduce entries above the pivot into [0, pivot).
    for (int i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H.a[i][col].get_mpz_t(), H.a[row][col].get_mpz_t());
      if (q != 0) {
        for (int j = 0; j < A.cols; ++j) H.a[i][j] -= q * H.a[row][j];
        for (int j = 0; j < A.rows; ++j) U.a[i][j] -= q * U.a[row][j];
      }
    }
    ++row;
  }
  return {H, U};
}

// Exact inverse of a unimodular integer matrix (det +-1 required).
inline IMat inverse_unimodular(const IMat& A) {
  check(A.rows == A.cols, ErrorCode::InvalidParameters, "inverse of non-square");
  auto [H, U] = hnf_with_transform(A);
  for (int i = 0; i < A.rows; ++i)
    check(H.a[i][i] == 1, ErrorCode::SingularPairing,
          "matrix is not unimodular (HNF pivot != 1)");
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      check(H.a[i][j] == (i == j ? 1 : 0), ErrorCode::SingularPairing,
            "matrix is not unimodular");
  return U;
}

// Solve A x = b exactly over the integers for unimodular A.
inline std::vector<Int> solve_unimodular(const IMat& A, const std::vector<Int>& b) {
  IMat inv = inverse_unimodular(A);
  return inv.apply(b);
}

// Elementary divisors (Smith normal form diagonal, nonzero part). Only used
// on the rare failure path to distinguish torsion from basis-selection
// trouble, so a simple dense implementation is fine.
inline std::vector<Int> smith_divisors(IMat m) {
  int n = std::min(m.rows, m.cols);
  std::vector<Int> divs;
  int r0 = 0, c0 = 0;
  while (r0 < m.rows && c0 < m.cols) {
    int pi = -1, pj = -1;
    for (int i = r0; i < m.rows && pi < 0; ++i)
      for (int j = c0; j < m.cols; ++j)
        if (m.a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(m.a[r0], m.a[pi]);
    for (int i = 0; i < m.rows; ++i) std::swap(m.a[i][c0], m.a[i][pj]);
    bool again = true;
    while (again) {
      again = false;
      for (int i = r0 + 1; i < m.rows; ++i)
        while (m.a[i][c0] != 0) {
          Int q = m.a[i][c0] / m.a[r0][c0];
          for (int j = c0; j < m.cols; ++j) m.a[i][j] -= q * m.a[r0][j];
          if (m.a[i][c0] != 0) {
            std::swap(m.a[r0], m.a[i]);
            again = true;
          }
        }
      for (int j = c0 + 1; j < m.cols; ++j)
        while (m.a[r0][j] != 0) {
          Int q = m.a[r0][j] / m.a[r0][c0];
          for (int i = r0; i < m.rows; ++i) m.a[i][j] -= q * m.a[i][c0];
          if (m.a[r0][j] != 0) {
            for (int i = 0; i < m.rows; ++i) std::swap(m.a[i][c0], m.a[i][j]);
            again = true;
          }
        }
    }
    divs.push_back(abs(m.a[r0][c0]));
    ++r0;
    ++c0;
  }
  (void)n;
  return divs;
}

}  // namespace mkr
