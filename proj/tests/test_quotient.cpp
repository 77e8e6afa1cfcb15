#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "mkr/chow.hpp"
#include "mkr/kring.hpp"

using namespace mkr;

namespace {

// Rank of an integer matrix by fraction-free Gaussian elimination. A
// deliberately different algorithm from the library's sparse gcd echelon,
// used to cross-check quotient ranks.
int bareiss_rank(std::vector<std::vector<Int>> a) {
  if (a.empty()) return 0;
  int rows = static_cast<int>(a.size());
  int cols = static_cast<int>(a[0].size());
  int rank = 0;
  Int prev = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int j = c + 1; j < cols; ++j) {
        Int v = a[rank][c] * a[r][j] - a[r][c] * a[rank][j];
        a[r][j] = v / prev;  // exact by the Bareiss identity
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Rebuild the relation-instance matrix exactly as the ring does (relation
// generator times admissible monomial, restricted to the admissible span)
// and rank it independently.
int relation_matrix_rank(const QuotientRing& q) {
  std::vector<std::vector<Int>> rows;
  for (const Poly& g : q.relations()) {
    for (int im = 0; im < q.monomial_count(); ++im) {
      const Expo& m = q.monomial(im);
      std::vector<Int> row(q.monomial_count(), 0);
      bool nonzero = false;
      for (const auto& [e, c] : g.terms()) {
        Expo prod(e.size());
        for (size_t i = 0; i < e.size(); ++i)
          prod[i] = static_cast<uint8_t>(e[i] + m[i]);
        int idx = q.is_admissible(prod) ? q.index_of_monomial(prod) : -1;
        if (idx >= 0) {
          row[idx] += c;
          nonzero = true;
        }
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  return bareiss_rank(std::move(rows));
}

RingElement random_element(const QuotientRing& q, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<std::pair<int, Int>> coords;
  for (int p = 0; p < q.rank(); ++p) {
    int v = coeff(rng);
    if (v) coords.emplace_back(p, Int(v));
  }
  return q.from_coords(std::move(coords));
}

}  // namespace

TEST_CASE("quotient rank agrees with an independent elimination") {
  struct Item {
    Matroid m;
    Flavor fl;
  };
  for (const Item& it : {Item{Matroid::uniform(2, 3), Flavor::Aug},
                         Item{Matroid::uniform(3, 4), Flavor::Plain},
                         Item{Matroid::boolean_matroid(3), Flavor::Plain}}) {
    ChowRing a(it.m, it.fl);
    const QuotientRing& q = a.ring();
    REQUIRE(q.rank() == q.monomial_count() - relation_matrix_rank(q));

    KRing k(it.m, it.fl);
    const QuotientRing& qk = k.ring();
    REQUIRE(qk.rank() == qk.monomial_count() - relation_matrix_rank(qk));
  }
}

TEST_CASE("divisor ring of U_{2,3} has the chain basis") {
  ChowRing a(Matroid::uniform(2, 3), Flavor::Plain);
  const QuotientRing& q = a.ring();
  REQUIRE(q.rank() == 2);
  REQUIRE(q.graded_ranks() == std::vector<int>{1, 1});
  // the degree-one basis monomial is the top flat's variable, i.e. the
  // greedy elimination pivoted away the low-rank generators
  REQUIRE(q.basis_degree(0) == 0);
  REQUIRE(q.basis_degree(1) == 1);
  const Expo& e = q.basis_expo(1);
  int lattice_top = 4;  // flats sort as {}, {0}, {1}, {2}, E
  for (int i = 0; i < static_cast<int>(e.size()); ++i)
    REQUIRE(e[i] == (i == lattice_top ? 1 : 0));
}

TEST_CASE("normal form is idempotent and linear") {
  ChowRing a(Matroid::uniform(3, 4), Flavor::Plain);
  const QuotientRing& q = a.ring();
  std::mt19937_64 rng(99);
  for (int t = 0; t < 10; ++t) {
    RingElement x = random_element(q, rng);
    RingElement y = random_element(q, rng);
    REQUIRE(q.add(x, y) == q.add(y, x));
    REQUIRE(q.sub(q.add(x, y), y) == x);
    REQUIRE(q.scale(q.add(x, y), 3) == q.add(q.scale(x, 3), q.scale(y, 3)));
  }
}

TEST_CASE("quotient multiplication satisfies ring laws") {
  ChowRing a(Matroid::uniform(3, 4), Flavor::Plain);
  const QuotientRing& q = a.ring();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 8; ++t) {
    RingElement x = random_element(q, rng);
    RingElement y = random_element(q, rng);
    RingElement z = random_element(q, rng);
    REQUIRE(q.mul(x, y) == q.mul(y, x));
    REQUIRE(q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z)));
    REQUIRE(q.mul(x, q.add(y, z)) == q.add(q.mul(x, y), q.mul(x, z)));
    REQUIRE(q.mul(x, q.one()) == x);
  }
}

TEST_CASE("unit inverse inverts") {
  ChowRing a(Matroid::complete_graph(4), Flavor::Plain);
  const QuotientRing& q = a.ring();
  RingElement t = a.t_class(a.matroid().ground());
  RingElement u = q.add(q.one(), t);
  REQUIRE(q.mul(u, q.unit_inverse(u)) == q.one());
  // an element with zero constant term has no inverse
  REQUIRE_THROWS_AS(q.unit_inverse(t), Error);
}

TEST_CASE("coordinates round-trip") {
  ChowRing a(Matroid::uniform(3, 4), Flavor::Aug);
  const QuotientRing& q = a.ring();
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    RingElement x = random_element(q, rng);
    std::vector<Int> dense = q.dense_coords(x);
    REQUIRE(static_cast<int>(dense.size()) == q.rank());
    std::vector<std::pair<int, Int>> sparse;
    for (int p = 0; p < q.rank(); ++p)
      if (dense[p] != 0) sparse.emplace_back(p, dense[p]);
    REQUIRE(q.from_coords(std::move(sparse)) == x);
  }
}

TEST_CASE("basis monomials are admissible and indexed consistently") {
  KRing k(Matroid::uniform(3, 4), Flavor::Plain);
  const QuotientRing& q = k.ring();
  for (int p = 0; p < q.rank(); ++p) {
    const Expo& e = q.basis_expo(p);
    REQUIRE(q.is_admissible(e));
    REQUIRE(q.index_of_monomial(e) == q.basis_monomial(p));
  }
}

TEST_CASE("a tiny monomial cap is reported as a combinatorial explosion") {
  try {
    ChowRing a(Matroid::uniform(3, 4), Flavor::Plain, 3);
    FAIL("expected the cap to trip");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::CombinatorialExplosion);
  }
}
