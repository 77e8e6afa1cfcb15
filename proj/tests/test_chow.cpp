#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "mkr/chow.hpp"

using namespace mkr;

namespace {

FlatMultiIndex idx(const std::vector<std::pair<Mask, long>>& raw) {
  return FlatMultiIndex::make(raw);
}

}  // namespace

TEST_CASE("graded ranks of the divisor-class rings") {
  struct Row {
    Matroid m;
    Flavor fl;
    std::vector<int> ranks;
  };
  const std::vector<Row> table = {
      {Matroid::uniform(2, 3), Flavor::Plain, {1, 1}},
      {Matroid::uniform(2, 3), Flavor::Aug, {1, 4, 1}},
      {Matroid::uniform(3, 4), Flavor::Plain, {1, 7, 1}},
      {Matroid::uniform(3, 4), Flavor::Aug, {1, 11, 11, 1}},
      {Matroid::boolean_matroid(3), Flavor::Plain, {1, 4, 1}},
      {Matroid::boolean_matroid(3), Flavor::Aug, {1, 7, 7, 1}},
      {Matroid::boolean_matroid(4), Flavor::Plain, {1, 11, 11, 1}},
      {Matroid::boolean_matroid(4), Flavor::Aug, {1, 15, 33, 15, 1}},
      {Matroid::complete_graph(4), Flavor::Plain, {1, 8, 1}},
      {Matroid::complete_graph(4), Flavor::Aug, {1, 14, 14, 1}},
      {Matroid::fano(), Flavor::Plain, {1, 8, 1}},
      {Matroid::fano(), Flavor::Aug, {1, 15, 15, 1}},
  };
  for (const Row& row : table) {
    ChowRing a(row.m, row.fl);
    REQUIRE(a.ring().graded_ranks() == row.ranks);
    // Poincare symmetry
    std::vector<int> rev(row.ranks.rbegin(), row.ranks.rend());
    REQUIRE(row.ranks == rev);
  }
}

TEST_CASE("top degree and point class") {
  Matroid m = Matroid::uniform(3, 4);
  ChowRing plain(m, Flavor::Plain);
  ChowRing aug(m, Flavor::Aug);
  REQUIRE(plain.top_degree() == 2);
  REQUIRE(aug.top_degree() == 3);
  // the top power of h_E is the point class
  REQUIRE(plain.degree(plain.h_monomial(idx({{m.ground(), 2}}))) == 1);
  REQUIRE(aug.degree(aug.h_monomial(idx({{m.ground(), 3}}))) == 1);
}

TEST_CASE("incomparable divisor classes multiply to zero") {
  Matroid m = Matroid::uniform(3, 4);
  ChowRing a(m, Flavor::Plain);
  RingElement p = a.ring().mul(a.t_class(0b0001), a.t_class(0b0010));
  REQUIRE(p == a.ring().zero());
}

TEST_CASE("h classes expand to flat sums") {
  Matroid m = Matroid::uniform(2, 3);
  ChowRing a(m, Flavor::Plain);
  const QuotientRing& q = a.ring();
  // h_F = -(sum of t_G over G containing F)
  RingElement expect = q.sub(q.zero(), q.add(a.t_class(0b001), a.t_class(m.ground())));
  REQUIRE(a.h_class(0b001) == expect);
  REQUIRE_THROWS_AS(a.h_class(0), Error);          // empty flat has no h
  REQUIRE_THROWS_AS(a.h_class(0b011), Error);      // not a flat of U_{2,3}
}

TEST_CASE("Hall-Rado indicators on hand-checked indices") {
  Matroid m = Matroid::uniform(2, 3);
  Mask e0 = 0b001, e1 = 0b010, full = m.ground();
  // rank(E) = 2 over multiplicity 1: strict holds
  REQUIRE(dragon_hall_rado(m, idx({{full, 1}})));
  // multiplicity 2 exhausts the rank: weak holds, strict fails
  REQUIRE(hall_rado(m, idx({{full, 2}})));
  REQUIRE_FALSE(dragon_hall_rado(m, idx({{full, 2}})));
  // two atoms: union rank 2 = total 2, singleton subsets tie at 1
  REQUIRE(hall_rado(m, idx({{e0, 1}, {e1, 1}})));
  REQUIRE_FALSE(dragon_hall_rado(m, idx({{e0, 1}, {e1, 1}})));
  // overfilled atom
  REQUIRE_FALSE(hall_rado(m, idx({{e0, 2}})));
  // empty index is vacuously fine
  REQUIRE(dragon_hall_rado(m, idx({})));
  // nonempty-flat precondition
  REQUIRE_THROWS_AS(hall_rado(m, idx({{0, 1}})), Error);
}

TEST_CASE("degree formula enforces the total degree") {
  Matroid m = Matroid::uniform(2, 3);
  REQUIRE(degree_simplicial(m, idx({{m.ground(), 1}}), Flavor::Plain) == 1);
  REQUIRE(degree_simplicial(m, idx({{m.ground(), 2}}), Flavor::Aug) == 1);
  REQUIRE(degree_simplicial(m, idx({{0b001, 2}}), Flavor::Aug) == 0);
  REQUIRE(degree_simplicial(m, idx({{0b001, 1}, {m.ground(), 1}}), Flavor::Aug) == 1);
  try {
    degree_simplicial(m, idx({{m.ground(), 2}}), Flavor::Plain);
    FAIL("expected a total-degree error");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::WrongTotalDegree);
  }
}

TEST_CASE("ring degrees match the rule across a whole top layer") {
  Matroid m = Matroid::complete_graph(4);
  ChowRing a(m, Flavor::Plain);
  const FlatLattice& lat = a.lattice();
  // all two-flat products at the top degree
  for (int i = 1; i < lat.size(); ++i)
    for (int j = i; j < lat.size(); ++j) {
      FlatMultiIndex mi = i == j ? idx({{lat.flat(i), 2}})
                                 : idx({{lat.flat(i), 1}, {lat.flat(j), 1}});
      REQUIRE(a.degree(a.h_monomial(mi)) == degree_simplicial(m, mi, Flavor::Plain));
    }
}

TEST_CASE("augmented element classes coincide with their closure classes") {
  Matroid m = Matroid::uniform(2, 3);
  ChowRing a(m, Flavor::Aug);
  for (int e = 0; e < m.n(); ++e)
    REQUIRE(a.y_class(e) == a.h_class(m.closure_of(Mask(1) << e)));
  // plain rings have no element classes
  ChowRing p(m, Flavor::Plain);
  REQUIRE_THROWS_AS(p.y_class(0), Error);
}

TEST_CASE("loopy and rank-zero matroids are rejected") {
  Matroid loopy = Matroid::from_basis_lists(2, {{0}});
  REQUIRE_THROWS_AS(ChowRing(loopy, Flavor::Plain), Error);
}
