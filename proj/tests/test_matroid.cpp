#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "mkr/matroid.hpp"

using namespace mkr;

namespace {

// Rank of a subset straight from the basis list: the largest intersection
// with any basis. Used as an oracle against the precomputed rank table.
int rank_by_bases(const Matroid& m, Mask s) {
  int best = 0;
  for (Mask b : m.bases()) best = std::max(best, popcount(b & s));
  return best;
}

// Whitney rank sum: chi(t) = sum over all subsets S of (-1)^{|S|} t^{r - rk S}.
std::vector<Int> whitney_char_poly(const Matroid& m) {
  std::vector<Int> chi(m.rank() + 1, 0);
  for (Mask s = 0; s <= m.ground(); ++s) {
    int d = m.rank() - m.rank_of(s);
    chi[d] += popcount(s) % 2 == 0 ? 1 : -1;
  }
  return chi;
}

}  // namespace

TEST_CASE("uniform matroids have the expected bases") {
  Matroid m = Matroid::uniform(2, 4);
  REQUIRE(m.n() == 4);
  REQUIRE(m.rank() == 2);
  REQUIRE(m.bases().size() == 6);
  REQUIRE(m.loopless());
  for (Mask b : m.bases()) REQUIRE(popcount(b) == 2);
}

TEST_CASE("rank oracle matches the basis definition") {
  for (const Matroid& m : {Matroid::uniform(2, 4), Matroid::complete_graph(4),
                           Matroid::fano(), Matroid::uniform(3, 4)}) {
    for (Mask s = 0; s <= m.ground(); ++s)
      REQUIRE(m.rank_of(s) == rank_by_bases(m, s));
  }
}

TEST_CASE("closure is extensive, monotone and idempotent") {
  for (const Matroid& m : {Matroid::uniform(2, 4), Matroid::complete_graph(4)}) {
    for (Mask s = 0; s <= m.ground(); ++s) {
      Mask c = m.closure_of(s);
      REQUIRE(subset_of(s, c));
      REQUIRE(m.rank_of(c) == m.rank_of(s));
      REQUIRE(m.closure_of(c) == c);
      for (Mask t = s;; t = (t + 1) | s) {
        if (t > m.ground()) break;
        REQUIRE(subset_of(c, m.closure_of(t)));
        if (t == m.ground()) break;
      }
    }
  }
}

TEST_CASE("invalid basis families are rejected") {
  REQUIRE_THROWS_AS(Matroid::from_basis_lists(4, {{0, 1}, {2}}), Error);
  REQUIRE_THROWS_AS(Matroid::from_basis_lists(4, {{0, 1}, {2, 3}}), Error);
  REQUIRE_THROWS_AS(Matroid::from_basis_lists(3, {}), Error);
  REQUIRE_THROWS_AS(Matroid::from_basis_lists(2, {{0, 5}}), Error);
  REQUIRE_THROWS_AS(Matroid::uniform(2, 17), Error);

  // exchange violation carries its code
  try {
    Matroid::from_basis_lists(4, {{0, 1}, {2, 3}});
    FAIL("expected an exchange-axiom error");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::ExchangeAxiomViolation);
    REQUIRE(e.is_input_error());
  }
}

TEST_CASE("matroids with loops are detected") {
  Matroid m = Matroid::from_basis_lists(2, {{0}});
  REQUIRE_FALSE(m.loopless());
  REQUIRE(m.loop_set() == Mask(2));
}

TEST_CASE("graphic constructor and complete-graph shortcut agree") {
  Matroid g = Matroid::graphic(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  REQUIRE(g == Matroid::complete_graph(4));
  REQUIRE(g.n() == 6);
  REQUIRE(g.rank() == 3);
  REQUIRE(g.bases().size() == 16);  // Cayley: 4^{4-2} spanning trees
}

TEST_CASE("the Fano plane has 28 bases") {
  Matroid f = Matroid::fano();
  REQUIRE(f.n() == 7);
  REQUIRE(f.rank() == 3);
  REQUIRE(f.bases().size() == 28);  // C(7,3) = 35 minus 7 lines
}

TEST_CASE("lattice of flats of U_{2,3}") {
  Matroid m = Matroid::uniform(2, 3);
  FlatLattice lat(m);
  REQUIRE(lat.size() == 5);
  REQUIRE(lat.flat(lat.bottom()) == 0);
  REQUIRE(lat.flat(lat.top()) == m.ground());
  REQUIRE(lat.flats_of_rank(1).size() == 3);
  REQUIRE(lat.mobius(lat.bottom(), lat.top()) == 2);
}

TEST_CASE("flat counts per rank") {
  FlatLattice k4(Matroid::complete_graph(4));
  std::vector<size_t> counts;
  for (int r = 0; r <= 3; ++r) counts.push_back(k4.flats_of_rank(r).size());
  REQUIRE(counts == std::vector<size_t>{1, 6, 7, 1});

  FlatLattice b3(Matroid::boolean_matroid(3));
  REQUIRE(b3.size() == 8);

  FlatLattice fano(Matroid::fano());
  REQUIRE(fano.flats_of_rank(1).size() == 7);
  REQUIRE(fano.flats_of_rank(2).size() == 7);  // the seven lines
  for (int i : fano.flats_of_rank(2)) REQUIRE(popcount(fano.flat(i)) == 3);
}

TEST_CASE("join agrees with closure of the union") {
  Matroid m = Matroid::uniform(3, 4);
  FlatLattice lat(m);
  for (int i = 0; i < lat.size(); ++i)
    for (int j = 0; j < lat.size(); ++j) {
      int k = lat.join(i, j);
      REQUIRE(lat.flat(k) == m.closure_of(lat.flat(i) | lat.flat(j)));
    }
}

TEST_CASE("Moebius values convolve to the identity") {
  Matroid m = Matroid::uniform(3, 4);
  FlatLattice lat(m);
  for (int f = 0; f < lat.size(); ++f)
    for (int h = 0; h < lat.size(); ++h) {
      if (!lat.leq(f, h)) continue;
      long long s = 0;
      for (int g = 0; g < lat.size(); ++g)
        if (lat.leq(f, g) && lat.leq(g, h)) s += lat.mobius(g, h);
      REQUIRE(s == (f == h ? 1 : 0));
    }
}

TEST_CASE("characteristic polynomial matches the Whitney rank sum") {
  for (const Matroid& m : {Matroid::uniform(2, 3), Matroid::complete_graph(4),
                           Matroid::fano(), Matroid::boolean_matroid(4)}) {
    std::vector<Int> whitney = whitney_char_poly(m);
    std::vector<Int> mu = char_poly_mu(m);
    // reassemble chi(t) = (t - 1) * sum_j (-1)^j mu_j t^{r-1-j}
    int r = m.rank();
    std::vector<Int> chi(r + 1, 0);
    for (int j = 0; j < r; ++j) {
      Int c = j % 2 == 0 ? mu[j] : -mu[j];
      chi[r - j] += c;      // t * t^{r-1-j}
      chi[r - 1 - j] -= c;  // -1 * t^{r-1-j}
    }
    REQUIRE(chi == whitney);
  }
}

TEST_CASE("reduced characteristic coefficients of small matroids") {
  REQUIRE(char_poly_mu(Matroid::uniform(2, 3)) == std::vector<Int>{1, 2});
  REQUIRE(char_poly_mu(Matroid::complete_graph(4)) ==
          std::vector<Int>{1, 5, 6});
  REQUIRE(char_poly_mu(Matroid::boolean_matroid(3)) ==
          std::vector<Int>{1, 2, 1});
}

TEST_CASE("minors of uniform matroids are uniform") {
  Matroid m = Matroid::uniform(3, 5);
  // contract one element: rank drops, remaining elements stay uniform
  Matroid c = m.minor(Mask(1) << 4, m.ground());
  REQUIRE(c == Matroid::uniform(2, 4));
  // restriction to the first three elements
  Matroid r = m.restriction(0b00111);
  REQUIRE(r == Matroid::uniform(3, 3));
}

TEST_CASE("duality") {
  REQUIRE(Matroid::uniform(2, 4).dual() == Matroid::uniform(2, 4));
  REQUIRE(Matroid::uniform(2, 3).dual() == Matroid::uniform(1, 3));
  Matroid f = Matroid::fano();
  REQUIRE(f.dual().rank() == 4);
  REQUIRE(f.dual().dual() == f);
}
