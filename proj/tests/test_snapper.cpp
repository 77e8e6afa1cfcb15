#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "mkr/kring.hpp"
#include "mkr/snapper.hpp"

using namespace mkr;

namespace {

FlatMultiIndex idx(const std::vector<std::pair<Mask, long>>& raw) {
  return FlatMultiIndex::make(raw);
}

}  // namespace

TEST_CASE("the constant coefficient is always one") {
  for (const Matroid& m : {Matroid::uniform(2, 3), Matroid::uniform(3, 4),
                           Matroid::complete_graph(4), Matroid::fano()}) {
    SnapperPoly sp = snap_fy(m);
    REQUIRE(sp.coeff(idx({})) == 1);  // chi of the structure sheaf
    REQUIRE(snap_eval(sp, {}) == 1);  // evaluation at zero twists
  }
}

TEST_CASE("Snapper polynomial of the three-point line") {
  // The rank-2 uniform matroid on three atoms compactifies to a curve:
  // chi(a_E D_E) = a + 1, and the empty-set divisor contributes through
  // the relation identifying it with twice the top divisor.
  Matroid m = Matroid::uniform(2, 3);
  SnapperPoly sp = snap_fy(m);
  KContext ctx(m, Flavor::Plain);
  REQUIRE(sp.coeff(idx({{m.ground(), 1}})) ==
          snap_coeff_oracle(ctx, idx({{m.ground(), 1}})));
  // coefficients beyond the dimension vanish
  REQUIRE(sp.coeff(idx({{m.ground(), 2}})) == 0);
}

TEST_CASE("coefficients are Euler characteristics of twist monomials") {
  Matroid m = Matroid::uniform(3, 4);
  KContext ctx(m, Flavor::Plain);
  SnapperPoly sp = snap_fy(m);
  const FlatLattice& lat = ctx.kring().lattice();
  // single-flat indices across the whole lattice, exponents to the top
  for (int i = 0; i < lat.size(); ++i)
    for (long e = 1; e <= m.rank(); ++e) {
      FlatMultiIndex mi = idx({{lat.flat(i), e}});
      REQUIRE(sp.coeff(mi) == snap_coeff_oracle(ctx, mi));
    }
  // a non-chain support has a vanishing coefficient
  FlatMultiIndex cross = idx({{0b0001, 1}, {0b0010, 1}});
  REQUIRE(sp.coeff(cross) == 0);
  REQUIRE(snap_coeff_oracle(ctx, cross) == 0);
}

TEST_CASE("two-variable closed form") {
  for (const Matroid& m :
       {Matroid::uniform(2, 4), Matroid::complete_graph(4)}) {
    std::vector<Int> mu = char_poly_mu(m);
    int r = m.rank();
    for (long e = 0; e <= 2 * r; ++e)
      for (long f = 0; f <= 2 * r; ++f) {
        Int closed = snap_two_var_coeff(m, e, f);
        Int flag = snap_flag_coefficient({std::vector<Int>{}, mu},
                                         {0, r - 1}, {e, f});
        REQUIRE(closed == flag);
      }
    // spot-check the sign and the leading entries
    REQUIRE(snap_two_var_coeff(m, 0, 0) == 1);
    REQUIRE(snap_two_var_coeff(m, 1, 0) == -mu[1]);
  }
}

TEST_CASE("flag degree formulas validate their inputs") {
  Matroid m = Matroid::uniform(3, 4);
  std::vector<Mask> flag = {0, 0b0001, m.ground()};
  REQUIRE_NOTHROW(flag_degree_t(m, flag, {0, 1, 0}));
  // exponent vector of the wrong length
  REQUIRE_THROWS_AS(flag_degree_t(m, flag, {0, 1}), Error);
  // non-nested chain
  std::vector<Mask> bad = {0, 0b0001, 0b0010};
  REQUIRE_THROWS_AS(flag_degree_t(m, bad, {0, 0, 1}), Error);
}

TEST_CASE("flag degrees agree with ring degrees on a full flag") {
  Matroid m = Matroid::uniform(3, 4);
  ChowRing a(m, Flavor::Plain);
  std::vector<Mask> flag = {0, 0b0001, 0b0011, m.ground()};
  int k = 3;
  // one unit of freedom: sum m_i = r - k = 0
  std::vector<long> mm(k + 1, 0);
  std::vector<std::pair<Mask, long>> raw;
  for (int i = 1; i < k; ++i) raw.emplace_back(flag[i], mm[i] + 1);
  Int ring_deg = a.degree(a.t_monomial(FlatMultiIndex::make(raw)));
  REQUIRE(flag_degree_t(m, flag, mm) == ring_deg);
  REQUIRE(flag_degree_t_interior(m, flag, mm) == ring_deg);
}

TEST_CASE("deletion-contraction recursion on the three-point line") {
  Matroid m = Matroid::uniform(2, 3);
  SnapperPoly sp = snap_fy(m);
  FlatLattice lat(m);
  for (int g = 1; g + 1 < lat.size(); ++g)
    REQUIRE(snapper_recursion_holds(m, lat.flat(g), sp, 12, 5));
  // contracting a dependent set is degenerate but structurally consistent
  Matroid u24 = Matroid::uniform(2, 4);
  SnapperPoly sp24 = snap_fy(u24);
  REQUIRE(snapper_recursion_holds(u24, 0b0111, sp24, 4, 5));
}

TEST_CASE("recursion rejects improper subsets") {
  Matroid m = Matroid::uniform(2, 3);
  SnapperPoly sp = snap_fy(m);
  REQUIRE_THROWS_AS(snapper_recursion_holds(m, 0, sp, 4, 1), Error);
  REQUIRE_THROWS_AS(snapper_recursion_holds(m, m.ground(), sp, 4, 1), Error);
}
