#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "mkr/m0n.hpp"

using namespace mkr;

namespace {

FlatMultiIndex idx(const std::vector<std::pair<Mask, long>>& raw) {
  return FlatMultiIndex::make(raw);
}

}  // namespace

TEST_CASE("the braid matroid is the complete-graph matroid") {
  M0n four(4);
  REQUIRE(four.vertices() == 3);
  REQUIRE(four.dim() == 1);
  REQUIRE(four.braid() == Matroid::complete_graph(3));
  M0n five(5);
  REQUIRE(five.braid() == Matroid::complete_graph(4));
  REQUIRE(five.braid().n() == 6);
}

TEST_CASE("vertex subsets map to edge flats") {
  M0n five(5);
  // edges of K4 are enumerated (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
  REQUIRE(five.flat_of(0b0011) == 0b000001);  // the single edge {0,1}
  REQUIRE(five.flat_of(0b0111) == 0b001011);  // triangle on {0,1,2}
  REQUIRE(five.flat_of(0b1111) == five.braid().ground());
  REQUIRE_THROWS_AS(five.flat_of(0b0001), Error);  // needs two vertices
  // the images are flats of the braid matroid
  REQUIRE(five.braid().is_flat(five.flat_of(0b0111)));
}

TEST_CASE("Cerberus indicator on hand-checked indices") {
  // four marks: one vertex triple available
  REQUIRE(cerberus_holds(idx({})));
  REQUIRE(cerberus_holds(idx({{0b0111, 1}})));
  REQUIRE_FALSE(cerberus_holds(idx({{0b0111, 2}})));
  // five marks: two triangles sharing an edge
  REQUIRE(cerberus_holds(idx({{0b0111, 1}, {0b1011, 1}})));
  REQUIRE_FALSE(cerberus_holds(idx({{0b0111, 2}, {0b1011, 1}})));
  // a two-vertex subset never passes (its stratum has no moduli), and a
  // one-vertex subset violates the precondition
  REQUIRE_FALSE(cerberus_holds(idx({{0b0011, 1}})));
  REQUIRE_THROWS_AS(cerberus_holds(idx({{0b0001, 1}})), Error);
}

TEST_CASE("subset Snapper polynomial for four marks") {
  SnapperPoly sp = snap_m0n(4);
  REQUIRE(sp.size() == 2);
  REQUIRE(sp.coeff(idx({})) == 1);
  REQUIRE(sp.coeff(idx({{0b0111, 1}})) == 1);
}

TEST_CASE("psi polynomial for four marks is one plus the twist sum") {
  for (long a0 : {-2L, 0L, 3L})
    for (long a1 : {-1L, 2L})
      REQUIRE(snap_psi(4, {a0, a1, 1, -1}) == Int(1) + a0 + a1);
  // chi of the structure sheaf is one for every n
  REQUIRE(snap_psi(5, {0, 0, 0, 0, 0}) == 1);
  REQUIRE(snap_psi(6, {0, 0, 0, 0, 0, 0}) == 1);
  REQUIRE_THROWS_AS(snap_psi(4, {1, 2}), Error);
}

TEST_CASE("Euler characteristics match the Cerberus rule") {
  for (int n : {4, 5}) {
    M0n m0(n);
    KContext ctx(m0.braid(), Flavor::Plain);
    size_t count = m0n_euler_check(m0, ctx);
    REQUIRE(count == (n == 4 ? 5u : 78u));
  }
}

TEST_CASE("presentation ranks and relations verify") {
  for (int n : {4, 5}) {
    M0n m0(n);
    KContext ctx(m0.braid(), Flavor::Plain);
    PresentationReport rep = m0n_presentation_check(m0, ctx);
    REQUIRE(rep.ok());
    // moduli Chow ranks: the projective line (1,1) for n = 4, the
    // quintic del Pezzo surface (1,5,1) for n = 5
    REQUIRE(rep.abstract_rank == (n == 4 ? 2 : 7));
  }
}

TEST_CASE("psi specialization identity") {
  for (int n : {4, 5, 6}) REQUIRE(m0n_psi_specialization(n));
}

TEST_CASE("the context must match the braid matroid") {
  M0n m0(5);
  KContext wrong(Matroid::uniform(2, 3), Flavor::Plain);
  REQUIRE_THROWS_AS(m0n_euler_check(m0, wrong), Error);
}
