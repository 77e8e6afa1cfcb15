#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "mkr/json_io.hpp"

using namespace mkr;

TEST_CASE("big integers round-trip through strings") {
  Int big = 1;
  for (int i = 0; i < 100; ++i) big *= 2;
  Json j = int_to_json(big);
  REQUIRE(j.is_string());
  REQUIRE(int_from_json(j) == big);
  Json small = int_to_json(Int(-42));
  REQUIRE(small.is_number_integer());
  REQUIRE(int_from_json(small) == -42);
}

TEST_CASE("matroids round-trip") {
  for (const Matroid& m :
       {Matroid::uniform(2, 4), Matroid::complete_graph(4), Matroid::fano()}) {
    REQUIRE(matroid_from_json(matroid_to_json(m)) == m);
  }
}

TEST_CASE("family JSON builds the named matroids") {
  REQUIRE(matroid_from_json({{"family", "uniform"}, {"r", 2}, {"n", 4}}) ==
          Matroid::uniform(2, 4));
  REQUIRE(matroid_from_json({{"family", "boolean"}, {"n", 3}}) ==
          Matroid::boolean_matroid(3));
  REQUIRE(matroid_from_json({{"family", "fano"}}) == Matroid::fano());
  Json k4 = {{"family", "graphic"},
             {"vertices", 4},
             {"edges", Json::array({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})}};
  REQUIRE(matroid_from_json(k4) == Matroid::complete_graph(4));
  REQUIRE_THROWS_AS(matroid_from_json({{"family", "projective"}}), Error);
  REQUIRE_THROWS_AS(matroid_from_json(Json::array()), Error);
}

TEST_CASE("multi-indices round-trip in both syntaxes") {
  int n = 4;
  FlatMultiIndex mi =
      FlatMultiIndex::make({{0b0011, 2}, {full_mask(n), 1}, {0, 3}});
  REQUIRE(index_from_json(index_to_json(mi), n) == mi);
  // object shorthand
  Json obj = {{"0,1", 2}, {"E", 1}, {"empty", 3}};
  REQUIRE(index_from_json(obj, n) == mi);
  REQUIRE_THROWS_AS(index_from_json(Json{{"0,9", 1}}, n), Error);
}

TEST_CASE("ring classes round-trip") {
  Matroid m = Matroid::uniform(2, 3);
  ChowRing a(m, Flavor::Aug);
  const QuotientRing& q = a.ring();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int t = 0; t < 6; ++t) {
    std::vector<std::pair<int, Int>> coords;
    for (int p = 0; p < q.rank(); ++p) {
      int v = coeff(rng);
      if (v) coords.emplace_back(p, Int(v));
    }
    RingElement x = q.from_coords(std::move(coords));
    Json j = class_to_json(q, "chow_aug", x);
    REQUIRE(class_from_json(q, m.n(), j, "chow_aug") == x);
  }
  // element-variable specs survive the trip
  RingElement y = a.y_class(1);
  Json j = class_to_json(q, "chow_aug", y);
  REQUIRE(class_from_json(q, m.n(), j) == y);
}

TEST_CASE("ring name mismatches are rejected") {
  Matroid m = Matroid::uniform(2, 3);
  ChowRing a(m, Flavor::Plain);
  Json j = class_to_json(a.ring(), "chow", a.t_class(m.ground()));
  REQUIRE_THROWS_AS(class_from_json(a.ring(), m.n(), j, "k"), Error);
}

TEST_CASE("Snapper polynomials round-trip") {
  for (const Matroid& m : {Matroid::uniform(2, 3), Matroid::complete_graph(4)}) {
    SnapperPoly sp = snap_fy(m);
    Json j = snapper_to_json(sp);
    SnapperPoly back = snapper_from_json(j, m.n());
    REQUIRE(back.terms == sp.terms);
  }
}

TEST_CASE("zeta serialization carries the audit data") {
  KContext ctx(Matroid::uniform(2, 3), Flavor::Plain);
  Json j = zeta_to_json(ctx);
  REQUIRE(j["flavor"] == "plain");
  REQUIRE(int_from_json(j["det"]) == ctx.zeta().det);
  REQUIRE(j["matrix"].size() == static_cast<size_t>(ctx.zeta().fwd.rows));
  REQUIRE(j["chow_basis"].size() == j["k_basis"].size());
}
