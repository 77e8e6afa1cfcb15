#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <vector>

#include "mkr/kring.hpp"

using namespace mkr;

TEST_CASE("K-ring rank equals the divisor-class ring rank") {
  for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
    Matroid m = Matroid::uniform(3, 4);
    ChowRing a(m, fl);
    KRing k(m, fl);
    REQUIRE(a.ring().rank() == k.ring().rank());
  }
}

TEST_CASE("the Euler functional matches its ring-level computation") {
  struct Item {
    Matroid m;
    Flavor fl;
  };
  for (const Item& it : {Item{Matroid::uniform(3, 4), Flavor::Plain},
                         Item{Matroid::uniform(3, 4), Flavor::Aug},
                         Item{Matroid::fano(), Flavor::Plain}}) {
    KContext ctx(it.m, it.fl);
    const QuotientRing& q = ctx.kring().ring();
    for (int p = 0; p < q.rank(); ++p) {
      RingElement e = q.from_coords({{p, 1}});
      REQUIRE(ctx.euler(e) == ctx.euler_direct(e));
    }
    REQUIRE(ctx.euler(q.one()) == 1);
  }
}

TEST_CASE("the structural isomorphism is unimodular") {
  for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
    KContext ctx(Matroid::uniform(3, 4), fl);
    const ZetaMap& z = ctx.zeta();
    REQUIRE((z.det == 1 || z.det == -1));
    REQUIRE(z.fwd.mul(z.inverse()) == IMat::identity(z.fwd.rows));
    REQUIRE(z.pairs_audited > 0);
  }
}

TEST_CASE("boundary classes map to their divisor counterparts") {
  Matroid m = Matroid::complete_graph(4);
  KContext ctx(m, Flavor::Plain);
  const ChowRing& a = ctx.chow();
  const KRing& k = ctx.kring();
  const QuotientRing& qa = a.ring();
  REQUIRE(ctx.zeta_apply(k.tau(Mask(0))) == a.t_class(Mask(0)));
  RingElement te = a.t_class(m.ground());
  RingElement expect = qa.mul(te, qa.unit_inverse(qa.add(qa.one(), te)));
  REQUIRE(ctx.zeta_apply(k.tau(m.ground())) == expect);
  // and the inverse map round-trips (single edges are the rank-1 flats)
  RingElement tf = k.tau(0b000001);
  REQUIRE(ctx.zeta_inv_apply(ctx.zeta_apply(tf)) == tf);
}

TEST_CASE("eta classes vanish exactly when Hall-Rado fails") {
  Matroid m = Matroid::uniform(2, 4);
  KContext ctx(m, Flavor::Plain);
  FlatMultiIndex top = FlatMultiIndex::make({{m.ground(), 1}});
  REQUIRE(ctx.chi_eta(top) == 1);
  FlatMultiIndex over = FlatMultiIndex::make({{m.ground(), 2}});
  REQUIRE(ctx.chi_eta(over) == 0);
}

TEST_CASE("line bundles expand as inverse tau factors") {
  Matroid m = Matroid::uniform(2, 3);
  KContext ctx(m, Flavor::Plain);
  const KRing& k = ctx.kring();
  const QuotientRing& q = k.ring();
  REQUIRE(k.line_bundle({}) == q.one());
  RingElement lb = k.line_bundle({{m.ground(), 1}});
  RingElement expect = q.unit_inverse(q.sub(q.one(), k.tau(m.ground())));
  REQUIRE(lb == expect);
  // negative twists invert
  RingElement neg = k.line_bundle({{m.ground(), -1}});
  REQUIRE(q.mul(lb, neg) == q.one());
}

TEST_CASE("Adams operations compose and fix the unit") {
  KContext ctx(Matroid::uniform(3, 4), Flavor::Aug);
  const QuotientRing& q = ctx.kring().ring();
  REQUIRE(ctx.adams(1) == IMat::identity(q.rank()));
  REQUIRE(ctx.adams(2).mul(ctx.adams(3)) == ctx.adams(6));
  REQUIRE(ctx.apply(ctx.adams(5), q.one()) == q.one());
}

TEST_CASE("duality is an involution fixing the unit") {
  KContext ctx(Matroid::uniform(2, 4), Flavor::Aug);
  const QuotientRing& q = ctx.kring().ring();
  const IMat& d = ctx.duality();
  REQUIRE(d.mul(d) == IMat::identity(q.rank()));
  REQUIRE(ctx.apply(d, q.one()) == q.one());
}

TEST_CASE("the rank functional is the constant coordinate") {
  Matroid m = Matroid::uniform(2, 3);
  KContext ctx(m, Flavor::Plain);
  const QuotientRing& q = ctx.kring().ring();
  REQUIRE(ctx.epsilon(q.one()) == 1);
  REQUIRE(ctx.epsilon(ctx.kring().tau(m.ground())) == 0);
  REQUIRE(ctx.epsilon(ctx.kring().line_bundle({{m.ground(), 3}})) == 1);
}

TEST_CASE("lambda operations satisfy the first identities") {
  KContext ctx(Matroid::uniform(2, 3), Flavor::Plain);
  const QuotientRing& q = ctx.kring().ring();
  RingElement x = ctx.kring().tau(Matroid::uniform(2, 3).ground());
  REQUIRE(ctx.lambda(0, x) == q.one());
  REQUIRE(ctx.lambda(1, x) == x);
}

TEST_CASE("Serre duality on the smallest nontrivial matroid") {
  KContext ctx(Matroid::uniform(2, 3), Flavor::Plain);
  SerreReport rep = serre_check(ctx);
  REQUIRE(rep.with_omega);
  REQUIRE(rep.omega_power_symmetry.has_value());
  REQUIRE(*rep.omega_power_symmetry);
}

TEST_CASE("shared and owning constructors build the same context") {
  Matroid m = Matroid::uniform(2, 4);
  KContext owning(m, Flavor::Plain);
  auto a = std::make_shared<ChowRing>(m, Flavor::Plain);
  auto k = std::make_shared<KRing>(m, Flavor::Plain);
  KContext shared(a, k);
  REQUIRE(owning.zeta().fwd == shared.zeta().fwd);
  REQUIRE(owning.zeta().det == shared.zeta().det);
}

TEST_CASE("restriction to the Boolean ambient ring is compatible") {
  KContext ambient(Matroid::boolean_matroid(3), Flavor::Plain);
  KContext target(Matroid::uniform(2, 3), Flavor::Plain);
  CompatibilityReport rep = compatibility_check(ambient, target);
  REQUIRE(rep.square_commutes);
  REQUIRE(rep.projection_formula);
}
