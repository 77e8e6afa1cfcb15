#pragma once

// Self-verification suite. Twelve acceptance criteria, each an exact
// integer check (tolerance zero), run over the standard test matroids:
// uniform U_{1,2}, U_{2,3}, U_{2,4}, U_{3,4}, U_{2,5}, boolean 1..4,
// graphic K4, and the Fano plane.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mkr/chow.hpp"
#include "mkr/kring.hpp"
#include "mkr/m0n.hpp"
#include "mkr/presentation.hpp"
#include "mkr/snapper.hpp"

namespace mkr {

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  double ms = 0.0;
};

inline std::vector<std::pair<std::string, Matroid>> selftest_suite() {
  return {{"U_{1,2}", Matroid::uniform(1, 2)},
          {"U_{2,3}", Matroid::uniform(2, 3)},
          {"U_{2,4}", Matroid::uniform(2, 4)},
          {"U_{3,4}", Matroid::uniform(3, 4)},
          {"U_{2,5}", Matroid::uniform(2, 5)},
          {"boolean(1)", Matroid::boolean_matroid(1)},
          {"boolean(2)", Matroid::boolean_matroid(2)},
          {"boolean(3)", Matroid::boolean_matroid(3)},
          {"boolean(4)", Matroid::boolean_matroid(4)},
          {"graphic K4", Matroid::complete_graph(4)},
          {"fano", Matroid::fano()}};
}

// Lazily built ring contexts, shared between criteria so construction cost
// is paid once (and measured by the first criterion).
class RingCache {
 public:
  RingCache() : suite_(selftest_suite()) {}

  const std::vector<std::pair<std::string, Matroid>>& suite() const {
    return suite_;
  }

  const Matroid& matroid(const std::string& name) const {
    for (const auto& [n, m] : suite_)
      if (n == name) return m;
    fail(ErrorCode::InvalidParameters, "unknown suite matroid: " + name);
  }

  KContext& get(const std::string& name, Flavor fl) {
    std::string key = name + (fl == Flavor::Plain ? "|plain" : "|aug");
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      auto ctx = std::make_shared<KContext>(matroid(name), fl);
      it = cache_.emplace(std::move(key), std::move(ctx)).first;
    }
    return *it->second;
  }

 private:
  std::vector<std::pair<std::string, Matroid>> suite_;
  std::map<std::string, std::shared_ptr<KContext>> cache_;
};

namespace detail {

inline std::string flavor_name(Flavor fl) {
  return fl == Flavor::Plain ? "plain" : "aug";
}

// Walks every multi-index over the nonempty flats with total <= budget,
// carrying the product of eta (or h) powers incrementally: visit(mi, acc)
// is called once per index, acc being the ring product for mi.
inline void walk_indices(const FlatLattice& lat, const QuotientRing& q,
                         const std::function<RingElement(int)>& gen,
                         long budget,
                         const std::function<void(const FlatMultiIndex&,
                                                  const RingElement&)>& visit) {
  std::vector<std::pair<Mask, long>> cur;
  std::function<void(int, long, const RingElement&)> rec =
      [&](int start, long left, const RingElement& acc) {
        visit(FlatMultiIndex::make(cur), acc);
        if (left == 0) return;
        for (int i = start; i < lat.size(); ++i) {
          if (lat.flat(i) == 0) continue;
          RingElement prod = acc;
          for (long e = 1; e <= left; ++e) {
            prod = q.mul(prod, gen(i));
            cur.emplace_back(lat.flat(i), e);
            rec(i + 1, left - e, prod);
            cur.pop_back();
          }
        }
      };
  rec(0, budget, q.one());
}

// Number of multi-indices with total <= budget over k slots.
inline Int index_count(int k, long budget) {
  return binom_nonneg(budget + k, k);
}

}  // namespace detail

// --- C1: ring construction, freeness, rank equality ------------------------

inline CriterionResult criterion_ranks(RingCache& rings) {
  CriterionResult r{"C1", "ring ranks agree and quotients are free", false, "", 0};
  std::ostringstream d;
  bool ok = true;
  for (const auto& [name, m] : rings.suite()) {
    for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
      KContext& ctx = rings.get(name, fl);
      int ra = ctx.chow().ring().rank();
      int rk = ctx.kring().ring().rank();
      if (ra != rk) {
        ok = false;
        d << name << " " << detail::flavor_name(fl) << ": chow rank " << ra
          << " != k rank " << rk << "; ";
      }
    }
  }
  if (ok)
    d << "22 ring pairs built torsion-free with matching ranks";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C2: exceptional isomorphism -------------------------------------------

inline CriterionResult criterion_zeta(RingCache& rings) {
  CriterionResult r{"C2", "exceptional isomorphism is unimodular and matches chain monomials",
                    false, "", 0};
  std::ostringstream d;
  bool ok = true;
  size_t pairs = 0;
  for (const auto& [name, m] : rings.suite()) {
    for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
      KContext& ctx = rings.get(name, fl);
      const ZetaMap& z = ctx.zeta();
      pairs += z.pairs_audited;
      if (!(z.det == 1 || z.det == -1)) {
        ok = false;
        d << name << " " << detail::flavor_name(fl) << ": det "
          << z.det.get_str() << "; ";
      }
      const QuotientRing& qa = ctx.chow().ring();
      const ChowRing& a = ctx.chow();
      const KRing& k = ctx.kring();
      RingElement te = a.t_class(m.ground());
      bool id_empty = ctx.zeta_apply(k.tau(Mask(0))) == a.t_class(Mask(0));
      bool id_full = ctx.zeta_apply(k.tau(m.ground())) ==
                     qa.mul(te, qa.unit_inverse(qa.add(qa.one(), te)));
      if (!id_empty || !id_full) {
        ok = false;
        d << name << " " << detail::flavor_name(fl)
          << ": boundary class identity failed; ";
      }
    }
  }
  if (ok)
    d << "all dets are +-1, " << pairs
      << " chain-monomial pairs audited, boundary classes map as required";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C3: Euler characteristics vs (dragon) Hall-Rado ------------------------

inline CriterionResult criterion_euler(RingCache& rings) {
  CriterionResult r{"C3", "Euler characteristics equal Hall-Rado indicators",
                    false, "", 0};
  std::ostringstream d;
  bool ok = true;
  long grand = 0;
  for (const auto& [name, m] : rings.suite()) {
    for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
      KContext& ctx = rings.get(name, fl);
      const FlatLattice& lat = ctx.kring().lattice();
      int nonempty = lat.size() - 1;
      long budget = m.rank();
      while (detail::index_count(nonempty, budget) < 200) ++budget;
      long n_checked = 0, n_bad = 0;
      const QuotientRing& q = ctx.kring().ring();
      detail::walk_indices(
          lat, q, [&](int i) { return ctx.kring().eta(lat.flat(i)); }, budget,
          [&](const FlatMultiIndex& mi, const RingElement& acc) {
            Int chi = ctx.euler(acc);
            bool want = fl == Flavor::Plain ? dragon_hall_rado(m, mi)
                                            : hall_rado(m, mi);
            ++n_checked;
            if (chi != (want ? 1 : 0)) ++n_bad;
          });
      grand += n_checked;
      if (n_bad || n_checked < 200) {
        ok = false;
        d << name << " " << detail::flavor_name(fl) << ": " << n_bad
          << " mismatches in " << n_checked << " indices; ";
      }
    }
  }
  if (ok) d << grand << " indices checked (>= 200 per matroid/flavor), all equal";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C4: top-degree h-monomials ---------------------------------------------

inline CriterionResult criterion_degrees(RingCache& rings) {
  CriterionResult r{"C4", "top-degree h-monomial degrees match the combinatorial rule",
                    false, "", 0};
  std::ostringstream d;
  bool ok = true;
  long grand = 0;
  for (const auto& [name, m] : rings.suite()) {
    for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
      KContext& ctx = rings.get(name, fl);
      const ChowRing& a = ctx.chow();
      const FlatLattice& lat = a.lattice();
      long n_checked = 0, n_bad = 0;
      detail::walk_indices(
          lat, a.ring(), [&](int i) { return a.h_class(lat.flat(i)); },
          a.top_degree(),
          [&](const FlatMultiIndex& mi, const RingElement& acc) {
            if (mi.total() != a.top_degree()) return;
            ++n_checked;
            if (a.degree(acc) != degree_simplicial(m, mi, fl)) ++n_bad;
          });
      grand += n_checked;
      if (n_bad) {
        ok = false;
        d << name << " " << detail::flavor_name(fl) << ": " << n_bad
          << " mismatches in " << n_checked << "; ";
      }
    }
  }
  if (ok) d << grand << " top-degree monomials, ring degree equals the 0/1 rule";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C5: Snapper polynomial -------------------------------------------------

inline CriterionResult criterion_snapper(RingCache& rings, uint64_t seed) {
  CriterionResult r{"C5", "Snapper coefficients match ring Euler characteristics",
                    false, "", 0};
  std::ostringstream d;
  bool ok = true;
  long coeffs = 0, twovar = 0, recpairs = 0;
  for (const std::string& name :
       {std::string("U_{2,3}"), std::string("U_{3,4}"), std::string("boolean(3)"),
        std::string("graphic K4")}) {
    const Matroid& m = rings.matroid(name);
    KContext& ctx = rings.get(name, Flavor::Plain);
    SnapperPoly sp = snap_fy(m);
    const FlatLattice& lat = ctx.kring().lattice();
    // every multi-index with total <= rank (one above the polynomial's
    // top): polynomial coefficient == chi of the tau-monomial, including
    // zero coefficients at non-chain supports
    long n_bad = 0, n_checked = 0;
    std::vector<std::pair<Mask, long>> cur;
    std::function<void(int, long)> walk = [&](int start, long left) {
      FlatMultiIndex mi = FlatMultiIndex::make(cur);
      ++n_checked;
      if (sp.coeff(mi) != snap_coeff_oracle(ctx, mi)) ++n_bad;
      if (left == 0) return;
      for (int i = start; i < lat.size(); ++i) {
        for (long e = 1; e <= left; ++e) {
          cur.emplace_back(lat.flat(i), e);
          walk(i + 1, left - e);
          cur.pop_back();
        }
      }
    };
    walk(0, m.rank());
    coeffs += n_checked;
    if (n_bad) {
      ok = false;
      d << name << ": " << n_bad << " coefficient mismatches; ";
    }
    // two-variable closed form vs both the flag-sum coefficient and the
    // polynomial itself
    std::vector<Int> mu = char_poly_mu(m);
    int rk = m.rank();
    long tv_bad = 0;
    for (long e = 0; e <= 2 * rk; ++e)
      for (long f = 0; f <= 2 * rk; ++f) {
        Int closed = snap_two_var_coeff(m, e, f);
        Int flag = snap_flag_coefficient({std::vector<Int>{}, mu},
                                         {0, rk - 1}, {e, f});
        if (closed != flag) ++tv_bad;
        if (e + f <= rk - 1) {
          std::vector<std::pair<Mask, long>> raw;
          if (e) raw.emplace_back(Mask(0), e);
          if (f) raw.emplace_back(m.ground(), f);
          if (closed != sp.coeff(FlatMultiIndex::make(raw))) ++tv_bad;
        }
        ++twovar;
      }
    if (tv_bad) {
      ok = false;
      d << name << ": " << tv_bad << " two-variable mismatches; ";
    }
    // deletion-style recursion at every proper nonempty flat, sampled
    // twist assignments
    for (int g = 1; g + 1 < lat.size(); ++g) {
      ++recpairs;
      if (!snapper_recursion_holds(m, lat.flat(g), sp, 20,
                                   seed + static_cast<uint64_t>(g))) {
        ok = false;
        d << name << ": recursion fails at " << mask_to_string(lat.flat(g))
          << "; ";
      }
    }
  }
  if (ok)
    d << coeffs << " coefficients, " << twovar << " two-variable values, "
      << recpairs << " recursion flats at 20 samples each";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C6: flag degree formulas ------------------------------------------------

inline CriterionResult criterion_flag_degrees(RingCache& rings) {
  CriterionResult r{"C6", "flag degree formulas match ring degrees", false, "", 0};
  std::ostringstream d;
  bool ok = true;
  long grand = 0, interior = 0;
  for (const std::string& name :
       {std::string("U_{3,4}"), std::string("graphic K4")}) {
    const Matroid& m = rings.matroid(name);
    KContext& ctx = rings.get(name, Flavor::Plain);
    const ChowRing& a = ctx.chow();
    const FlatLattice& lat = a.lattice();
    int rk = m.rank();
    long n_bad = 0;
    for (const auto& flag : lat.full_flags()) {
      int k = static_cast<int>(flag.size()) - 1;
      if (rk - k < 0) continue;
      std::vector<Mask> flats;
      for (int idx : flag) flats.push_back(lat.flat(idx));
      std::vector<long> mm(k + 1, 0);
      std::function<void(int, long)> rec = [&](int pos, long left) {
        if (pos == k) {
          mm[pos] = left;
          std::vector<std::pair<Mask, long>> raw;
          if (mm[0] > 0) raw.emplace_back(flats[0], mm[0]);
          for (int i = 1; i < k; ++i) raw.emplace_back(flats[i], mm[i] + 1);
          if (mm[k] > 0) raw.emplace_back(flats[k], mm[k]);
          FlatMultiIndex mi = FlatMultiIndex::make(raw);
          Int ring_deg = a.degree(a.t_monomial(mi));
          ++grand;
          if (flag_degree_t(m, flats, mm) != ring_deg) ++n_bad;
          if (mm[0] == 0 && mm[k] == 0) {
            ++interior;
            if (flag_degree_t_interior(m, flats, mm) != ring_deg) ++n_bad;
          }
          return;
        }
        for (long v = 0; v <= left; ++v) {
          mm[pos] = v;
          rec(pos + 1, left - v);
        }
      };
      rec(0, rk - k);
    }
    if (n_bad) {
      ok = false;
      d << name << ": " << n_bad << " mismatches; ";
    }
  }
  if (ok)
    d << grand << " flag exponent vectors (" << interior
      << " interior) match the ring degree";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C7: Serre duality --------------------------------------------------------

inline CriterionResult criterion_serre(RingCache& rings) {
  CriterionResult r{"C7", "Serre duality with the canonical class", false, "", 0};
  std::ostringstream d;
  bool ok = true;
  std::ostringstream finding;
  for (const auto& [name, m] : rings.suite()) {
    SerreReport pl = serre_check(rings.get(name, Flavor::Plain));
    if (!pl.with_omega || !pl.omega_power_symmetry ||
        !*pl.omega_power_symmetry) {
      ok = false;
      d << name << " plain: duality or power symmetry failed; ";
    }
    SerreReport au = serre_check(rings.get(name, Flavor::Aug));
    // Computed finding, frozen after surveying the whole suite: the
    // augmented identity holds with the canonical class present, and
    // fails without it. Recorded per matroid rather than assumed.
    if (!au.with_omega) {
      ok = false;
      d << name << " aug: identity with canonical class failed; ";
    }
    finding << (au.without_omega ? "+" : "-");
  }
  if (ok)
    d << "plain duality and power symmetry hold on all 11 matroids; "
      << "augmented holds with the canonical class on all 11 "
      << "(without it: [" << finding.str() << "] per matroid)";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C8: lambda-ring structure -------------------------------------------------

inline CriterionResult criterion_lambda(RingCache& rings, uint64_t seed) {
  CriterionResult r{"C8", "Adams operations, duality and rank form a lambda-ring",
                    false, "", 0};
  std::ostringstream d;
  bool ok = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-4, 4);
  auto random_elem = [&](const QuotientRing& q) {
    std::vector<std::pair<int, Int>> coords;
    for (int p = 0; p < q.rank(); ++p) {
      int v = dist(rng);
      if (v) coords.emplace_back(p, Int(v));
    }
    return q.from_coords(std::move(coords));
  };
  for (const auto& [name, m] : rings.suite()) {
    for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
      KContext& ctx = rings.get(name, fl);
      const QuotientRing& q = ctx.kring().ring();
      std::string where = name + " " + detail::flavor_name(fl);
      const IMat& p2 = ctx.adams(2);
      const IMat& p3 = ctx.adams(3);
      if (!(p2.mul(p2) == ctx.adams(4)) || !(p2.mul(p3) == ctx.adams(6)) ||
          !(p3.mul(p2) == ctx.adams(6))) {
        ok = false;
        d << where << ": composition law failed; ";
      }
      // multiplicativity: exhaustive on basis pairs for small rings,
      // sampled dense pairs for large ones
      bool hom = true;
      if (q.rank() <= 12) {
        for (int i = 0; i < q.rank() && hom; ++i)
          for (int j = i; j < q.rank() && hom; ++j) {
            RingElement ei = q.from_coords({{i, 1}});
            RingElement ej = q.from_coords({{j, 1}});
            hom = ctx.apply(p2, q.mul(ei, ej)) ==
                  q.mul(ctx.apply(p2, ei), ctx.apply(p2, ej));
          }
      } else {
        for (int t = 0; t < 12 && hom; ++t) {
          RingElement x = random_elem(q), y = random_elem(q);
          hom = ctx.apply(p2, q.mul(x, y)) ==
                q.mul(ctx.apply(p2, x), ctx.apply(p2, y));
        }
      }
      if (!hom) {
        ok = false;
        d << where << ": multiplicativity failed; ";
      }
      // annihilator polynomial of Psi^2
      int dim = ctx.chow().top_degree();
      IMat acc = IMat::identity(q.rank());
      for (int j = 0; j <= dim; ++j) {
        IMat f = p2;
        Int two_j = Int(1) << j;
        for (int i = 0; i < q.rank(); ++i) f.a[i][i] -= two_j;
        acc = acc.mul(f);
      }
      if (!(acc == IMat(q.rank(), q.rank()))) {
        ok = false;
        d << where << ": annihilator polynomial nonzero; ";
      }
      const IMat& dual = ctx.duality();
      if (!(dual.mul(dual) == IMat::identity(q.rank()))) {
        ok = false;
        d << where << ": duality is not an involution; ";
      }
      bool eps_ok = true;
      for (int t = 0; t < 8 && eps_ok; ++t) {
        RingElement x = random_elem(q), y = random_elem(q);
        eps_ok = ctx.epsilon(q.mul(x, y)) == ctx.epsilon(x) * ctx.epsilon(y) &&
                 ctx.epsilon(ctx.apply(dual, x)) == ctx.epsilon(x) &&
                 ctx.epsilon(ctx.apply(p3, x)) == ctx.epsilon(x);
      }
      if (!eps_ok) {
        ok = false;
        d << where << ": rank functional identities failed; ";
      }
      bool lam_ok = true;
      for (int t = 0; t < 3 && lam_ok; ++t) {
        RingElement x = random_elem(q);
        try {
          for (int j = 1; j <= 3; ++j) ctx.lambda(j, x);
        } catch (const Error&) {
          lam_ok = false;
        }
      }
      if (!lam_ok) {
        ok = false;
        d << where << ": lambda operation left the integral lattice; ";
      }
    }
  }
  if (ok)
    d << "composition, multiplicativity, annihilator, involution, rank and "
         "integral lambda checks pass on all 22 ring pairs";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C9: projection formula ------------------------------------------------------

inline CriterionResult criterion_projection(RingCache& rings) {
  CriterionResult r{"C9", "restriction to the Boolean ring satisfies the projection formula",
                    false, "", 0};
  std::ostringstream d;
  bool ok = true;
  struct Pair {
    std::string sub, amb;
  };
  for (const Pair& p : {Pair{"U_{2,3}", "boolean(3)"}, Pair{"U_{2,4}", "boolean(4)"}}) {
    for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
      KContext& amb = rings.get(p.amb, fl);
      KContext& tgt = rings.get(p.sub, fl);
      CompatibilityReport rep = compatibility_check(amb, tgt);
      if (!rep.square_commutes || !rep.projection_formula) {
        ok = false;
        d << p.sub << " in " << p.amb << " " << detail::flavor_name(fl)
          << ": square=" << rep.square_commutes
          << " projection=" << rep.projection_formula << "; ";
      }
    }
  }
  if (ok)
    d << "restriction squares commute and the projection formula holds on "
         "all Boolean basis classes, both flavors, both embeddings";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C10: presentation equivalence -------------------------------------------------

inline CriterionResult criterion_presentations(RingCache& rings) {
  CriterionResult r{"C10", "flat-generator and simplicial presentations agree",
                    false, "", 0};
  std::ostringstream d;
  bool ok = true;
  int count = 0;
  for (const auto& [name, m] : rings.suite()) {
    if (m.n() > 5) continue;
    ++count;
    for (Flavor fl : {Flavor::Plain, Flavor::Aug}) {
      KContext& ctx = rings.get(name, fl);
      const ChowRing& a = ctx.chow();
      std::string where = name + " " + detail::flavor_name(fl);
      if (!simplicial_relations_vanish(a)) {
        ok = false;
        d << where << ": simplicial relations do not vanish; ";
      }
      if (chain_h_span_rank(a) != a.ring().rank()) {
        ok = false;
        d << where << ": chain h-monomials do not span; ";
      }
      if (!monomial_certificates(m, fl)) {
        ok = false;
        d << where << ": ideal-membership certificates failed; ";
      }
    }
  }
  if (ok)
    d << "relations vanish, chain monomials span, and free-ring certificates "
         "verify on all " << count << " matroids with at most 5 elements, both flavors";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C11: moduli of stable rational curves ----------------------------------------

inline CriterionResult criterion_moduli(RingCache& rings) {
  CriterionResult r{"C11", "stable-curve moduli specialization checks", false, "", 0};
  (void)rings;
  std::ostringstream d;
  bool ok = true;
  long euler_checks = 0;
  for (int n : {4, 5}) {
    M0n m0(n);
    KContext ctx(m0.braid(), Flavor::Plain);
    long c = m0n_euler_check(m0, ctx);
    euler_checks += c;
    PresentationReport pr = m0n_presentation_check(m0, ctx);
    if (!pr.ok()) {
      ok = false;
      d << "n=" << n << ": presentation report"
        << " abstract=" << pr.abstract_rank << " chow=" << pr.chow_span_rank
        << " k=" << pr.k_span_rank << "; ";
    }
  }
  // psi polynomial for n = 4 is 1 + sum of the twists
  {
    bool psi_ok = true;
    for (int a0 = -1; a0 <= 2 && psi_ok; ++a0)
      for (int a1 = -1; a1 <= 2 && psi_ok; ++a1)
        for (int a2 = -1; a2 <= 2 && psi_ok; ++a2)
          for (int a3 = -1; a3 <= 2 && psi_ok; ++a3) {
            Int want = Int(1) + a0 + a1 + a2 + a3;
            psi_ok = snap_psi(4, {a0, a1, a2, a3}) == want;
          }
    if (!psi_ok) {
      ok = false;
      d << "n=4 psi polynomial is not 1 + sum; ";
    }
  }
  for (int n : {4, 5, 6}) {
    if (!m0n_psi_specialization(n)) {
      ok = false;
      d << "n=" << n << ": psi specialization identity failed; ";
    }
  }
  if (ok)
    d << euler_checks
      << " Cerberus/Euler agreements (n=4,5), presentations verified, psi "
         "specializations hold for n=4,5,6";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// --- C12: determinism and runtime ---------------------------------------------------

inline CriterionResult criterion_determinism(double elapsed_ms_so_far) {
  CriterionResult r{"C12", "deterministic rebuild and runtime budget", false, "", 0};
  std::ostringstream d;
  bool ok = true;
  // Rebuild a nontrivial context twice from scratch; every matrix and
  // serialized value must agree bit for bit.
  Matroid m = Matroid::uniform(3, 4);
  KContext c1(m, Flavor::Aug);
  KContext c2(m, Flavor::Aug);
  if (!(c1.zeta().fwd == c2.zeta().fwd) || !(c1.adams(2) == c2.adams(2)) ||
      !(c1.duality() == c2.duality())) {
    ok = false;
    d << "rebuild of the same ring differed; ";
  }
  SnapperPoly s1 = snap_fy(Matroid::complete_graph(4));
  SnapperPoly s2 = snap_fy(Matroid::complete_graph(4));
  if (!(s1.terms == s2.terms)) {
    ok = false;
    d << "Snapper polynomial rebuild differed; ";
  }
  if (elapsed_ms_so_far > 600000.0) {
    ok = false;
    d << "suite exceeded the 600s budget (" << elapsed_ms_so_far << " ms); ";
  }
  if (ok)
    d << "rebuilds are bit-identical; suite finished in "
      << static_cast<long>(elapsed_ms_so_far) << " ms (< 600000)";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------

inline std::vector<CriterionResult> run_selftest(uint64_t seed = 20260819) {
  std::vector<CriterionResult> out;
  RingCache rings;
  double total = 0;
  auto run = [&](const std::function<CriterionResult()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = f();
    } catch (const Error& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    total += r.ms;
    out.push_back(std::move(r));
  };
  run([&] { return criterion_ranks(rings); });
  run([&] { return criterion_zeta(rings); });
  run([&] { return criterion_euler(rings); });
  run([&] { return criterion_degrees(rings); });
  run([&] { return criterion_snapper(rings, seed); });
  run([&] { return criterion_flag_degrees(rings); });
  run([&] { return criterion_serre(rings); });
  run([&] { return criterion_lambda(rings, seed + 1); });
  run([&] { return criterion_projection(rings); });
  run([&] { return criterion_presentations(rings); });
  run([&] { return criterion_moduli(rings); });
  run([&] { return criterion_determinism(total); });
  // a failed criterion that died before setting id/name still needs labels
  static const char* ids[] = {"C1", "C2", "C3", "C4", "C5", "C6",
                              "C7", "C8", "C9", "C10", "C11", "C12"};
  static const char* names[] = {
      "ring ranks agree and quotients are free",
      "exceptional isomorphism is unimodular and matches chain monomials",
      "Euler characteristics equal Hall-Rado indicators",
      "top-degree h-monomial degrees match the combinatorial rule",
      "Snapper coefficients match ring Euler characteristics",
      "flag degree formulas match ring degrees",
      "Serre duality with the canonical class",
      "Adams operations, duality and rank form a lambda-ring",
      "restriction to the Boolean ring satisfies the projection formula",
      "flat-generator and simplicial presentations agree",
      "stable-curve moduli specialization checks",
      "deterministic rebuild and runtime budget"};
  for (size_t i = 0; i < out.size() && i < 12; ++i) {
    if (out[i].id.empty()) out[i].id = ids[i];
    if (out[i].name.empty()) out[i].name = names[i];
  }
  return out;
}

}  // namespace mkr
