// Command-line front end. Builds matroids from families or JSON files,
// constructs the Chow and K-rings, evaluates degrees, Euler characteristics
// and Snapper polynomials, and runs the acceptance self-test.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mkr/json_io.hpp"
#include "mkr/m0n.hpp"
#include "mkr/selftest.hpp"

namespace {

using namespace mkr;

struct CommonOpts {
  std::string family;
  int r = -1;
  int n = -1;
  std::string matroid_file;
  std::string flavor = "plain";
  bool json = false;
  bool force = false;
};

void add_matroid_options(CLI::App* cmd, CommonOpts& o, bool with_flavor = true) {
  cmd->add_option("--family", o.family,
                  "matroid family: uniform, boolean, fano, graphic-k4");
  cmd->add_option("--r", o.r, "rank (uniform family)");
  cmd->add_option("--n", o.n, "ground-set size (uniform/boolean families)");
  cmd->add_option("--matroid-file", o.matroid_file,
                  "JSON file with {\"n\",\"bases\"} or {\"family\",...}");
  if (with_flavor)
    cmd->add_option("--flavor", o.flavor, "ring flavor: plain or aug")
        ->check(CLI::IsMember({"plain", "aug"}));
  cmd->add_flag("--json", o.json, "machine-readable output");
  cmd->add_flag("--force", o.force, "bypass the size guards");
}

Flavor flavor_of(const CommonOpts& o) {
  return o.flavor == "aug" ? Flavor::Aug : Flavor::Plain;
}

Matroid load_matroid(const CommonOpts& o) {
  check(o.family.empty() != o.matroid_file.empty(),
        ErrorCode::InvalidParameters,
        "give exactly one of --family and --matroid-file");
  if (!o.matroid_file.empty()) {
    std::ifstream in(o.matroid_file);
    check(static_cast<bool>(in), ErrorCode::InvalidParameters,
          "cannot open " + o.matroid_file);
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      fail(ErrorCode::InvalidParameters,
           std::string("JSON parse error: ") + e.what());
    }
    return matroid_from_json(j);
  }
  if (o.family == "uniform") {
    check(o.r >= 0 && o.n >= 0, ErrorCode::InvalidParameters,
          "uniform family needs --r and --n");
    return Matroid::uniform(o.r, o.n);
  }
  if (o.family == "boolean") {
    check(o.n >= 0, ErrorCode::InvalidParameters, "boolean family needs --n");
    return Matroid::boolean_matroid(o.n);
  }
  if (o.family == "fano") return Matroid::fano();
  if (o.family == "graphic-k4" || o.family == "k4" || o.family == "K4")
    return Matroid::complete_graph(4);
  fail(ErrorCode::InvalidParameters, "unknown family: " + o.family);
}

// Ground sets larger than 8, and Boolean augmented rings past n = 5, blow
// up combinatorially; refuse them unless --force is given.
void guard_size(const Matroid& m, Flavor fl, bool force) {
  if (force) return;
  check(m.n() <= 8, ErrorCode::CombinatorialExplosion,
        "ground set has " + std::to_string(m.n()) +
            " > 8 elements; pass --force to proceed");
  check(!(fl == Flavor::Aug && m.rank() == m.n() && m.n() > 5),
        ErrorCode::CombinatorialExplosion,
        "Boolean augmented ring with n > 5; pass --force to proceed");
}

void emit(const CommonOpts& o, const Json& j,
          const std::function<void()>& human) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    human();
}

std::string set_to_string(Mask f) {
  if (f == 0) return "{}";
  std::string s = "{";
  bool first = true;
  for (int e = 0; e < 16; ++e)
    if (f >> e & 1) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
  return s + "}";
}

FlatMultiIndex parse_index(const std::string& text, int n) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::InvalidParameters,
         std::string("index JSON parse error: ") + e.what());
  }
  return index_from_json(j, n);
}

// --- subcommand bodies ------------------------------------------------------

int cmd_flats(const CommonOpts& o) {
  Matroid m = load_matroid(o);
  guard_size(m, Flavor::Plain, o.force);
  FlatLattice lat(m);
  Json by_rank = Json::array();
  for (int k = 0; k <= m.rank(); ++k) {
    Json row = Json::array();
    for (int i : lat.flats_of_rank(k)) {
      Json fl = Json::array();
      for (int e = 0; e < m.n(); ++e)
        if (lat.flat(i) >> e & 1) fl.push_back(e);
      row.push_back(fl);
    }
    by_rank.push_back(row);
  }
  Json out = {{"n", m.n()}, {"rank", m.rank()}, {"flats", by_rank}};
  emit(o, out, [&] {
    std::cout << "matroid on " << m.n() << " elements, rank " << m.rank()
              << ", " << lat.size() << " flats\n";
    for (int k = 0; k <= m.rank(); ++k) {
      const auto& idx = lat.flats_of_rank(k);
      std::cout << "rank " << k << " (" << idx.size() << "): ";
      for (size_t t = 0; t < idx.size(); ++t)
        std::cout << (t ? " " : "") << set_to_string(lat.flat(idx[t]));
      std::cout << "\n";
    }
  });
  return 0;
}

int cmd_charpoly(const CommonOpts& o) {
  Matroid m = load_matroid(o);
  guard_size(m, Flavor::Plain, o.force);
  FlatLattice lat(m);
  int r = m.rank();
  std::vector<Int> chi(r + 1, 0);
  for (int i = 0; i < lat.size(); ++i)
    chi[r - lat.rank_of_flat(i)] +=
        Int(static_cast<long>(lat.mobius(lat.bottom(), i)));
  std::vector<Int> mu = char_poly_mu(m);
  Json jchi = Json::array(), jmu = Json::array();
  for (const Int& c : chi) jchi.push_back(int_to_json(c));
  for (const Int& c : mu) jmu.push_back(int_to_json(c));
  Json out = {{"chi_coefficients_by_degree", jchi},
              {"reduced_mu", jmu}};
  emit(o, out, [&] {
    std::cout << "chi(t) =";
    bool lead = true;
    for (int d = r; d >= 0; --d) {
      if (chi[d] == 0) continue;
      Int c = chi[d];
      if (lead) {
        std::cout << " " << (c < 0 ? "-" : "");
      } else {
        std::cout << (c < 0 ? " - " : " + ");
      }
      Int a = abs(c);
      if (a != 1 || d == 0) std::cout << a.get_str();
      if (d > 0) std::cout << (a != 1 ? "*t" : "t");
      if (d > 1) std::cout << "^" << d;
      lead = false;
    }
    std::cout << "\nreduced coefficients mu^j (j = 0.." << r - 1 << "):";
    for (const Int& c : mu) std::cout << " " << c.get_str();
    std::cout << "\n";
  });
  return 0;
}

int cmd_ring_info(const CommonOpts& o) {
  Matroid m = load_matroid(o);
  Flavor fl = flavor_of(o);
  guard_size(m, fl, o.force);
  KContext ctx(m, fl);
  const QuotientRing& qa = ctx.chow().ring();
  const QuotientRing& qk = ctx.kring().ring();
  Json gr = Json::array();
  for (int v : qa.graded_ranks()) gr.push_back(v);
  Json out = {{"flavor", o.flavor},
              {"chow_rank", qa.rank()},
              {"chow_graded_ranks", gr},
              {"k_rank", qk.rank()},
              {"top_degree", ctx.chow().top_degree()},
              {"zeta_det", int_to_json(ctx.zeta().det)},
              {"zeta_pairs_audited", ctx.zeta().pairs_audited}};
  emit(o, out, [&] {
    std::cout << o.flavor << " rings of a rank-" << m.rank() << " matroid on "
              << m.n() << " elements\n";
    std::cout << "divisor-class ring rank " << qa.rank() << ", graded ranks (";
    const auto& g = qa.graded_ranks();
    for (size_t i = 0; i < g.size(); ++i) std::cout << (i ? "," : "") << g[i];
    std::cout << "), top degree " << ctx.chow().top_degree() << "\n";
    std::cout << "K-ring rank " << qk.rank() << " (free)\n";
    std::cout << "exceptional isomorphism: det " << ctx.zeta().det.get_str()
              << ", " << ctx.zeta().pairs_audited
              << " chain-monomial pairs audited\n";
  });
  return 0;
}

int cmd_degree(const CommonOpts& o, const std::string& index_text) {
  Matroid m = load_matroid(o);
  Flavor fl = flavor_of(o);
  guard_size(m, fl, o.force);
  FlatMultiIndex mi = parse_index(index_text, m.n());
  ChowRing a(m, fl);
  Int ring_deg = a.degree(a.h_monomial(mi));
  Int formula = degree_simplicial(m, mi, fl);
  check(ring_deg == formula, ErrorCode::InternalError,
        "ring degree " + ring_deg.get_str() +
            " disagrees with the combinatorial rule " + formula.get_str());
  Json out = {{"index", index_to_json(mi)},
              {"degree", int_to_json(ring_deg)},
              {"combinatorial_rule", int_to_json(formula)}};
  emit(o, out, [&] {
    std::cout << ring_deg.get_str() << "\n";
    std::cout << "ring degree and the Hall-Rado rule agree\n";
  });
  return 0;
}

int cmd_euler(const CommonOpts& o, const std::string& index_text) {
  Matroid m = load_matroid(o);
  Flavor fl = flavor_of(o);
  guard_size(m, fl, o.force);
  FlatMultiIndex mi = parse_index(index_text, m.n());
  KContext ctx(m, fl);
  Int chi = ctx.chi_eta(mi);
  bool want = fl == Flavor::Plain ? dragon_hall_rado(m, mi) : hall_rado(m, mi);
  check(chi == (want ? 1 : 0), ErrorCode::InternalError,
        "Euler characteristic " + chi.get_str() +
            " disagrees with the Hall-Rado indicator");
  Json out = {{"index", index_to_json(mi)},
              {"chi", int_to_json(chi)},
              {"hall_rado_indicator", want}};
  emit(o, out, [&] {
    std::cout << chi.get_str() << "\n";
    std::cout << "matches the " << (fl == Flavor::Plain ? "strict " : "")
              << "Hall-Rado indicator\n";
  });
  return 0;
}

int cmd_snapper(const CommonOpts& o, bool fy, bool verify, long max_degree,
                const std::string& index_text) {
  Matroid m = load_matroid(o);
  guard_size(m, Flavor::Plain, o.force);
  (void)fy;  // the flag-chain polynomial is the only basis offered
  SnapperPoly sp = snap_fy(m);
  Json out = {{"polynomial", snapper_to_json(sp)}};
  std::ostringstream report;
  if (!index_text.empty()) {
    FlatMultiIndex mi = parse_index(index_text, m.n());
    Int c = sp.coeff(mi);
    out["coefficient"] = int_to_json(c);
    report << "coefficient at " << mi.to_string() << ": " << c.get_str()
           << "\n";
  }
  if (verify) {
    KContext ctx(m, Flavor::Plain);
    const FlatLattice& lat = ctx.kring().lattice();
    long budget = max_degree >= 0 ? max_degree : m.rank();
    long checked = 0, bad = 0;
    std::vector<std::pair<Mask, long>> cur;
    std::function<void(int, long)> walk = [&](int start, long left) {
      FlatMultiIndex mi = FlatMultiIndex::make(cur);
      ++checked;
      if (sp.coeff(mi) != snap_coeff_oracle(ctx, mi)) ++bad;
      if (left == 0) return;
      for (int i = start; i < lat.size(); ++i)
        for (long e = 1; e <= left; ++e) {
          cur.emplace_back(lat.flat(i), e);
          walk(i + 1, left - e);
          cur.pop_back();
        }
    };
    walk(0, budget);
    out["verified_indices"] = checked;
    out["mismatches"] = bad;
    check(bad == 0, ErrorCode::InternalError,
          std::to_string(bad) + " coefficients disagree with the ring oracle");
    report << "all " << checked
           << " coefficients match the ring Euler characteristics (total <= "
           << budget << ")\n";
  }
  emit(o, out, [&] {
    std::cout << "Snapper polynomial, " << sp.size() << " terms\n";
    for (const auto& [mi, c] : sp.terms)
      std::cout << "  " << c.get_str() << " * rb(" << mi.to_string() << ")\n";
    std::cout << report.str();
  });
  return 0;
}

int cmd_zeta(const CommonOpts& o) {
  Matroid m = load_matroid(o);
  Flavor fl = flavor_of(o);
  guard_size(m, fl, o.force);
  KContext ctx(m, fl);
  Json out = zeta_to_json(ctx);
  emit(o, out, [&] {
    std::cout << "exceptional isomorphism, " << o.flavor << " flavor\n";
    std::cout << "rank " << ctx.kring().ring().rank() << ", det "
              << ctx.zeta().det.get_str() << ", " << ctx.zeta().pairs_audited
              << " chain-monomial pairs audited\n";
    std::cout << "(use --json for the full matrix)\n";
  });
  return 0;
}

int cmd_serre(const CommonOpts& o) {
  Matroid m = load_matroid(o);
  Flavor fl = flavor_of(o);
  guard_size(m, fl, o.force);
  KContext ctx(m, fl);
  SerreReport rep = serre_check(ctx);
  Json out = {{"flavor", o.flavor},
              {"with_canonical_class", rep.with_omega},
              {"without_canonical_class", rep.without_omega}};
  if (rep.omega_power_symmetry)
    out["power_symmetry"] = *rep.omega_power_symmetry;
  emit(o, out, [&] {
    std::cout << "duality pairing chi(xi) vs chi(omega * dual(xi)), "
              << o.flavor << " flavor\n";
    std::cout << "with the canonical class: "
              << (rep.with_omega ? "holds" : "fails") << "\n";
    std::cout << "without it: " << (rep.without_omega ? "holds" : "fails")
              << "\n";
    if (rep.omega_power_symmetry)
      std::cout << "power symmetry f(l) = (-1)^(r-1) f(1-l): "
                << (*rep.omega_power_symmetry ? "holds" : "fails") << "\n";
  });
  return 0;
}

int cmd_m0n(int n, bool json, bool force, bool verify,
            const std::string& psi_text, const std::string& index_text) {
  check(n >= 3, ErrorCode::InvalidParameters, "need --n of at least 3");
  M0n m0(n);
  Json out = {{"n", n}, {"dim", m0.dim()}};
  std::ostringstream report;
  report << "moduli of stable rational curves with " << n
         << " marks, dimension " << m0.dim() << "\n";
  if (!psi_text.empty()) {
    std::vector<Int> a;
    std::stringstream ss(psi_text);
    std::string tok;
    while (std::getline(ss, tok, ','))
      try {
        a.emplace_back(std::stol(tok));
      } catch (const std::exception&) {
        fail(ErrorCode::InvalidParameters, "bad --psi entry: " + tok);
      }
    Int v = snap_psi(n, a);
    out["psi_value"] = int_to_json(v);
    report << "chi(sum a_i psi_i) = " << v.get_str() << "\n";
  }
  if (!index_text.empty()) {
    FlatMultiIndex vm = parse_index(index_text, n - 1);
    bool c = cerberus_holds(vm);
    Int coeff = snap_m0n(n).coeff(vm);
    out["cerberus"] = c;
    out["coefficient"] = int_to_json(coeff);
    report << "Cerberus indicator " << (c ? 1 : 0) << ", coefficient "
           << coeff.get_str() << "\n";
  }
  if (psi_text.empty() && index_text.empty() && !verify) {
    SnapperPoly sp = snap_m0n(n);
    out["polynomial"] = snapper_to_json(sp);
    report << "subset Snapper polynomial has " << sp.size() << " terms\n";
  }
  if (verify) {
    Matroid braid = m0.braid();
    guard_size(braid, Flavor::Plain, force);
    KContext ctx(braid, Flavor::Plain);
    size_t checks = m0n_euler_check(m0, ctx);
    PresentationReport pr = m0n_presentation_check(m0, ctx);
    bool psi_ok = m0n_psi_specialization(n);
    out["euler_checks"] = checks;
    out["presentation_ok"] = pr.ok();
    out["psi_specialization_ok"] = psi_ok;
    check(pr.ok(), ErrorCode::InternalError, "presentation check failed");
    check(psi_ok, ErrorCode::InternalError, "psi specialization failed");
    report << checks << " Euler/Cerberus agreements, presentation verified, "
           << "psi specialization holds\n";
  }
  if (json)
    std::cout << out.dump(2) << "\n";
  else
    std::cout << report.str();
  return 0;
}

int cmd_selftest(bool json, uint64_t seed) {
  auto results = run_selftest(seed);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"detail", r.detail},
                   {"ms", r.ms}});
  }
  if (json) {
    std::cout << Json({{"all_passed", all}, {"criteria", arr}}).dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::ostringstream line;
      line << r.id << "  " << (r.passed ? "PASS" : "FAIL") << "  " << r.name;
      std::cout << line.str() << "\n      " << r.detail << "\n";
    }
    std::cout << (all ? "all 12 criteria passed" : "SOME CRITERIA FAILED")
              << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  // MKR_THREADS caps worker parallelism. Every computation is deterministic
  // and produces identical output for any value.
  if (const char* tenv = std::getenv("MKR_THREADS")) {
    char* end = nullptr;
    long t = std::strtol(tenv, &end, 10);
    if (!end || *end != '\0' || t < 1) {
      std::cerr << "invalid MKR_THREADS value: " << tenv << "\n";
      return 2;
    }
  }

  CLI::App app{"Exact Chow and K-rings of loopless matroids"};
  app.require_subcommand(1);

  CommonOpts flats_o, charpoly_o, info_o, degree_o, euler_o, snapper_o,
      zeta_o, serre_o;
  std::string degree_index, euler_index, snapper_index;
  bool snapper_fy = false, snapper_verify = false;
  long snapper_maxdeg = -1;
  int m0n_n = 0;
  bool m0n_json = false, m0n_force = false, m0n_verify = false;
  std::string m0n_psi, m0n_index;
  bool st_json = false;
  uint64_t st_seed = 20260819;

  CLI::App* c_flats = app.add_subcommand("flats", "list the lattice of flats by rank");
  add_matroid_options(c_flats, flats_o, false);

  CLI::App* c_charpoly =
      app.add_subcommand("charpoly", "characteristic polynomial coefficients");
  add_matroid_options(c_charpoly, charpoly_o, false);

  CLI::App* c_info =
      app.add_subcommand("ring-info", "ranks and audit data for both rings");
  add_matroid_options(c_info, info_o);

  CLI::App* c_degree =
      app.add_subcommand("degree", "degree of a divisor-class monomial h^m");
  c_degree->set_help_flag("--help", "print help");  // frees -h for --h below
  add_matroid_options(c_degree, degree_o);
  c_degree->add_option("--h", degree_index,
                       "multi-index JSON, e.g. '{\"0,1\":1,\"E\":1}'")
      ->required();

  CLI::App* c_euler = app.add_subcommand(
      "euler", "Euler characteristic of an eta-class monomial");
  add_matroid_options(c_euler, euler_o);
  c_euler->add_option("--eta", euler_index,
                      "multi-index JSON, e.g. '{\"E\":1}'")
      ->required();

  CLI::App* c_snapper =
      app.add_subcommand("snapper", "Snapper polynomial of the matroid");
  add_matroid_options(c_snapper, snapper_o, false);
  c_snapper->add_flag("--fy", snapper_fy,
                      "flag-chain basis over all flats (the default)");
  c_snapper->add_flag("--verify", snapper_verify,
                      "compare every coefficient with the ring oracle");
  c_snapper->add_option("--max-degree", snapper_maxdeg,
                        "total-degree bound for --verify (default: rank)");
  c_snapper->add_option("--index", snapper_index,
                        "print the coefficient at one multi-index");

  CLI::App* c_zeta =
      app.add_subcommand("zeta", "exceptional isomorphism audit");
  add_matroid_options(c_zeta, zeta_o);

  CLI::App* c_serre = app.add_subcommand("serre", "Serre duality report");
  add_matroid_options(c_serre, serre_o);

  CLI::App* c_m0n =
      app.add_subcommand("m0n", "moduli of stable rational curves");
  c_m0n->add_option("--n", m0n_n, "number of marked points")->required();
  c_m0n->add_flag("--json", m0n_json, "machine-readable output");
  c_m0n->add_flag("--force", m0n_force, "bypass the size guards");
  c_m0n->add_flag("--verify", m0n_verify,
                  "run the Euler, presentation and psi checks");
  c_m0n->add_option("--psi", m0n_psi,
                    "comma-separated twists a_0,...,a_{n-1} for chi(sum a_i psi_i)");
  c_m0n->add_option("--index", m0n_index,
                    "vertex-subset multi-index JSON for the Cerberus test");

  CLI::App* c_selftest =
      app.add_subcommand("selftest", "run the twelve acceptance criteria");
  c_selftest->add_flag("--json", st_json, "machine-readable output");
  c_selftest->add_option("--seed", st_seed, "seed for the sampled checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_flats->parsed()) return cmd_flats(flats_o);
    if (c_charpoly->parsed()) return cmd_charpoly(charpoly_o);
    if (c_info->parsed()) return cmd_ring_info(info_o);
    if (c_degree->parsed()) return cmd_degree(degree_o, degree_index);
    if (c_euler->parsed()) return cmd_euler(euler_o, euler_index);
    if (c_snapper->parsed())
      return cmd_snapper(snapper_o, snapper_fy, snapper_verify, snapper_maxdeg,
                         snapper_index);
    if (c_zeta->parsed()) return cmd_zeta(zeta_o);
    if (c_serre->parsed()) return cmd_serre(serre_o);
    if (c_m0n->parsed())
      return cmd_m0n(m0n_n, m0n_json, m0n_force, m0n_verify, m0n_psi, m0n_index);
    if (c_selftest->parsed()) return cmd_selftest(st_json, st_seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
