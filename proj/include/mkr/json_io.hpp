#pragma once

// JSON serialization for the public value types: matroids, quotient-ring
// classes, flat multi-indices, Snapper polynomials, and the zeta matrix.
// Numbers that fit in 64 bits are emitted as JSON integers, anything
// larger as a decimal string; both are accepted on input.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mkr/chow.hpp"
#include "mkr/kring.hpp"
#include "mkr/matroid.hpp"
#include "mkr/snapper.hpp"

namespace mkr {

using Json = nlohmann::ordered_json;

inline Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<int64_t>()));
  if (j.is_number_unsigned()) {
    uint64_t u = j.get<uint64_t>();
    return Int(static_cast<unsigned long>(u));
  }
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidParameters,
           "not an integer literal: " + j.get<std::string>());
    }
  }
  fail(ErrorCode::InvalidParameters, "expected an integer or decimal string");
}

// ---------------------------------------------------------------------------
// Matroids. Canonical form lists the bases; family descriptions are
// accepted on input.

inline Json matroid_to_json(const Matroid& m) {
  Json bases = Json::array();
  for (Mask b : m.bases()) {
    Json lst = Json::array();
    for (int e : mask_elements(b)) lst.push_back(e);
    bases.push_back(std::move(lst));
  }
  return Json{{"n", m.n()}, {"bases", std::move(bases)}};
}

inline Matroid matroid_from_json(const Json& j) {
  check(j.is_object(), ErrorCode::InvalidParameters,
        "matroid JSON must be an object");
  if (j.contains("family")) {
    check(j["family"].is_string(), ErrorCode::InvalidParameters,
          "family must be a string");
    std::string fam = j["family"].get<std::string>();
    auto int_field = [&](const char* key) {
      check(j.contains(key) && j[key].is_number_integer(),
            ErrorCode::InvalidParameters,
            std::string("family '") + fam + "' needs integer field '" + key + "'");
      return j[key].get<int>();
    };
    if (fam == "uniform") return Matroid::uniform(int_field("r"), int_field("n"));
    if (fam == "boolean") return Matroid::boolean_matroid(int_field("n"));
    if (fam == "fano") return Matroid::fano();
    if (fam == "graphic") {
      int vertices = int_field("vertices");
      check(j.contains("edges") && j["edges"].is_array(),
            ErrorCode::InvalidParameters, "graphic family needs an edge list");
      std::vector<std::pair<int, int>> edges;
      for (const Json& e : j["edges"]) {
        check(e.is_array() && e.size() == 2 && e[0].is_number_integer() &&
                  e[1].is_number_integer(),
              ErrorCode::InvalidParameters, "edges must be [a, b] pairs");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      return Matroid::graphic(vertices, edges);
    }
    fail(ErrorCode::InvalidParameters, "unknown matroid family: " + fam);
  }
  check(j.contains("n") && j["n"].is_number_integer(),
        ErrorCode::InvalidParameters, "matroid JSON needs integer 'n'");
  check(j.contains("bases") && j["bases"].is_array(),
        ErrorCode::InvalidParameters, "matroid JSON needs array 'bases'");
  std::vector<std::vector<int>> lists;
  for (const Json& b : j["bases"]) {
    check(b.is_array(), ErrorCode::InvalidParameters, "each basis is an array");
    std::vector<int> lst;
    for (const Json& e : b) {
      check(e.is_number_integer(), ErrorCode::InvalidParameters,
            "basis elements are integers");
      lst.push_back(e.get<int>());
    }
    lists.push_back(std::move(lst));
  }
  return Matroid::from_basis_lists(j["n"].get<int>(), lists);
}

// ---------------------------------------------------------------------------
// Variable specs and monomials. A monomial is an alternating list
//   [spec, exponent, spec, exponent, ...]
// where spec is ["flat", [elements]], the shorthand "E" or "empty", or
// ["y", e] for an element variable.

inline Json flat_spec_to_json(Mask f) {
  Json lst = Json::array();
  for (int e : mask_elements(f)) lst.push_back(e);
  return Json::array({"flat", std::move(lst)});
}

// Parses a flat-or-element spec. Returns (mask, -1) for a flat spec and
// (0, e) for an element spec. `n` resolves the "E" shorthand.
inline std::pair<Mask, int> spec_from_json(const Json& j, int n) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "E") return {full_mask(n), -1};
    if (s == "empty") return {Mask(0), -1};
    fail(ErrorCode::InvalidParameters, "unknown variable shorthand: " + s);
  }
  check(j.is_array() && j.size() == 2, ErrorCode::InvalidParameters,
        "variable spec must be [\"flat\", [...]] or [\"y\", e]");
  check(j[0].is_string(), ErrorCode::InvalidParameters,
        "variable spec tag must be a string");
  std::string tag = j[0].get<std::string>();
  if (tag == "y") {
    check(j[1].is_number_integer(), ErrorCode::InvalidParameters,
          "element variable needs an integer index");
    int e = j[1].get<int>();
    check(e >= 0 && e < n, ErrorCode::InvalidParameters,
          "element index out of range");
    return {Mask(0), e};
  }
  check(tag == "flat", ErrorCode::InvalidParameters,
        "unknown variable tag: " + tag);
  check(j[1].is_array(), ErrorCode::InvalidParameters,
        "flat spec needs an element list");
  Mask f = 0;
  for (const Json& e : j[1]) {
    check(e.is_number_integer(), ErrorCode::InvalidParameters,
          "flat elements are integers");
    int v = e.get<int>();
    check(v >= 0 && v < n, ErrorCode::InvalidParameters,
          "flat element out of range");
    f |= Mask(1) << v;
  }
  return {f, -1};
}

// ---------------------------------------------------------------------------
// Ring classes. The ring name records flavor and ring kind; parsing
// resolves variables against a concrete quotient ring and returns the
// normal form.

inline Json class_to_json(const QuotientRing& q, const std::string& ring_name,
                          const RingElement& x) {
  Json terms = Json::array();
  Poly rep = q.representative(x);
  for (const auto& [e, c] : rep.terms()) {
    Json mono = Json::array();
    for (int i = 0; i < q.vars()->size(); ++i) {
      if (!e[i]) continue;
      const Var& v = q.vars()->var(i);
      if (v.kind == Var::Kind::Flat)
        mono.push_back(flat_spec_to_json(v.mask));
      else
        mono.push_back(Json::array({"y", v.elem}));
      mono.push_back(static_cast<int>(e[i]));
    }
    terms.push_back(Json{{"monomial", std::move(mono)}, {"coeff", int_to_json(c)}});
  }
  return Json{{"ring", ring_name}, {"terms", std::move(terms)}};
}

inline RingElement class_from_json(const QuotientRing& q, int n, const Json& j,
                                   const std::string& expect_ring = "") {
  check(j.is_object() && j.contains("terms") && j["terms"].is_array(),
        ErrorCode::InvalidParameters, "class JSON needs a 'terms' array");
  if (!expect_ring.empty()) {
    check(j.contains("ring") && j["ring"].is_string() &&
              j["ring"].get<std::string>() == expect_ring,
          ErrorCode::InvalidParameters,
          "class JSON is not over ring '" + expect_ring + "'");
  }
  Poly p(q.vars());
  for (const Json& t : j["terms"]) {
    check(t.is_object() && t.contains("monomial") && t.contains("coeff"),
          ErrorCode::InvalidParameters,
          "each term needs 'monomial' and 'coeff'");
    const Json& mono = t["monomial"];
    check(mono.is_array() && mono.size() % 2 == 0,
          ErrorCode::InvalidParameters,
          "monomial must alternate variable specs and exponents");
    Expo ex(q.vars()->size(), 0);
    for (size_t i = 0; i + 1 < mono.size(); i += 2) {
      auto [f, el] = spec_from_json(mono[i], n);
      check(mono[i + 1].is_number_integer() && mono[i + 1].get<int>() >= 0,
            ErrorCode::InvalidParameters, "exponent must be a nonnegative integer");
      int idx = el >= 0 ? q.vars()->find_elem(el) : q.vars()->find_flat(f);
      if (el >= 0)
        check(idx >= 0, ErrorCode::InvalidParameters,
              "ring has no element variables");
      else
        check(idx >= 0, ErrorCode::NotAFlat,
              mask_to_string(f) + " is not a flat of this matroid");
      ex[idx] = static_cast<uint8_t>(ex[idx] + mono[i + 1].get<int>());
    }
    p += Poly::monomial(q.vars(), ex, int_from_json(t["coeff"]));
  }
  return q.nf_poly(p);
}

// ---------------------------------------------------------------------------
// Flat multi-indices and Snapper polynomials.

inline Json index_to_json(const FlatMultiIndex& mi) {
  Json out = Json::array();
  for (const auto& [f, m] : mi.entries) {
    out.push_back(flat_spec_to_json(f));
    out.push_back(m);
  }
  return out;
}

inline FlatMultiIndex index_from_json(const Json& j, int n) {
  std::vector<std::pair<Mask, long>> raw;
  if (j.is_object()) {
    // convenience form: {"0,1": 2, "E": 1, "empty": 1}
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      Mask f = 0;
      if (key == "E") {
        f = full_mask(n);
      } else if (key == "empty" || key.empty()) {
        f = 0;
      } else {
        size_t pos = 0;
        while (pos < key.size()) {
          size_t next = key.find(',', pos);
          std::string tok = key.substr(
              pos, next == std::string::npos ? std::string::npos : next - pos);
          try {
            int e = std::stoi(tok);
            check(e >= 0 && e < n, ErrorCode::InvalidParameters,
                  "flat element out of range in key '" + key + "'");
            f |= Mask(1) << e;
          } catch (const Error&) {
            throw;
          } catch (const std::exception&) {
            fail(ErrorCode::InvalidParameters, "bad flat key: '" + key + "'");
          }
          if (next == std::string::npos) break;
          pos = next + 1;
        }
      }
      check(it.value().is_number_integer(), ErrorCode::InvalidParameters,
            "multiplicities must be integers");
      raw.emplace_back(f, it.value().get<long>());
    }
    return FlatMultiIndex::make(raw);
  }
  check(j.is_array() && j.size() % 2 == 0, ErrorCode::InvalidParameters,
        "index must alternate flat specs and multiplicities");
  for (size_t i = 0; i + 1 < j.size(); i += 2) {
    auto [f, el] = spec_from_json(j[i], n);
    check(el < 0, ErrorCode::InvalidParameters,
          "element variables cannot appear in a flat multi-index");
    check(j[i + 1].is_number_integer(), ErrorCode::InvalidParameters,
          "multiplicities must be integers");
    raw.emplace_back(f, j[i + 1].get<long>());
  }
  return FlatMultiIndex::make(raw);
}

inline Json snapper_to_json(const SnapperPoly& p) {
  Json terms = Json::array();
  for (const auto& [mi, c] : p.terms)
    terms.push_back(Json{{"index", index_to_json(mi)}, {"coeff", int_to_json(c)}});
  return Json{{"basis", "rising"}, {"terms", std::move(terms)}};
}

inline SnapperPoly snapper_from_json(const Json& j, int n) {
  check(j.is_object() && j.contains("basis") && j["basis"].is_string() &&
            j["basis"].get<std::string>() == "rising",
        ErrorCode::InvalidParameters,
        "snapper JSON must declare the rising-binomial basis");
  check(j.contains("terms") && j["terms"].is_array(),
        ErrorCode::InvalidParameters, "snapper JSON needs a 'terms' array");
  SnapperPoly p;
  for (const Json& t : j["terms"]) {
    check(t.is_object() && t.contains("index") && t.contains("coeff"),
          ErrorCode::InvalidParameters, "each term needs 'index' and 'coeff'");
    p.add(index_from_json(t["index"], n), int_from_json(t["coeff"]));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Zeta matrix export: the change-of-basis matrix together with both basis
// monomial lists (row basis from the Chow side, column basis from the
// K side).

inline Json basis_monomial_json(const QuotientRing& q, int pos) {
  Json mono = Json::array();
  const Expo& e = q.basis_expo(pos);
  for (int i = 0; i < q.vars()->size(); ++i) {
    if (!e[i]) continue;
    const Var& v = q.vars()->var(i);
    if (v.kind == Var::Kind::Flat)
      mono.push_back(flat_spec_to_json(v.mask));
    else
      mono.push_back(Json::array({"y", v.elem}));
    mono.push_back(static_cast<int>(e[i]));
  }
  return mono;
}

inline Json zeta_to_json(const KContext& ctx) {
  const IMat& f = ctx.zeta().fwd;
  Json rows = Json::array();
  for (int i = 0; i < f.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < f.cols; ++j) row.push_back(int_to_json(f.a[i][j]));
    rows.push_back(std::move(row));
  }
  Json cb = Json::array(), kb = Json::array();
  for (int p = 0; p < ctx.chow().ring().rank(); ++p)
    cb.push_back(basis_monomial_json(ctx.chow().ring(), p));
  for (int p = 0; p < ctx.kring().ring().rank(); ++p)
    kb.push_back(basis_monomial_json(ctx.kring().ring(), p));
  return Json{{"flavor", ctx.chow().flavor() == Flavor::Plain ? "plain" : "aug"},
              {"det", int_to_json(ctx.zeta().det)},
              {"matrix", std::move(rows)},
              {"chow_basis", std::move(cb)},
              {"k_basis", std::move(kb)}};
}

}  // namespace mkr
