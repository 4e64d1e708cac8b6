#pragma once

// JSON documents. Needs the single-header nlohmann json.hpp on the include path.

#include <string>
#include <vector>

#include <json.hpp>

#include "lnd/constructions.hpp"
#include "lnd/derivation.hpp"
#include "lnd/errors.hpp"
#include "lnd/plane.hpp"
#include "lnd/rank_lab.hpp"

namespace lnd {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertSchema = "lnd-cert/1";

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::string str_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

inline unsigned uint_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  return v.get<unsigned>();
}

}  // namespace detail

// ---- rings, derivations ----------------------------------------------------

inline std::string ring_string(const Ring& r) {
  std::string s;
  for (const auto& v : r->vars) s += (s.empty() ? "" : ",") + v;
  return s;
}

inline Ring ring_from_json(const Json& j) {
  if (j.is_string()) return parse_ring(j.get<std::string>());
  if (j.is_array()) {
    std::vector<std::string> vars;
    for (const auto& v : j) {
      if (!v.is_string()) throw ParseError("ring variables must be strings");
      vars.push_back(v.get<std::string>());
    }
    return make_ring(vars);
  }
  throw ParseError("ring must be a string or an array of names");
}

inline Json to_json(const Derivation& d) {
  Json images = Json::object();
  for (std::size_t i = 0; i < d.ring()->arity(); ++i) images[d.ring()->vars[i]] = to_string(d.image(i));
  return {{"ring", ring_string(d.ring())}, {"images", images}};
}

inline Derivation derivation_from_json(const Json& j, const Ring& default_ring = nullptr) {
  Ring ring = j.contains("ring") ? ring_from_json(j.at("ring")) : default_ring;
  if (!ring) throw ParseError("derivation has no ring");
  const Json& im = detail::field(j, "images");
  std::vector<std::string> texts(ring->arity(), "0");
  if (im.is_array()) {
    if (im.size() != ring->arity()) throw ParseError("derivation needs one image per variable");
    for (std::size_t i = 0; i < im.size(); ++i) texts[i] = im[i].get<std::string>();
  } else if (im.is_object()) {
    for (const auto& [k, v] : im.items()) {
      if (!v.is_string()) throw ParseError("derivation images must be strings");
      texts[ring->require(k)] = v.get<std::string>();
    }
  } else {
    throw ParseError("images must be an object or an array");
  }
  return Derivation::parse(ring, texts);
}

// ---- plane automorphisms and words -----------------------------------------

inline Field field_from_string(const std::string& s) {
  if (s == "Q") return Field::Q;
  if (s == "Q(x)") return Field::Qx;
  throw InvalidArgument("field must be \"Q\" or \"Q(x)\", got \"" + s + "\"");
}

inline Json to_json(const PlaneAutomorphism& a) {
  return {{"field", field_name(a.field)}, {"y", plane_to_string(a.y)}, {"z", plane_to_string(a.z)}};
}

inline PlaneAutomorphism automorphism_from_json(const Json& j) {
  Field f = j.contains("field") ? field_from_string(detail::str_field(j, "field")) : Field::Q;
  return PlaneAutomorphism::parse(f, detail::str_field(j, "y"), detail::str_field(j, "z"));
}

inline Json to_json(const TriangularFactor& t) {
  return {{"tri", {{"u", rf_to_string(t.u)}, {"c", rf_to_string(t.c)}, {"v", rf_to_string(t.v)}, {"F", plane_to_string(t.F)}}}};
}

inline TriangularFactor triangular_from_json(const Json& j, Field field) {
  const Json& t = detail::field(j, "tri");
  TriangularFactor out;
  auto rf = [&](const char* key, const RationalFunction& dflt) {
    return t.contains(key) ? parse_rf(detail::str_field(t, key)) : dflt;
  };
  out.u = rf("u", RationalFunction(1));
  out.c = rf("c", RationalFunction(0));
  out.v = rf("v", RationalFunction(1));
  if (t.contains("F")) out.F = parse_plane(detail::str_field(t, "F"));
  if (is_zero(out.u) || is_zero(out.v)) throw InvalidArgument("triangular factor needs nonzero u and v");
  if (out.F.degree_in(1) > 0) throw InvalidArgument("F must not depend on z");
  if (field == Field::Q && (!has_rational_coefficients(out.F) || !out.u.is_constant() || !out.v.is_constant() ||
                            !out.c.is_constant()))
    throw InvalidArgument("coefficients outside Q in a word over Q");
  return out;
}

inline Json to_json(const DecompositionWord& w) {
  Json letters = Json::array();
  for (std::size_t i = 0; i < w.triangular.size(); ++i) {
    if (i) letters.push_back("swap");
    letters.push_back(to_json(w.triangular[i]));
  }
  return {{"field", field_name(w.field)}, {"word", letters}};
}

// Letters alternate between triangular factors and "swap"; a missing factor
// next to a swap is the identity.
inline DecompositionWord word_from_json(const Json& j) {
  DecompositionWord w;
  w.field = j.contains("field") ? field_from_string(detail::str_field(j, "field")) : Field::Q;
  const Json& letters = detail::field(j, "word");
  if (!letters.is_array()) throw ParseError("word must be an array");
  bool pending = false;
  for (const auto& l : letters) {
    if (l.is_string() && l.get<std::string>() == "swap") {
      if (!pending) w.triangular.push_back(TriangularFactor::identity());
      pending = false;
    } else if (l.is_object()) {
      if (pending) throw InvalidArgument("two triangular factors without a swap between them");
      w.triangular.push_back(triangular_from_json(l, w.field));
      pending = true;
    } else {
      throw ParseError("word letters are \"swap\" or {\"tri\": ...}");
    }
  }
  if (!pending) w.triangular.push_back(TriangularFactor::identity());
  return w;
}

// ---- checks ---------------------------------------------------------------

inline Json to_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return a;
}

inline std::vector<Check> checks_from_json(const Json& j) {
  std::vector<Check> out;
  if (!j.is_array()) throw ParseError("checks must be an array");
  for (const auto& c : j) {
    const Json& p = detail::field(c, "pass");
    if (!p.is_boolean()) throw ParseError("check pass must be a boolean");
    out.push_back({detail::str_field(c, "name"), p.get<bool>(), c.contains("witness") ? detail::str_field(c, "witness") : ""});
  }
  return out;
}

inline Json cert_header(const char* kind) { return {{"schema", kCertSchema}, {"kind", kind}}; }

// ---- nilpotency -------------------------------------------------------------

inline std::vector<Check> nilpotency_checks(const Derivation& d, const NilpotencyCertificate& c) {
  std::vector<Check> out;
  out.push_back({"fingerprint", c.fingerprint == d.fingerprint(), d.fingerprint()});
  for (std::size_t i = 0; i < d.ring()->arity(); ++i) {
    unsigned n = i < c.indices.size() ? c.indices[i] : 0;
    bool ok = n >= 1 && n <= c.cap;
    if (ok) {
      Polynomial cur = Polynomial::variable(d.ring(), i);
      for (unsigned k = 0; k + 1 < n; ++k) cur = d(cur);
      ok = !cur.is_zero() && d(cur).is_zero();
    }
    out.push_back({"D^n(" + d.ring()->vars[i] + ") = 0, n least", ok, "n = " + std::to_string(n)});
  }
  return out;
}

inline Json nilpotency_cert_json(const Derivation& d, const NilpotencyCertificate& c) {
  Json j = cert_header("nilpotency");
  j["derivation"] = to_json(d);
  j["cap"] = c.cap;
  j["fingerprint"] = c.fingerprint;
  Json idx = Json::object();
  for (std::size_t i = 0; i < c.indices.size(); ++i) idx[c.variables[i]] = c.indices[i];
  j["indices"] = idx;
  j["checks"] = to_json(nilpotency_checks(d, c));
  return j;
}

// ---- non-triangularizability -----------------------------------------------

inline Json nontriang_cert_json(const NonTriangularizabilityCertificate& c) {
  Json j = cert_header("nontriangularizable");
  j["ring"] = ring_string(c.f.ring());
  j["f"] = to_string(c.f);
  j["g"] = to_string(c.g);
  j["weights"] = {c.pw, c.qw};
  j["checks"] = to_json(c.checks);
  return j;
}

// ---- rank 3 ---------------------------------------------------------------

inline Json rank3_cert_json(const Rank3Certificate& c) {
  Json j = cert_header("rank3");
  j["derivation"] = to_json(c.E);
  j["f"] = to_string(c.f);
  j["h"] = to_string(c.h);
  j["r"] = to_string(c.r);
  j["v"] = to_string(c.v);
  j["v_in_f_h"] = to_string(c.v_expr);
  Json cands = Json::array();
  for (const auto& d : c.candidates) cands.push_back({{"base", to_string(d.base)}, {"max_exponent", d.max_exponent}});
  j["candidates"] = cands;
  j["p_deg_cap"] = c.p_deg_cap;
  j["univariate_tested"] = c.univariate_tested;
  Json mins = Json::array();
  for (const auto& m : c.minimality)
    mins.push_back({{"q", m.q}, {"exponents", m.exponents}, {"divides_v", m.divides_v}, {"infeasible", m.infeasible},
                    {"proof", m.proof}});
  j["minimality"] = mins;
  Json steps = Json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"target", s.target}, {"divisor", to_string(s.divisor)}, {"power", s.power},
                     {"numerator", to_string(s.numerator)}});
  j["localization"] = steps;
  if (c.nilpotency) {
    Json idx = Json::object();
    for (std::size_t i = 0; i < c.nilpotency->indices.size(); ++i) idx[c.nilpotency->variables[i]] = c.nilpotency->indices[i];
    j["nilpotency"] = {{"cap", c.nilpotency->cap}, {"indices", idx}};
  }
  j["checks"] = to_json(c.checks);
  return j;
}

inline Rank3Certificate rank3_from_json(const Json& j) {
  Derivation E = derivation_from_json(detail::field(j, "derivation"));
  const Ring& R = E.ring();
  auto poly = [&](const char* key) { return parse_poly(detail::str_field(j, key), R); };
  std::vector<DivisorCandidate> cands;
  for (const auto& c : detail::field(j, "candidates"))
    cands.push_back({parse_poly(detail::str_field(c, "base"), R), detail::uint_field(c, "max_exponent")});
  std::vector<LocalizationStep> steps;
  for (const auto& s : detail::field(j, "localization"))
    steps.push_back({detail::str_field(s, "target"), parse_poly(detail::str_field(s, "divisor"), ring_symbols()),
                     detail::uint_field(s, "power"), parse_poly(detail::str_field(s, "numerator"), ring_symbols())});
  Rank3Options opt;
  opt.p_deg_cap = detail::uint_field(j, "p_deg_cap");
  if (j.contains("nilpotency")) opt.nil_cap = detail::uint_field(j.at("nilpotency"), "cap");
  return evaluate_rank3(E, poly("f"), poly("h"), poly("r"), poly("v"), cands, steps, opt);
}

// ---- MC-chains ---------------------------------------------------------------

inline std::vector<Check> chain_checks(const MCChain& chain) {
  std::vector<Check> out;
  for (const auto& c : validate_chain(chain)) out.push_back({c.name, c.pass, c.witness});
  return out;
}

inline Json mcchain_cert_json(const DecompositionWord& word, const MCChain& chain) {
  Json j = cert_header("mcchain");
  j["word"] = to_json(word);
  j["level"] = level_from_word(word);
  Json ds = Json::array();
  for (const auto& d : chain.derivations) ds.push_back(to_json(d));
  j["derivations"] = ds;
  Json rels = Json::array();
  for (std::size_t k = 0; k < chain.relations.size(); ++k)
    rels.push_back({{"index", k + 3},
                    {"h", to_string(chain.relations[k].h)},
                    {"sigma", to_string(chain.relations[k].sigma)},
                    {"f", to_string(chain.relations[k].f)}});
  j["relations"] = rels;
  j["checks"] = to_json(chain_checks(chain));
  return j;
}

// ---- replay ----------------------------------------------------------------

struct VerifyResult {
  std::string kind;
  bool valid = false;
  std::vector<Check> checks;  // recomputed
};

// Recomputes every check from the stored witnesses. The certificate is valid
// when all recomputed checks pass and agree with the stored ones.
inline VerifyResult verify_certificate(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != kCertSchema)
    throw ParseError(std::string("not an ") + kCertSchema + " document");
  VerifyResult res{detail::str_field(j, "kind"), false, {}};
  std::vector<Check> stored = checks_from_json(detail::field(j, "checks"));
  if (res.kind == "nilpotency") {
    Derivation d = derivation_from_json(detail::field(j, "derivation"));
    NilpotencyCertificate c{detail::str_field(j, "fingerprint"), d.ring()->vars, {}, detail::uint_field(j, "cap")};
    const Json& idx = detail::field(j, "indices");
    for (const auto& v : d.ring()->vars) c.indices.push_back(detail::uint_field(idx, v.c_str()));
    res.checks = nilpotency_checks(d, c);
  } else if (res.kind == "nontriangularizable") {
    Ring R = ring_from_json(detail::field(j, "ring"));
    const Json& w = detail::field(j, "weights");
    if (!w.is_array() || w.size() != 2) throw ParseError("weights must be a pair");
    res.checks = evaluate_non_triangularizable(parse_poly(detail::str_field(j, "f"), R),
                                               parse_poly(detail::str_field(j, "g"), R), w[0].get<long>(),
                                               w[1].get<long>())
                     .checks;
  } else if (res.kind == "rank3") {
    res.checks = rank3_from_json(j).checks;
  } else if (res.kind == "mcchain") {
    DecompositionWord word = word_from_json(detail::field(j, "word"));
    MCChain chain = mc_chain_from_word(word);
    res.checks = chain_checks(chain);
    const Json& ds = detail::field(j, "derivations");
    bool same = ds.is_array() && ds.size() == chain.derivations.size();
    for (std::size_t i = 0; same && i < ds.size(); ++i) same = derivation_from_json(ds[i]) == chain.derivations[i];
    const Json& rels = detail::field(j, "relations");
    same = same && rels.is_array() && rels.size() == chain.relations.size();
    for (std::size_t k = 0; same && k < rels.size(); ++k) {
      const Ring& R = chain.derivations[0].ring();
      same = parse_poly(detail::str_field(rels[k], "h"), R) == chain.relations[k].h &&
             parse_poly(detail::str_field(rels[k], "sigma"), R) == chain.relations[k].sigma &&
             parse_poly(detail::str_field(rels[k], "f"), R) == chain.relations[k].f;
    }
    res.checks.push_back({"stored chain matches the word", same, ""});
  } else {
    throw ParseError("unknown certificate kind \"" + res.kind + "\"");
  }
  bool agree = stored.size() <= res.checks.size();
  for (std::size_t i = 0; agree && i < stored.size(); ++i)
    agree = stored[i].name == res.checks[i].name && stored[i].pass == res.checks[i].pass;
  res.checks.push_back({"stored checks agree", agree, std::to_string(stored.size()) + " stored"});
  res.valid = all_pass(res.checks);
  return res;
}

}  // namespace lnd
