#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lnd/json_io.hpp"
#include "lnd/lnd.hpp"

namespace lnd::cli {

enum ExitCode { kOk = 0, kRejected = 1, kBadInput = 2 };

struct Outcome {
  int code = kOk;
  Json doc;
  std::string summary;
};

inline unsigned default_cap() {
  if (const char* env = std::getenv("LND_DEFAULT_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1000000) return static_cast<unsigned>(v);
  }
  return kDefaultCap;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// "(a, b, c)" or "a, b, c"
inline std::vector<std::string> split_tuple(std::string s) {
  auto trim = [](std::string t) {
    auto b = t.find_first_not_of(" \t\n"), e = t.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
      if (depth == 0 && i + 1 < s.size()) wraps = false;
    }
    if (wraps) s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct DerivationArg {
  std::string text, file;
  void add(CLI::App* app, const std::string& name, const std::string& what) {
    app->add_option("--" + name, text, what + " as \"(image_1, ..., image_n)\"");
    app->add_option("--" + name + "-file", file, what + " as a JSON file");
  }
  Derivation get(const Ring& ring, const std::string& name) const {
    if (!file.empty()) return derivation_from_json(read_json(file), ring);
    if (text.empty()) throw InvalidArgument("--" + name + " or --" + name + "-file is required");
    auto parts = split_tuple(text);
    if (parts.size() != ring->arity())
      throw InvalidArgument("--" + name + " needs " + std::to_string(ring->arity()) + " images");
    return Derivation::parse(ring, parts);
  }
};

inline Json nilpotency_json(const NilpotencyCertificate& c) {
  Json idx = Json::object();
  for (std::size_t i = 0; i < c.indices.size(); ++i) idx[c.variables[i]] = c.indices[i];
  return {{"cap", c.cap}, {"indices", idx}};
}

inline Outcome bool_outcome(bool ok, Json doc, const std::string& what) {
  return {ok ? kOk : kRejected, std::move(doc), what + (ok ? ": yes" : ": no")};
}

inline LocalizationStep parse_step(const std::string& s) {
  // target;divisor;power;numerator
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) parts.push_back(item);
  if (parts.size() != 4) throw InvalidArgument("--step expects target;divisor;power;numerator");
  unsigned power = 0;
  try {
    power = static_cast<unsigned>(std::stoul(parts[2]));
  } catch (const std::exception&) {
    throw InvalidArgument("--step power must be a nonnegative integer");
  }
  auto t = split_tuple(parts[0]).front();
  return {t, parse_poly(parts[1], ring_symbols()), power, parse_poly(parts[3], ring_symbols())};
}

inline DivisorCandidate parse_candidate(const std::string& s, const Ring& ring) {
  auto pos = s.rfind(':');
  if (pos == std::string::npos) return {parse_poly(s, ring), 1};
  unsigned e = 0;
  try {
    e = static_cast<unsigned>(std::stoul(s.substr(pos + 1)));
  } catch (const std::exception&) {
    throw InvalidArgument("--candidate expects base:max_exponent");
  }
  return {parse_poly(s.substr(0, pos), ring), e};
}

// "m:n:F"
inline FamilyParamsE parse_family(const std::string& s) {
  auto a = s.find(':'), b = s.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) throw InvalidArgument("--family expects m:n:F");
  try {
    return {static_cast<unsigned>(std::stoul(s.substr(0, a))), static_cast<unsigned>(std::stoul(s.substr(a + 1, b - a - 1))),
            parse_poly(s.substr(b + 1), ring_t1t2())};
  } catch (const std::logic_error&) {
    throw InvalidArgument("--family expects m:n:F");
  }
}

struct BatchOptions {
  std::string manifest;
  std::string out_dir;
  unsigned jobs = 0;
};

struct App;
Outcome run_batch(const BatchOptions& opt);

struct App {
  CLI::App app{"Exact computations with locally nilpotent derivations of k[x,y,z]", "lnd"};
  std::string ring_text = "x,y,z";
  std::string out_path;
  unsigned cap = default_cap();
  std::function<Outcome()> action;

  Ring ring() const { return parse_ring(ring_text); }
  Polynomial poly(const std::string& text, const std::string& name) const {
    if (text.empty()) throw InvalidArgument("--" + name + " is required");
    return parse_poly(text, ring());
  }

  CLI::App* sub(const std::string& name, const std::string& desc, std::function<Outcome()> fn) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--ring", ring_text, "ring variables, comma separated")->capture_default_str();
    s->add_option("--out", out_path, "write the JSON document to this file");
    s->add_option("--cap", cap, "iteration cap (LND_DEFAULT_CAP overrides the built-in 64)")->capture_default_str();
    s->callback([this, fn] { action = fn; });
    return s;
  }

  // option storage
  DerivationArg d_arg, e_arg;
  std::string f, g, h, r, v, F, alpha, x_var = "x", y, z, field = "Q", word_file, slice, value;
  std::string r1, r2, h1, h2, weights = "1,0", cert, family;
  std::vector<std::string> deltas, kernels, candidates, steps;
  unsigned m = 2, n = 1, deg_cap = 8, coeff_deg_cap = 0, p_deg_cap = 0;
  bool want_level = false, want_rank3 = false;
  BatchOptions batch;

  App() {
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    auto* s = sub("certify-lnd", "least n with D^n(var) = 0 for every variable", [this] {
      Derivation d = d_arg.get(ring(), "derivation");
      auto c = certify_lnd(d, cap);
      return Outcome{kOk, nilpotency_cert_json(d, c), "locally nilpotent"};
    });
    d_arg.add(s, "derivation", "derivation");

    s = sub("jacobian", "Jac(f, g, .)", [this] {
      Derivation d = jacobian3(poly(f, "f"), poly(g, "g"));
      return Outcome{kOk, {{"derivation", to_json(d)}}, to_string(d)};
    });
    s->add_option("--f", f);
    s->add_option("--g", g);

    s = sub("jacobian2", "alpha(x, F) * Jac(F, .) in (y, z)", [this] {
      if (alpha.empty()) throw InvalidArgument("--alpha is required");
      Derivation d = jacobian2_over_R(poly(F, "F"), parse_poly(alpha, ring_xt()));
      return Outcome{kOk, {{"derivation", to_json(d)}}, to_string(d)};
    });
    s->add_option("--F", F, "polynomial in x, y, z");
    s->add_option("--alpha", alpha, "polynomial in x, t with t standing for F")->default_str("1");
    alpha = "1";

    s = sub("commute", "[D, E] = 0", [this] {
      Derivation c = commutator(d_arg.get(ring(), "d"), e_arg.get(ring(), "e"));
      return bool_outcome(c.is_zero(), {{"commute", c.is_zero()}, {"commutator", to_json(c)}}, "commute");
    });
    d_arg.add(s, "d", "first derivation");
    e_arg.add(s, "e", "second derivation");

    s = sub("irreducible", "gcd of the images is a unit", [this] {
      auto res = is_irreducible(d_arg.get(ring(), "derivation"));
      return bool_outcome(res.irreducible, {{"irreducible", res.irreducible}, {"gcd", to_string(res.gcd)}},
                          "irreducible");
    });
    d_arg.add(s, "derivation", "derivation");

    s = sub("equivalent", "image tuples proportional (same kernel)", [this] {
      bool eq = equivalent_check(d_arg.get(ring(), "d"), e_arg.get(ring(), "e"));
      return bool_outcome(eq, {{"equivalent", eq}}, "equivalent");
    });
    d_arg.add(s, "d", "first derivation");
    e_arg.add(s, "e", "second derivation");

    s = sub("partner", "commuting non-equivalent LND Jac(x, g, .)", [this] {
      Derivation d = d_arg.get(ring(), "derivation");
      Derivation e = build_commuting_partner(d, x_var, poly(g, "g"), cap);
      bool eq = equivalent_check(d, e);
      return Outcome{kOk,
                     {{"partner", to_json(e)}, {"nilpotency", nilpotency_json(certify_lnd(e, cap))}, {"equivalent", eq}},
                     to_string(e)};
    });
    d_arg.add(s, "derivation", "derivation D");
    s->add_option("--x-var", x_var, "kernel variable")->capture_default_str();
    s->add_option("--g", g, "local slice with D(g) in k[x-var]");

    auto plane_input = [this](CLI::App* c) {
      c->add_option("--field", field, "\"Q\" or \"Q(x)\"")->capture_default_str();
      c->add_option("--y", y, "image of y");
      c->add_option("--z", z, "image of z");
    };
    auto automorphism = [this] {
      if (y.empty() || z.empty()) throw InvalidArgument("--y and --z are required");
      return PlaneAutomorphism::parse(field_from_string(field), y, z);
    };

    s = sub("decompose", "tame decomposition of a plane automorphism", [this, automorphism] {
      auto w = decompose_tame(automorphism());
      Json doc = to_json(w);
      doc["swap_count"] = w.swap_count();
      if (want_level) doc["level"] = level_from_word(w);
      return Outcome{kOk, doc, "swap_count " + std::to_string(w.swap_count())};
    });
    plane_input(s);
    s->add_flag("--level", want_level, "also report the level");

    s = sub("level", "level of the derivation attached to an automorphism", [this, automorphism] {
      auto w = decompose_tame(automorphism());
      unsigned lv = level_from_word(w);
      return Outcome{kOk, {{"swap_count", w.swap_count()}, {"level", lv}}, "level " + std::to_string(lv)};
    });
    plane_input(s);

    s = sub("psi", "coset representative (f, slice/value) of an irreducible derivation", [this] {
      std::optional<Derivation> d;
      if (!d_arg.text.empty() || !d_arg.file.empty()) d = d_arg.get(ring(), "derivation");
      auto a = psi_representative(poly(f, "f"), poly(slice, "slice"), poly(value, "value"), d ? &*d : nullptr);
      return Outcome{kOk, {{"automorphism", to_json(a)}, {"B_automorphism", is_B_automorphism(a)}}, to_string(a)};
    });
    d_arg.add(s, "derivation", "optional derivation to check against");
    s->add_option("--f", f, "kernel generator");
    s->add_option("--slice", slice, "slice");
    s->add_option("--value", value, "D(slice), an element of k[x]");

    s = sub("c-construct", "Delta = sum f_i delta_i with the nilpotency bound", [this] {
      if (deltas.empty() || deltas.size() != kernels.size())
        throw InvalidArgument("give matching --delta and --kernel lists");
      std::vector<Derivation> ds;
      std::vector<Polynomial> fs;
      for (const auto& t : deltas) {
        DerivationArg a;
        a.text = t;
        ds.push_back(a.get(ring(), "delta"));
      }
      for (const auto& t : kernels) fs.push_back(parse_poly(t, ring()));
      auto c = c_construction(ds, fs, cap);
      Json per = Json::object();
      for (std::size_t i = 0; i < c.per_generator.size(); ++i) per[ring()->vars[i]] = c.per_generator[i];
      return Outcome{kOk, {{"derivation", to_json(c.delta)}, {"bound", c.bound}, {"per_generator", per}},
                     "bound " + std::to_string(c.bound)};
    });
    s->add_option("--delta", deltas, "commuting LND, repeatable");
    s->add_option("--kernel", kernels, "kernel element f_i, repeatable");

    s = sub("mc-chain", "MC-chain of derivations attached to a decomposition word", [this, automorphism] {
      DecompositionWord w = !word_file.empty() ? word_from_json(read_json(word_file)) : decompose_tame(automorphism());
      MCChain chain = mc_chain_from_word(w);
      return Outcome{kOk, mcchain_cert_json(w, chain), "chain of length " + std::to_string(chain.derivations.size())};
    });
    plane_input(s);
    s->add_option("--word-file", word_file, "decomposition word as JSON");

    s = sub("phi-search", "least monic phi with phi(f, r) in gB", [this] {
      auto p = minimal_phi_search(poly(f, "f"), poly(g, "g"), poly(r, "r"), deg_cap, coeff_deg_cap);
      return Outcome{kOk,
                     {{"phi", to_string(p.phi)}, {"degree", p.degree}, {"deg_cap", p.deg_cap}, {"coeff_deg_cap", p.coeff_deg_cap}},
                     "phi = " + to_string(p.phi)};
    });
    s->add_option("--f", f);
    s->add_option("--g", g);
    s->add_option("--r", r);
    s->add_option("--deg-cap", deg_cap)->capture_default_str();
    s->add_option("--coeff-deg-cap", coeff_deg_cap, "0 means 3 * deg-cap")->capture_default_str();

    s = sub("slice-construct", "local slice construction E = Jac(f, phi(r)/g, .)", [this] {
      SliceCaps caps{deg_cap, coeff_deg_cap, cap};
      auto ls = local_slice_construction(d_arg.get(ring(), "derivation"), poly(f, "f"), poly(g, "g"), poly(r, "r"), caps);
      return Outcome{kOk,
                     {{"P", to_string(ls.P)},
                      {"phi", to_string(ls.phi.phi)},
                      {"h", to_string(ls.h)},
                      {"derivation", to_json(ls.delta)},
                      {"nilpotency", nilpotency_json(ls.nilpotency)}},
                     to_string(ls.delta)};
    });
    d_arg.add(s, "derivation", "derivation D");
    s->add_option("--f", f);
    s->add_option("--g", g);
    s->add_option("--r", r);
    s->add_option("--deg-cap", deg_cap)->capture_default_str();
    s->add_option("--coeff-deg-cap", coeff_deg_cap)->capture_default_str();

    s = sub("family-e", "rank-3 family E(m, n, F)", [this] {
      if (F.empty()) throw InvalidArgument("--F is required");
      FamilyParamsE p{m, n, parse_poly(F, ring_t1t2())};
      auto fam = family_E(p, cap);
      if (want_rank3) {
        Rank3Options opt;
        opt.nil_cap = cap;
        opt.p_deg_cap = p_deg_cap;
        auto c = family_rank3(fam, opt);
        return Outcome{kOk, rank3_cert_json(c), "rank 3 certified"};
      }
      return Outcome{kOk,
                     {{"m", m},
                      {"n", n},
                      {"F", to_string(p.F)},
                      {"f", to_string(fam.f)},
                      {"r", to_string(fam.r)},
                      {"h", to_string(fam.h)},
                      {"derivation", to_json(fam.E)},
                      {"nilpotency", nilpotency_json(fam.nilpotency)}},
                     to_string(fam.E)};
    });
    s->add_option("--m", m)->capture_default_str();
    s->add_option("--n", n)->capture_default_str();
    s->add_option("--F", F, "polynomial in t1, t2 with F(t1, 0) nonconstant");
    s->add_flag("--rank3", want_rank3, "emit the rank-3 certificate");
    s->add_option("--p-deg-cap", p_deg_cap, "0 means the degree of r")->capture_default_str();

    s = sub("family-ex1", "rank-2 family built from r1, r2, h1, h2", [this] {
      if (r1.empty() || r2.empty() || h1.empty() || h2.empty()) throw InvalidArgument("--r1 --r2 --h1 --h2 are required");
      FamilyParamsEx1 p{parse_poly(r1, ring_x()), parse_poly(r2, ring_x()), parse_poly(h1, ring_xt()), parse_poly(h2, ring_xt())};
      auto fam = family_ex1(p, cap);
      Json doc{{"derivation", to_json(fam.D)},
               {"f", to_string(fam.f)},
               {"g", to_string(fam.g)},
               {"alpha", to_json(fam.alpha)},
               {"word", to_json(fam.word)},
               {"swap_count", fam.word.swap_count()},
               {"level", level_from_word(fam.word)},
               {"nilpotency", nilpotency_json(fam.nilpotency)},
               {"chain", mcchain_cert_json(fam.word, fam.chain)}};
      return Outcome{kOk, doc, to_string(fam.D)};
    });
    s->add_option("--r1", r1, "polynomial in x");
    s->add_option("--r2", r2, "polynomial in x");
    s->add_option("--h1", h1, "polynomial in x, t");
    s->add_option("--h2", h2, "polynomial in x, t");

    s = sub("nontriang", "non-triangularizability obstruction for (f, g)", [this] {
      auto w = split_tuple(weights);
      if (w.size() != 2) throw InvalidArgument("--weights expects p,q");
      long pw = 0, qw = 0;
      try {
        pw = std::stol(w[0]);
        qw = std::stol(w[1]);
      } catch (const std::exception&) {
        throw InvalidArgument("--weights expects two integers");
      }
      auto c = non_triangularizable_check(poly(f, "f"), poly(g, "g"), pw, qw);
      return Outcome{kOk, nontriang_cert_json(c), "not triangularizable"};
    });
    s->add_option("--f", f);
    s->add_option("--g", g);
    s->add_option("--weights", weights, "weights of y and z")->capture_default_str();

    s = sub("rank3", "four-condition rank-3 certificate", [this] {
      Derivation d = d_arg.get(ring(), "derivation");
      std::vector<DivisorCandidate> cands;
      for (const auto& c : candidates) cands.push_back(parse_candidate(c, ring()));
      std::vector<LocalizationStep> st;
      if (!family.empty()) st = family_localization_steps(parse_family(family));
      for (const auto& t : steps) st.push_back(parse_step(t));
      Rank3Options opt;
      opt.nil_cap = cap;
      opt.p_deg_cap = p_deg_cap;
      auto c = rank3_certify(d, poly(f, "f"), poly(h, "h"), poly(r, "r"), poly(v, "v"), cands, st, opt);
      return Outcome{kOk, rank3_cert_json(c), "rank 3 certified"};
    });
    d_arg.add(s, "derivation", "derivation E");
    s->add_option("--f", f);
    s->add_option("--h", h);
    s->add_option("--r", r);
    s->add_option("--v", v, "E(r)");
    s->add_option("--candidate", candidates, "divisor candidate base:max_exponent, repeatable");
    s->add_option("--step", steps, "localization step target;divisor;power;numerator in symbols f,h,r,x,y,z");
    s->add_option("--family", family, "use the family steps for m:n:F");
    s->add_option("--p-deg-cap", p_deg_cap, "0 means the degree of r")->capture_default_str();

    s = sub("lscor", "local slice construction followed by the rank-3 certificate", [this] {
      SliceCaps caps{deg_cap, coeff_deg_cap, cap};
      std::optional<std::vector<LocalizationStep>> st;
      if (!steps.empty()) {
        st.emplace();
        for (const auto& t : steps) st->push_back(parse_step(t));
      }
      Rank3Options opt;
      opt.nil_cap = cap;
      opt.p_deg_cap = p_deg_cap;
      auto res = lscor_certify(d_arg.get(ring(), "derivation"), poly(f, "f"), poly(g, "g"), poly(r, "r"), caps, st, opt);
      return Outcome{kOk, rank3_cert_json(res.certificate), "rank 3 certified"};
    });
    d_arg.add(s, "derivation", "derivation D");
    s->add_option("--f", f);
    s->add_option("--g", g);
    s->add_option("--r", r);
    s->add_option("--step", steps, "localization step, required outside the family");
    s->add_option("--deg-cap", deg_cap)->capture_default_str();
    s->add_option("--coeff-deg-cap", coeff_deg_cap)->capture_default_str();
    s->add_option("--p-deg-cap", p_deg_cap)->capture_default_str();

    s = sub("verify", "replay a certificate", [this] {
      if (cert.empty()) throw InvalidArgument("--cert is required");
      auto res = verify_certificate(read_json(cert));
      Json doc{{"kind", res.kind}, {"valid", res.valid}, {"checks", to_json(res.checks)}};
      return Outcome{res.valid ? kOk : kRejected, doc, res.valid ? "certificate verified" : "certificate rejected"};
    });
    s->add_option("--cert", cert, "certificate file");

    s = sub("batch", "run a manifest of requests", [this] { return run_batch(batch); });
    s->add_option("--manifest", batch.manifest, "JSON manifest")->required();
    s->add_option("--out-dir", batch.out_dir, "directory for per-request documents");
    s->add_option("--jobs", batch.jobs, "parallel requests, 0 for the hardware count")->capture_default_str();
  }
};

inline void write_document(const Json& doc, const std::string& path, std::ostream& out) {
  std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Outcome* result = nullptr) {
  App a;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    a.app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << a.app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    if (result) *result = {kBadInput, {{"error", {{"kind", "UsageError"}, {"message", e.what()}}}}, e.what()};
    return kBadInput;
  }
  Outcome o;
  try {
    o = a.action();
    write_document(o.doc, a.out_path, out);
    if (!a.out_path.empty()) out << o.summary << "\n";
  } catch (const Error& e) {
    o.code = e.is_rejection() ? kRejected : kBadInput;
    Json info{{"kind", e.kind()}, {"message", e.what()}};
    if (auto* cf = dynamic_cast<const ConditionFailed*>(&e)) {
      info["condition"] = cf->condition();
      info["witness"] = cf->witness();
    }
    o.doc = {{"error", info}};
    o.summary = e.what();
    err << e.kind() << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    o.code = kBadInput;
    o.doc = {{"error", {{"kind", "InputError"}, {"message", e.what()}}}};
    o.summary = e.what();
    err << "error: " << e.what() << "\n";
  }
  if (result) *result = o;
  return o.code;
}

inline const char* status_name(int code) { return code == kOk ? "ok" : code == kRejected ? "rejected" : "input-error"; }

// Manifest: an array of requests, or {"requests": [...]}. A request is an
// argv array or {"argv": [...], "out": path}.
inline Outcome run_batch(const BatchOptions& opt) {
  Json manifest = read_json(opt.manifest);
  const Json& reqs = manifest.is_object() ? detail::field(manifest, "requests") : manifest;
  if (!reqs.is_array()) throw ParseError("manifest must be an array of requests");
  struct Request {
    std::vector<std::string> argv;
    std::string out;
  };
  std::vector<Request> requests;
  for (const auto& r : reqs) {
    Request q;
    const Json& argv = r.is_object() ? detail::field(r, "argv") : r;
    if (!argv.is_array()) throw ParseError("request argv must be an array of strings");
    for (const auto& a : argv) {
      if (!a.is_string()) throw ParseError("request argv must be an array of strings");
      q.argv.push_back(a.get<std::string>());
    }
    if (!q.argv.empty() && q.argv[0] == "batch") throw InvalidArgument("nested batch requests are not allowed");
    if (r.is_object() && r.contains("out")) q.out = detail::str_field(r, "out");
    else if (!opt.out_dir.empty()) q.out = opt.out_dir + "/request_" + std::to_string(requests.size()) + ".json";
    requests.push_back(std::move(q));
  }

  std::vector<Outcome> outcomes(requests.size());
  std::vector<std::string> errors(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      auto argv = requests[i].argv;
      if (!requests[i].out.empty()) {
        argv.push_back("--out");
        argv.push_back(requests[i].out);
      }
      std::ostringstream o, e;
      run(argv, o, e, &outcomes[i]);
      errors[i] = e.str();
    }
  };
  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(requests.size(), 1)));
  std::vector<std::future<void>> fs;
  for (unsigned j = 0; j < jobs; ++j) fs.push_back(std::async(std::launch::async, worker));
  for (auto& f : fs) f.get();

  Json results = Json::array();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Outcome& o = outcomes[i];
    passed += o.code == kOk;
    Json r{{"index", i}, {"argv", requests[i].argv}, {"exit_code", o.code}, {"status", status_name(o.code)}};
    if (o.code == kOk && !requests[i].out.empty()) r["certificate"] = requests[i].out;
    else if (o.code == kOk) r["document"] = o.doc;
    else r["error"] = o.doc.contains("error") ? o.doc["error"] : Json(o.summary);
    results.push_back(r);
  }
  Json summary{{"total", requests.size()}, {"passed", passed}, {"failed", requests.size() - passed}, {"results", results}};
  return {passed == requests.size() ? kOk : kRejected, summary,
          std::to_string(passed) + "/" + std::to_string(requests.size()) + " passed"};
}

}  // namespace lnd::cli
