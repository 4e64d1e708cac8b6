#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace lnd;
using fixtures::P;

namespace {

Polynomial T(const std::string& s) { return parse_poly(s, ring_t1t2()); }
Polynomial S(const std::string& s) { return parse_poly(s, ring_symbols()); }

const Check& find(const std::vector<Check>& cs, const std::string& prefix) {
  for (const auto& c : cs)
    if (c.name.rfind(prefix, 0) == 0) return c;
  throw std::runtime_error("no check " + prefix);
}

FamilyEx1 example() {
  return family_ex1({parse_poly("x", ring_x()), parse_poly("x", ring_x()), parse_poly("t^2", ring_xt()),
                     parse_poly("t^2", ring_xt())});
}

}  // namespace

TEST(NonTriangularizable, ExampleData) {
  auto fam = example();
  auto cert = non_triangularizable_check(fam.f, fam.g, 1, 0);
  EXPECT_TRUE(cert.valid());
  EXPECT_EQ(find(cert.checks, "gcd").witness, "x");
  EXPECT_EQ(find(cert.checks, "deg of leading form").witness, "4 vs 2");
}

TEST(NonTriangularizable, SingleCheckFlips) {
  auto fam = example();
  auto cert = evaluate_non_triangularizable(fam.f, fam.g + P("1"), 1, 0);
  EXPECT_FALSE(cert.valid());
  for (const auto& c : cert.checks) EXPECT_EQ(c.pass, c.name != "g(x,0,0) = 0") << c.name;
  EXPECT_THROW(non_triangularizable_check(fam.f, fam.g + P("1"), 1, 0), ConditionFailed);
}

TEST(NonTriangularizable, CoordinateDataRejected) {
  auto cert = evaluate_non_triangularizable(P("y"), P("z"), 1, 0);
  EXPECT_FALSE(find(cert.checks, "gcd").pass);
  EXPECT_THROW(non_triangularizable_check(P("y"), P("z"), 1, 0), ConditionFailed);
  EXPECT_THROW(evaluate_non_triangularizable(P("y"), P("z"), 0, 0), InvalidArgument);
  EXPECT_THROW(evaluate_non_triangularizable(P("y"), P("z"), -1, 2), InvalidArgument);
}

TEST(Localization, MembershipIdentity) {
  Polynomial f = P("x*z - y^3");
  Bindings b{f, P("1"), P("y")};
  // z*x = f + y^3 with divisor x
  EXPECT_TRUE(localized_membership_check("z", S("f + y^3"), S("x"), 1, b).holds);
  auto bad = localized_membership_check("z", S("f + y^2"), S("x"), 1, b);
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.difference, P("y^3 - y^2"));
  EXPECT_THROW(localized_membership_check("w", S("f"), S("x"), 1, b), UnknownVariable);
}

TEST(Localization, FamilyStepsHold) {
  for (unsigned m : {2u, 3u})
    for (unsigned n : {1u, 2u})
      for (const char* F : {"t1", "t1^2", "t1 + t2"}) {
        FamilyParamsE p{m, n, T(F)};
        // f, h, r built by hand, independent of family_E
        Polynomial x = P("x"), y = P("y"), z = P("z");
        Polynomial f = x * z - y.pow(m);
        Polynomial r = x * evaluate(p.F, {x, f}, ring_xyz()) + y * f.pow(n);
        auto h = try_exact_div(f.pow(m * n + 1) + r.pow(m), x);
        ASSERT_TRUE(h.has_value());
        Bindings b{f, *h, r};
        auto steps = family_localization_steps(p);
        ASSERT_EQ(steps.size(), 3u);
        for (const auto& s : steps)
          EXPECT_TRUE(localized_membership_check(s.target, s.numerator, s.divisor, s.power, b).holds)
              << s.target << " m=" << m << " n=" << n << " F=" << F;
      }
}

TEST(Rank3, FreudenburgCertificate) {
  auto fam = family_E({2, 1, T("t1^2")});
  auto cert = family_rank3(fam);
  EXPECT_TRUE(cert.valid());
  EXPECT_EQ(cert.checks.size(), 6u);
  EXPECT_EQ(cert.v_expr, S("-f*h"));
  EXPECT_EQ(cert.p_deg_cap, static_cast<unsigned>(fam.r.total_degree()));
  // f, h and f*h all divide v and all are infeasible
  std::size_t dividing = 0;
  for (const auto& rec : cert.minimality) {
    EXPECT_TRUE(rec.infeasible) << rec.q;
    dividing += rec.divides_v;
  }
  EXPECT_EQ(dividing, 3u);
  EXPECT_EQ(cert.minimality.back().proof.rfind("implied by", 0), 0u);
}

TEST(Rank3, SmallerCandidateLattice) {
  Derivation delta = jacobian3(fixtures::freudenburg_u(), fixtures::freudenburg_v());
  auto fam = family_E({2, 1, T("t1^2")});
  ASSERT_EQ(delta, fam.E);
  auto cert = rank3_certify(delta, fam.f, fam.h, fam.r, -(fam.h * fam.f), {{fam.f, 1}, {fam.h, 1}},
                            family_localization_steps(fam.params));
  EXPECT_TRUE(cert.valid());
}

TEST(Rank3, PartialZIsRejected) {
  Derivation dz = Derivation::partial(ring_xyz(), "z");
  std::vector<LocalizationStep> steps{{"x", S("f"), 0, S("f")}, {"y", S("h"), 0, S("h")}, {"z", S("1"), 1, S("r")}};
  auto cert = evaluate_rank3(dz, P("x"), P("y"), P("z"), P("1"), default_candidates(P("x"), P("y"), 1), steps);
  EXPECT_FALSE(cert.valid());
  EXPECT_FALSE(find(cert.checks, "(ii)").pass);
  EXPECT_TRUE(find(cert.checks, "(i)").pass);
  try {
    rank3_certify(dz, P("x"), P("y"), P("z"), P("1"), default_candidates(P("x"), P("y"), 1), steps);
    FAIL();
  } catch (const ConditionFailed& e) {
    EXPECT_EQ(e.condition(), "(ii) v not univariate");
  }
}

TEST(Rank3, TriangularFixturesRejected) {
  for (const auto& t : fixtures::triangular()) {
    auto cert = evaluate_rank3(t.d, t.f, t.h, t.r, t.v, default_candidates(t.f, t.h, 1), {});
    EXPECT_FALSE(cert.valid()) << to_string(t.d);
    bool ii = find(cert.checks, "(ii)").pass, iii = find(cert.checks, "(iii)").pass;
    EXPECT_TRUE(!ii || !iii) << to_string(t.d);
  }
}

TEST(Rank3, WrongSliceValueFailsFirstCondition) {
  auto fam = family_E({2, 1, T("t1")});
  auto cert = evaluate_rank3(fam.E, fam.f, fam.h, fam.r, fam.h * fam.f, default_candidates(fam.f, fam.h, 1),
                             family_localization_steps(fam.params));
  EXPECT_FALSE(find(cert.checks, "(i)").pass);
  EXPECT_FALSE(find(cert.checks, "(ii)").pass);
}

TEST(Lscor, AgreesWithFamily) {
  for (const char* F : {"t1", "t1^2", "t1 + t2"}) {
    auto fam = family_E({2, 1, T(F)});
    auto res = lscor_certify(jacobian3(fam.f, fam.g), fam.f, fam.g, fam.r);
    EXPECT_TRUE(res.certificate.valid()) << F;
    EXPECT_EQ(res.slice.delta, fam.E) << F;
    EXPECT_EQ(res.certificate.v, family_rank3(fam).v) << F;
  }
}

TEST(Lscor, Rejections) {
  auto fam = family_E({2, 1, T("t1")});
  Polynomial x2 = P("x^2");
  try {
    lscor_certify(jacobian3(fam.f, x2), fam.f, x2, fam.r);
    FAIL();
  } catch (const ConditionFailed& e) {
    EXPECT_EQ(e.condition(), "E irreducible");
  }
  // outside the family without explicit steps
  EXPECT_THROW(lscor_certify(jacobian3(fam.f, P("2*x")), fam.f, P("2*x"), fam.r), InvalidArgument);
}

TEST(CertificateJson, Rank3ReplayAndTamper) {
  auto cert = family_rank3(family_E({2, 1, T("t1")}));
  Json j = Json::parse(rank3_cert_json(cert).dump());
  auto res = verify_certificate(j);
  EXPECT_TRUE(res.valid);
  EXPECT_EQ(res.kind, "rank3");

  Json bad_r = j;
  bad_r["r"] = "x^2 + y*(x*z - y^2) + 1";
  EXPECT_FALSE(verify_certificate(bad_r).valid);

  Json bad_check = j;
  bad_check["checks"][3]["pass"] = false;
  EXPECT_FALSE(verify_certificate(bad_check).valid);

  Json bad_step = j;
  bad_step["localization"][0]["numerator"] = "f^3 + r^2 + 1";
  EXPECT_FALSE(verify_certificate(bad_step).valid);

  Json bad_schema = j;
  bad_schema["schema"] = "other/1";
  EXPECT_THROW(verify_certificate(bad_schema), ParseError);
}

TEST(CertificateJson, OtherKinds) {
  Derivation delta = jacobian3(fixtures::freudenburg_u(), fixtures::freudenburg_v());
  Json nil = nilpotency_cert_json(delta, certify_lnd(delta));
  EXPECT_TRUE(verify_certificate(nil).valid);
  nil["indices"]["z"] = 10;
  EXPECT_FALSE(verify_certificate(nil).valid);

  auto fam = example();
  Json nt = nontriang_cert_json(non_triangularizable_check(fam.f, fam.g, 1, 0));
  EXPECT_TRUE(verify_certificate(nt).valid);
  nt["g"] = "x*z - y^2 + 1";
  EXPECT_FALSE(verify_certificate(nt).valid);

  Json mc = mcchain_cert_json(fam.word, fam.chain);
  EXPECT_TRUE(verify_certificate(mc).valid);
  mc["relations"][0]["f"] = "x + 1";
  EXPECT_FALSE(verify_certificate(mc).valid);

  Json unknown = nil;
  unknown["kind"] = "mystery";
  EXPECT_THROW(verify_certificate(unknown), ParseError);
}
