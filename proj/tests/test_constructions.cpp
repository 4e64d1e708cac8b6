#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace lnd;
using fixtures::P;

namespace {

Derivation D3(const std::string& a, const std::string& b, const std::string& c) {
  return Derivation::parse(ring_xyz(), {a, b, c});
}

Polynomial T(const std::string& s) { return parse_poly(s, ring_t1t2()); }

}  // namespace

TEST(CConstruction, RandomPartialInstancesAgainstOracle) {
  std::mt19937 rng(31);
  for (int inst = 0; inst < 25; ++inst) {
    auto ci = fixtures::random_c_instance(rng, 1 + inst % 3);
    auto c = c_construction(ci.deltas, ci.fs);
    ASSERT_EQ(c.per_generator.size(), 3u);
    for (std::size_t g = 0; g < 3; ++g) {
      unsigned e = fixtures::oracle_c_bound(ci, g);
      EXPECT_EQ(c.per_generator[g], e);
      EXPECT_TRUE(fixtures::oracle_kills(ci, g, e)) << "instance " << inst << " generator " << g;
    }
  }
}

TEST(CConstruction, Preconditions) {
  Derivation dx = Derivation::partial(ring_xyz(), "x"), dy = Derivation::partial(ring_xyz(), "y");
  EXPECT_THROW(c_construction({dx, dy}, {P("1")}), InvalidArgument);
  EXPECT_THROW(c_construction({dx, dy}, {P("1"), P("0")}), InvalidArgument);
  // f_2 = y is not in Ker d/dy
  EXPECT_THROW(c_construction({dx, dy}, {P("1"), P("y")}), ConditionFailed);
  // y*d/dx and d/dy do not commute
  EXPECT_THROW(c_construction({P("y") * dx, dy}, {P("1"), P("z")}), ConditionFailed);
  auto ok = c_construction({dx, dy}, {P("z"), P("x^2 + z")});
  EXPECT_EQ(ok.delta, P("z") * dx + P("x^2 + z") * dy);
}

TEST(MCChain, ExampleWord) {
  auto w = word_from_json(fixtures::load("example_word.json"));
  auto chain = mc_chain_from_word(w);
  ASSERT_EQ(chain.derivations.size(), 4u);
  EXPECT_EQ(chain.derivations[2], D3("0", "x", "2*y"));
  EXPECT_EQ(chain.derivations[3], D3("0", "2*x^2*z - 2*x*y^2", "4*x*y*z - 4*y^3 + x"));
  ASSERT_EQ(chain.relations.size(), 2u);
  EXPECT_EQ(chain.relations[0].h, P("1"));
  EXPECT_EQ(chain.relations[0].sigma, P("2*y"));
  EXPECT_EQ(chain.relations[0].f, P("x"));
  EXPECT_EQ(chain.relations[1].sigma, P("2*x*z - 2*y^2"));
  for (const auto& c : validate_chain(chain)) EXPECT_TRUE(c.pass) << c.name;
  // relations checked with an independent expansion on each generator
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& rel = chain.relations[k];
    for (std::size_t v = 0; v < 3; ++v) {
      auto lhs = oracle::mul(oracle::from(rel.h), oracle::from(chain.derivations[k + 2].image(v)));
      auto rhs = oracle::add(oracle::mul(oracle::from(rel.sigma), oracle::from(chain.derivations[k + 1].image(v))),
                             oracle::mul(oracle::from(rel.f), oracle::from(chain.derivations[k].image(v))));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(MCChain, RemarkCandidateAndTampering) {
  auto w = word_from_json(fixtures::load("remark_candidate_word.json"));
  auto chain = mc_chain_from_word(w);
  EXPECT_EQ(chain.derivations.size(), 5u);
  auto bad = chain;
  bad.relations[0].f = P("x + 1");
  bool any_fail = false;
  for (const auto& c : validate_chain(bad)) any_fail |= !c.pass;
  EXPECT_TRUE(any_fail);
  DecompositionWord unreduced{Field::Qx, {TriangularFactor{}, TriangularFactor{}, TriangularFactor{}}};
  EXPECT_THROW(mc_chain_from_word(unreduced), InvalidArgument);
}

TEST(PhiSearch, FamilyValues) {
  Polynomial f = P("x*z - y^2"), r = P("x^2 + y*(x*z - y^2)");
  auto res = minimal_phi_search(f, P("x"), r, 4);
  EXPECT_EQ(res.degree, 2u);
  EXPECT_EQ(res.phi, parse_poly("r^2 + f^3", ring_fr()));
  EXPECT_EQ(res.value, r * r + f.pow(3));
  EXPECT_TRUE(try_exact_div(res.value, P("x")).has_value());
  auto lin = minimal_phi_search(f, P("x"), P("y"), 3, 1);
  EXPECT_EQ(lin.phi, parse_poly("r^2 + f", ring_fr()));
  EXPECT_THROW(minimal_phi_search(f, P("x"), r, 1), NotFoundWithinBounds);
  EXPECT_THROW(minimal_phi_search(f, P("0"), r, 2), InvalidArgument);
}

TEST(LocalSlice, ReproducesFamily) {
  Polynomial f = P("x*z - y^2"), r = P("x^2 + y*(x*z - y^2)");
  auto s = local_slice_construction(jacobian3(f, P("x")), f, P("x"), r);
  EXPECT_EQ(s.P, parse_poly("t", ring_t()));
  EXPECT_EQ(s.delta, family_E({2, 1, T("t1")}).E);
  EXPECT_EQ(s.nilpotency.indices, (std::vector<unsigned>{3, 5, 7}));
  EXPECT_EQ(s.delta(r), -(s.h * f));
}

TEST(LocalSlice, ScaledAndReducibleSeeds) {
  Polynomial f = P("x*z - y^2"), r = P("x^2 + y*(x*z - y^2)");
  auto scaled = local_slice_construction(jacobian3(f, P("2*x")), f, P("2*x"), r);
  EXPECT_EQ(scaled.scalar, Rational(1));
  EXPECT_TRUE(is_irreducible(scaled.delta).irreducible);
  // g = x^2: the construction goes through but Delta is not irreducible
  auto sq = local_slice_construction(jacobian3(f, P("x^2")), f, P("x^2"), r);
  EXPECT_EQ(sq.P, parse_poly("2*t", ring_t()));
  EXPECT_FALSE(is_irreducible(sq.delta).irreducible);
  // D must be a constant multiple of Jac(f, g, .)
  EXPECT_THROW(local_slice_construction(P("x") * jacobian3(f, P("x")), f, P("x"), r), ConditionFailed);
  EXPECT_THROW(local_slice_construction(jacobian3(f, P("x")), f, P("x"), P("x*y")), ConditionFailed);
  EXPECT_THROW(local_slice_construction(jacobian3(f, P("x")), P("y"), P("x"), r), ConditionFailed);
}

TEST(FamilyE, GoldenAndKernel) {
  auto fe = family_E({2, 1, T("t1^2")});
  EXPECT_EQ(fe.E, jacobian3(fixtures::freudenburg_u(), fixtures::freudenburg_v()));
  for (unsigned m : {2u, 3u})
    for (unsigned n : {1u, 2u}) {
      auto e = family_E({m, n, T("t1 + t2")});
      EXPECT_TRUE(e.E(e.f).is_zero());
      EXPECT_TRUE(e.E(e.h).is_zero());
      EXPECT_EQ(e.E(e.r), -(e.h * e.f.pow(n)));
    }
  EXPECT_THROW(family_E({1, 1, T("t1")}), InvalidArgument);
  EXPECT_THROW(family_E({2, 0, T("t1")}), InvalidArgument);
  EXPECT_THROW(family_E({2, 1, T("t2 + 1")}), ConditionFailed);
}

TEST(FamilyEx1, ExampleDerivation) {
  auto fam = family_ex1({parse_poly("x", ring_x()), parse_poly("x", ring_x()), parse_poly("t^2", ring_xt()),
                         parse_poly("t^2", ring_xt())});
  EXPECT_EQ(fam.D, D3("0", "2*x^2*z - 2*x*y^2", "4*x*y*z - 4*y^3 + x"));
  EXPECT_EQ(fam.f, P("x*y - (x*z - y^2)^2"));
  EXPECT_EQ(fam.g, P("x*z - y^2"));
  EXPECT_EQ(fam.word.swap_count(), 2u);
  EXPECT_EQ(level_from_word(fam.word), 4u);
  EXPECT_EQ(fam.D(fam.g), P("x^2"));
  EXPECT_THROW(family_ex1({parse_poly("x", ring_x()), parse_poly("1", ring_x()), parse_poly("t^2", ring_xt()),
                           parse_poly("t^2", ring_xt())}),
               ConditionFailed);
  EXPECT_THROW(family_ex1({parse_poly("x", ring_x()), parse_poly("x", ring_x()), parse_poly("t", ring_xt()),
                           parse_poly("t^2", ring_xt())}),
               ConditionFailed);
}
