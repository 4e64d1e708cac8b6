#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace lnd;

namespace {

PlaneAutomorphism A(Field f, const std::string& y, const std::string& z) { return PlaneAutomorphism::parse(f, y, z); }

TriangularFactor beta() {
  TriangularFactor b;
  b.v = RationalFunction::x();
  b.F = -plane_y() * plane_y();
  return b;
}

const char* kAlphaY = "x*y - (x*z - y^2)^2";
const char* kAlphaZ = "x*z - y^2";

}  // namespace

TEST(PlaneAutomorphism, ParseAndPrint) {
  auto a = A(Field::Qx, "y/x + z", "x*z");
  EXPECT_EQ(to_string(a), "((x*z + y)/(x), x*z)");
  EXPECT_EQ(A(Field::Q, "y", "z"), PlaneAutomorphism::identity());
  EXPECT_THROW(A(Field::Q, "x*y", "z"), InvalidArgument);
  EXPECT_THROW(A(Field::Qx, "y + w", "z"), UnknownVariable);
}

TEST(PlaneAutomorphism, ComposeIsSubstitution) {
  auto a = A(Field::Q, "y + z^2", "z");
  auto b = A(Field::Q, "y", "z + y^3");
  // a after b: images of a evaluated at the images of b
  EXPECT_EQ(compose(a, b), A(Field::Q, "y + (z + y^3)^2", "z + y^3"));
  EXPECT_EQ(compose(a, PlaneAutomorphism::identity()), a);
  EXPECT_EQ(compose(PlaneAutomorphism::swap(), PlaneAutomorphism::swap()), PlaneAutomorphism::identity());
}

TEST(PlaneAutomorphism, InverseComposesToIdentity) {
  std::mt19937 rng(21);
  for (int i = 0; i < 30; ++i) {
    auto w = fixtures::random_word(rng, i % 2 ? Field::Qx : Field::Q, 2, 2);
    auto a = recompose(w);
    auto inv = invert(a);
    EXPECT_EQ(compose(a, inv), PlaneAutomorphism::identity(w.field)) << to_string(a);
    EXPECT_EQ(compose(inv, a), PlaneAutomorphism::identity(w.field)) << to_string(a);
    EXPECT_EQ(invert(w), inv);
  }
}

TEST(Triangular, InverseAndReadBack) {
  TriangularFactor t;
  t.u = Rational(2);
  t.c = Rational(3);
  t.v = RationalFunction::x();
  t.F = parse_plane("y^3 - x*y");
  auto a = t.as_automorphism(Field::Qx);
  EXPECT_EQ(compose(a, t.inverse(Field::Qx)), PlaneAutomorphism::identity(Field::Qx));
  EXPECT_EQ(TriangularFactor::from_automorphism(a), t);
  EXPECT_FALSE(t.is_affine());
  EXPECT_THROW(TriangularFactor::from_automorphism(PlaneAutomorphism::swap()), InvalidArgument);
}

TEST(Decompose, ExampleAutomorphism) {
  auto alpha = A(Field::Qx, kAlphaY, kAlphaZ);
  auto w = decompose_tame(alpha);
  EXPECT_EQ(w.swap_count(), 2u);
  EXPECT_TRUE(w.is_reduced());
  EXPECT_EQ(level_from_word(w), 4u);
  EXPECT_EQ(recompose(w), alpha);
  // the first factor is (x*y, x*z - y^2)
  EXPECT_EQ(w.triangular[0].as_automorphism(Field::Qx), A(Field::Qx, "x*y", "x*z - y^2"));
}

TEST(Decompose, ThetaBetaThetaBeta) {
  DecompositionWord w{Field::Qx, {beta(), beta(), TriangularFactor{}}};
  EXPECT_EQ(recompose(w), A(Field::Qx, kAlphaY, kAlphaZ));
  auto stored = fixtures::load("example_word.json");
  EXPECT_EQ(recompose(word_from_json(stored)), A(Field::Qx, kAlphaY, kAlphaZ));
}

TEST(Decompose, RemarkCandidateHasThreeSwaps) {
  auto w = word_from_json(fixtures::load("remark_candidate_word.json"));
  EXPECT_EQ(w.swap_count(), 3u);
  auto again = decompose_tame(recompose(w));
  EXPECT_EQ(again.swap_count(), 3u);
  EXPECT_EQ(level_from_word(again), 5u);
}

TEST(Decompose, NotAnAutomorphism) {
  EXPECT_THROW(decompose_tame(A(Field::Q, "y^2", "z")), NotAnAutomorphism);
  EXPECT_THROW(decompose_tame(A(Field::Q, "y + z", "y + z")), NotAnAutomorphism);
  EXPECT_THROW(decompose_tame(A(Field::Q, "y + z^2", "z + y^2")), NotAnAutomorphism);
  // invertible over Q(x) but the constant x is not a unit over Q
  EXPECT_THROW(A(Field::Q, "x*y", "z"), InvalidArgument);
}

TEST(Decompose, RoundTripOverQ) {
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    auto w = fixtures::random_word(rng, Field::Q);
    auto a = recompose(w);
    auto d = decompose_tame(a);
    EXPECT_EQ(recompose(d), a);
    EXPECT_EQ(d.swap_count(), w.swap_count()) << to_string(a);
  }
}

TEST(Decompose, RoundTripOverQx) {
  std::mt19937 rng(6);
  for (int i = 0; i < 25; ++i) {
    auto w = fixtures::random_word(rng, Field::Qx, 2);
    auto a = recompose(w);
    auto d = decompose_tame(a);
    EXPECT_EQ(recompose(d), a);
    EXPECT_EQ(d.swap_count(), w.swap_count()) << to_string(a);
  }
}

TEST(Level, SmallCases) {
  EXPECT_EQ(level(PlaneAutomorphism::identity()), 2u);
  EXPECT_EQ(level(PlaneAutomorphism::swap()), 1u);
  auto t = A(Field::Q, "y", "z + y^2");
  EXPECT_EQ(level(t), 2u);
  EXPECT_EQ(level(compose(PlaneAutomorphism::swap(), t)), 3u);
  EXPECT_EQ(level(compose(t, PlaneAutomorphism::swap())), 1u);
}

TEST(Psi, Representative) {
  auto f = fixtures::P("x*z - y^2"), s = fixtures::P("y"), v = fixtures::P("x");
  Derivation d = Derivation::parse(ring_xyz(), {"0", "x", "2*y"});
  auto a = psi_representative(f, s, v, &d);
  EXPECT_EQ(a, A(Field::Qx, "x*z - y^2", "y/x"));
  EXPECT_EQ(level(a), 3u);
  EXPECT_FALSE(is_B_automorphism(a));
  EXPECT_THROW(psi_representative(f, s, fixtures::P("2*y"), &d), ConditionFailed);
  EXPECT_THROW(psi_representative(f, s, fixtures::P("y"), nullptr), InvalidArgument);
}

TEST(Psi, BAutomorphism) {
  EXPECT_TRUE(is_B_automorphism(A(Field::Qx, "y + x^2", "z + x*y^3")));
  EXPECT_FALSE(is_B_automorphism(A(Field::Qx, "x*y", "z")));
  EXPECT_TRUE(is_B_automorphism(A(Field::Qx, kAlphaY, kAlphaZ)) == false);
}

TEST(WordJson, RoundTrip) {
  std::mt19937 rng(8);
  for (int i = 0; i < 10; ++i) {
    auto w = fixtures::random_word(rng, Field::Qx, 2);
    auto back = word_from_json(Json::parse(to_json(w).dump()));
    EXPECT_EQ(recompose(back), recompose(w));
    EXPECT_EQ(back.swap_count(), w.swap_count());
  }
  EXPECT_THROW(word_from_json(Json::parse(R"({"field": "Q", "word": [{"tri": {"F": "x*y^2"}}]})")), InvalidArgument);
  EXPECT_THROW(word_from_json(Json::parse(R"({"field": "R", "word": []})")), InvalidArgument);
  EXPECT_THROW(word_from_json(Json::parse(R"({"field": "Q", "word": [{"tri": {}}, {"tri": {}}]})")), InvalidArgument);
}

TEST(Invert, TriangularAndExample) {
  auto t = A(Field::Qx, "y", "x*z - y^2");
  EXPECT_EQ(invert(t), A(Field::Qx, "y", "(z + y^2)/x"));
  EXPECT_EQ(invert(PlaneAutomorphism::swap()), PlaneAutomorphism::swap());
  auto alpha = A(Field::Qx, kAlphaY, kAlphaZ);
  EXPECT_EQ(compose(alpha, invert(alpha)), PlaneAutomorphism::identity(Field::Qx));
  EXPECT_EQ(compose(invert(alpha), alpha), PlaneAutomorphism::identity(Field::Qx));
}

TEST(Decompose, LeftTriangularCosetInvariance) {
  std::mt19937 rng(9);
  for (int i = 0; i < 20; ++i) {
    Field f = i % 2 ? Field::Qx : Field::Q;
    auto a = recompose(fixtures::random_word(rng, f, 2, 3));
    auto tau = fixtures::random_word(rng, f, 0, 3).triangular[0].as_automorphism(f);
    auto base = decompose_tame(a), moved = decompose_tame(compose(tau, a));
    EXPECT_EQ(moved.swap_count(), base.swap_count()) << to_string(a);
    EXPECT_EQ(level_from_word(moved), level_from_word(base)) << to_string(a);
  }
}
