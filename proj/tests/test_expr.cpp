#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"

using namespace weylk;

TEST(Parse, Examples) {
  const Field F2 = Field::make(2, 1), F5 = Field::make(5, 1);
  EXPECT_EQ(render(parse_poly("x*y", F2)), "y*x + 1");
  EXPECT_TRUE(parse_poly("0", F2).is_zero());
  EXPECT_EQ(render(parse_poly("y^3*x + 2", F5)), "y^3*x + 2");
  EXPECT_EQ(parse_poly("  ( x + 1 ) ^ 2 ", F5), parse_poly("x^2 + 2*x + 1", F5));
  EXPECT_EQ(parse_poly("-x^2", F5), parse_poly("4*x^2", F5));
  EXPECT_EQ(parse_poly("12345678901234567890", F5), WeylPoly(F5));
  EXPECT_EQ(parse_poly("x^0", F5), WeylPoly::one(F5));
  const Field F4 = Field::make(2, 2);
  EXPECT_EQ(parse_poly("[0,1]*y", F4), WeylPoly::monomial(F4, 1, 0, F4.from_digits({0, 1})));
}

TEST(Parse, ErrorsCarryPositions) {
  const Field F = Field::make(3, 1);
  auto position = [&](const char* text) -> std::size_t {
    try {
      parse(text, F);
    } catch (const parse_error& e) {
      return e.position();
    }
    ADD_FAILURE() << "accepted " << text;
    return 0;
  };
  EXPECT_EQ(position("yx"), 1u);
  EXPECT_EQ(position("x + "), 4u);
  EXPECT_EQ(position("(x + y"), 6u);
  EXPECT_EQ(position("x ^ y"), 4u);
  EXPECT_EQ(position("x^99999999"), 2u);
  EXPECT_EQ(position("2x"), 1u);
  EXPECT_EQ(position("[3]"), 1u);
  EXPECT_EQ(position("[1,1]"), 5u);
  EXPECT_EQ(position("x $ y"), 2u);
}

TEST(Parse, ExponentBound) {
  const Field F = Field::make(2, 1);
  EXPECT_NO_THROW(parse("x^65536", F));
  EXPECT_THROW(parse("x^65537", F), parse_error);
}

TEST(Parse, FuzzCorpusIsRejectedCleanly) {
  const Field F = Field::make(3, 1);
  const char* corpus[] = {"", " ", "+", "x+", "*x", "x**y", "x^", "x^-1", "^2", "()", "(", ")", "x)", "((x)",
                          "xy", "x y", "2 3", "x(y)", "y2", "[", "[]", "[1", "[,1]", "1.5", "z", "x^2^", "--",
                          "x -", "#", "x^(2)", "\t\n", "x\xff", "[1,]"};
  for (const char* text : corpus) EXPECT_THROW(parse(text, F), parse_error) << '"' << text << '"';
  std::mt19937_64 rng(41);
  const std::string alphabet = "xy0123^*+-()[], ";
  int rejected = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    for (int n = static_cast<int>(rng() % 12); n >= 0; --n) s += alphabet[rng() % alphabet.size()];
    try {
      eval(*parse(s, F), F, EvalMode::associative());
    } catch (const parse_error&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 1000);
}

TEST(Parse, RoundTrip) {
  for (const char* spec : {"2", "3", "5", "2^2", "3^2"}) {
    const Field F = parse_field_spec(spec);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
      const auto f = random_sparse_poly(F, 6, 5, rng);
      const auto text = render(f);
      ASSERT_EQ(render(parse_poly(text, F)), text) << spec;
      ASSERT_EQ(parse_poly(text, F), f);
    }
  }
}

TEST(Eval, TwistedModeGroupsLeft) {
  const Field F = Field::make(3, 1);
  const TwistParams k(F, {{0, 1}});
  EXPECT_EQ(eval(*parse("x*y", F), F, EvalMode::twisted(TwistParams(F))), parse_poly("y*x + 1", F));
  // each (y*x) is itself a twisted product
  const auto yx = yau_mul(k, WeylPoly::y(F), WeylPoly::x(F));
  const auto left = eval(*parse("(y*x)*(y*x)*(y*x)", F), F, EvalMode::twisted(k));
  const auto right = eval(*parse("(y*x)*((y*x)*(y*x))", F), F, EvalMode::twisted(k));
  EXPECT_EQ(left, yau_mul(k, yau_mul(k, yx, yx), yx));
  EXPECT_EQ(right, yau_mul(k, yx, yau_mul(k, yx, yx)));
  EXPECT_FALSE(left == right);
  EXPECT_EQ(eval(*parse("(y*x)^3", F), F, EvalMode::twisted(k)), left);
  EXPECT_EQ(eval(*parse("y^0", F), F, EvalMode::twisted(k)), WeylPoly::one(F));
  EXPECT_EQ(eval(*parse("x + 2", F), F, EvalMode::twisted(k)), parse_poly("x + 2", F));
}

TEST(GenMapText, ParsesBothOrders) {
  const Field F = Field::make(2, 1);
  const auto m = parse_genmap("y -> y ; x -> x + x^2", F, MapKind::endomorphism);
  EXPECT_EQ(m.image_of_x, parse_poly("x + x^2", F));
  EXPECT_EQ(m.image_of_y, WeylPoly::y(F));
  EXPECT_EQ(render(m), "x->x^2 + x; y->y");
  EXPECT_EQ(parse_genmap(render(m), F, MapKind::endomorphism).image_of_x, m.image_of_x);
  for (const char* bad : {"x->x", "x->x; x->y", "z->x; y->y", "x x; y->y", "x->; y->y", "x->x; y->y;"})
    EXPECT_THROW(parse_genmap(bad, F, MapKind::endomorphism), parse_error) << bad;
  try {
    parse_genmap("x->x; y->y +", F, MapKind::endomorphism);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 12u);
  }
}
