#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"

using namespace weylk;

namespace {
WeylPoly P(const char* s, const Field& F) { return parse_poly(s, F); }
GenMap E(const char* s, const Field& F) { return parse_genmap(s, F, MapKind::endomorphism); }
GenMap D(const char* s, const Field& F) { return parse_genmap(s, F, MapKind::derivation); }

/// Every {0:a, p:b, 2p:c} over F.
std::vector<TwistParams> all_height_two(const Field& F) {
  const std::uint32_t p = F.characteristic();
  std::vector<TwistParams> out;
  for (Coef a = 0; a < F.order(); ++a)
    for (Coef b = 0; b < F.order(); ++b)
      for (Coef c = 0; c < F.order(); ++c) out.emplace_back(F, std::map<std::uint32_t, Coef>{{0, a}, {p, b}, {2 * p, c}});
  return out;
}
}  // namespace

TEST(Endo, Validation) {
  const Field F = Field::make(3, 1);
  EXPECT_TRUE(endo_validate(GenMap::identity(F)));
  EXPECT_TRUE(endo_validate(E("x->x + x^3; y->y", F)));
  EXPECT_TRUE(endo_validate(E("x->2*x + 1; y->2*y + y^3*x^3", F)));
  EXPECT_FALSE(endo_validate(E("x->y; y->x", F)));
  EXPECT_FALSE(endo_validate(E("x->x^2; y->y", F)));
  EXPECT_THROW(endo_apply(E("x->y; y->x", F), WeylPoly::x(F)), precondition_error);
  EXPECT_THROW(endo_validate(D("x->0; y->0", F)), precondition_error);
}

TEST(Endo, ApplyAndCompose) {
  const Field F = Field::make(3, 1);
  const auto m = E("x->x + x^3; y->y", F), n = E("x->2*x; y->2*y + 1", F);
  EXPECT_EQ(endo_apply(m, P("y*x", F)), P("y*x + y*x^3", F));
  EXPECT_EQ(endo_apply(n, P("x*y", F)), P("(2*x)*(2*y + 1)", F));
  std::mt19937_64 rng(21);
  const auto nm = compose(n, m);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_poly(F, 3, rng), g = random_poly(F, 3, rng);
    ASSERT_EQ(endo_apply(nm, f), endo_apply(n, endo_apply(m, f)));
    ASSERT_EQ(endo_apply(m, f * g), endo_apply(m, f) * endo_apply(m, g));
  }
}

TEST(Endo, HomCheckAgreesWithBehavior) {
  const Field F = Field::make(3, 1);
  std::mt19937_64 rng(22);
  const auto elements = gen::probe_elements(F, 10, 2, rng);
  std::vector<GenMap> maps{GenMap::identity(F), E("x->x + x^3; y->y", F), E("x->2*x; y->2*y", F),
                           E("x->x; y->y + 1", F), E("x->2*x + 1; y->2*y + 2", F), E("x->x; y->y + x^3", F)};
  int holds = 0, fails = 0;
  for (const auto& k : gen::twists(F))
    for (const auto& l : gen::twists(F))
      for (const auto& m : maps) {
        const bool h = hom_check(k, l, m);
        ASSERT_EQ(h, hom_check_behavioral(k, l, m, elements).holds) << render(k) << " " << render(l) << " " << render(m);
        (h ? holds : fails)++;
      }
  EXPECT_GT(holds, 10);
  EXPECT_GT(fails, 10);
}

TEST(Endo, InjectivityAndSurjectivityProbes) {
  const Field F = Field::make(2, 1);
  EXPECT_TRUE(endo_injectivity_probe(E("x->x + x^2; y->y", F), ScanConfig::exhaustive(3)).injective);

  const auto obstruct = endo_surjectivity_probe(E("x->x + x^2; y->y", F), WeylPoly::x(F));
  EXPECT_EQ(obstruct.outcome, SurjectivityProbe::Outcome::unreachable);
  EXPECT_TRUE(obstruct.obstruction().has_value());

  const auto reach = endo_surjectivity_probe(GenMap::identity(F), P("y^2*x + 1", F));
  ASSERT_EQ(reach.outcome, SurjectivityProbe::Outcome::reachable);
  EXPECT_EQ(*reach.preimage, P("y^2*x + 1", F));

  const Field F3 = Field::make(3, 1);
  const auto affine = E("x->2*x + 1; y->2*y + 2", F3);
  const auto target = P("y^2*x + x + 2", F3);
  const auto r = endo_surjectivity_probe(affine, target);
  ASSERT_EQ(r.outcome, SurjectivityProbe::Outcome::reachable);
  EXPECT_EQ(endo_apply(affine, *r.preimage), target);

  EXPECT_EQ(endo_surjectivity_probe(E("x->x; y->y + x^3", F3), WeylPoly::y(F3)).outcome,
            SurjectivityProbe::Outcome::inconclusive);
}

TEST(Der, Examples) {
  const Field F = Field::make(5, 1);
  const auto ad = inner_derivation(P("y*x", F));
  EXPECT_EQ(ad.image_of_x, P("-x", F));
  EXPECT_EQ(ad.image_of_y, P("y", F));
  EXPECT_TRUE(der_validate(ad));
  EXPECT_TRUE(der_validate(D("x->1; y->0", F)));
  EXPECT_FALSE(der_validate(D("x->x; y->0", F)));
  EXPECT_THROW(der_apply(D("x->x; y->0", F), WeylPoly::x(F)), precondition_error);
  // E_x: x -> y^{p-1}; its value on x^2 by Leibniz with the rewriting product.
  const auto ex = der_from_triple({WeylPoly::one(F), WeylPoly(F), WeylPoly(F)});
  EXPECT_EQ(ex.image_of_x, P("y^4", F));
  EXPECT_TRUE(ex.image_of_y.is_zero());
  const auto x = WeylPoly::x(F), y4 = P("y^4", F);
  EXPECT_EQ(der_apply(ex, P("x^2", F)), oracle::rewrite_mul(y4, x) + oracle::rewrite_mul(x, y4));
  EXPECT_THROW(der_from_triple({WeylPoly::y(F), WeylPoly(F), WeylPoly(F)}), precondition_error);
}

TEST(Der, InnerDerivationsActAsCommutators) {
  const Field F = Field::make(3, 1);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    const auto q = random_poly(F, 3, rng), f = random_poly(F, 3, rng), g = random_poly(F, 2, rng);
    const auto ad = inner_derivation(q);
    ASSERT_EQ(der_apply(ad, f), commutator(q, f));
    ASSERT_EQ(der_apply(ad, f * g), der_apply(ad, f) * g + f * der_apply(ad, g));
  }
}

class DerAgreement : public ::testing::TestWithParam<const char*> {};

TEST_P(DerAgreement, ConditionsAgreeWithBehavior) {
  const Field F = parse_field_spec(GetParam());
  std::mt19937_64 rng(24);
  const auto elements = gen::probe_elements(F, 8, 2, rng);
  int positive = 0, negative = 0;
  for (const auto& k : gen::twists(F))
    for (int i = 0; i < 30; ++i) {
      const auto t = gen::random_triple(F, rng);
      const auto d = der_from_triple(t);
      const bool iii = hom_der_check(k, d);
      ASSERT_EQ(iii, der_condition_iv(k, t)) << render(k) << " " << render(t);
      ASSERT_EQ(iii, hom_der_behavioral(k, d, elements).holds) << render(k) << " " << render(t);
      (iii ? positive : negative)++;
    }
  EXPECT_GT(positive, 10);
  EXPECT_GT(negative, 10);
}

INSTANTIATE_TEST_SUITE_P(Fields, DerAgreement, ::testing::Values("2", "3", "2^2"));

TEST(DerCase1, CoefficientEquationsMatchGeneralCheck) {
  int displayed_mismatch = 0, positive = 0;
  for (const char* spec : {"2", "3", "5"}) {
    const Field F = parse_field_spec(spec);
    std::mt19937_64 rng(25);
    for (Coef k0 = 1; k0 < F.order(); ++k0) {
      const TwistParams k(F, {{0, k0}});
      for (int i = 0; i < 40; ++i) {
        const auto t = gen::random_triple(F, rng);
        const auto r = der_case1_check(k, t);
        const bool general = hom_der_check(k, der_from_triple(t));
        ASSERT_EQ(r.verdict(), general) << spec << " " << render(k) << " " << render(t);
        displayed_mismatch += r.displayed_verdict() != general;
        positive += general;
      }
    }
  }
  EXPECT_GT(positive, 10);
  // The C(p-1, m-i) k0^{i+p-1} variant is reported, not relied upon.
  RecordProperty("displayed_family_4_mismatches", displayed_mismatch);
}

TEST(DerCase1, Example) {
  const Field F = Field::make(2, 1);
  const TwistParams k(F, {{0, 1}});
  const DerivationTriple t{WeylPoly::one(F), WeylPoly(F), P("y^3", F)};
  EXPECT_TRUE(hom_der_check(k, der_from_triple(t)));
  EXPECT_TRUE(der_case1_check(k, t).verdict());
  EXPECT_THROW(der_case1_check(TwistParams(F, {{2, 1}}), t), precondition_error);
}

TEST(DerCase1, DisplayedVariantDisagreesWhenK0IsNotMinusOne) {
  const Field F = Field::make(3, 1);
  const DerivationTriple t{WeylPoly::one(F), WeylPoly(F), P("2*y^7 + y^5", F)};
  const TwistParams k(F, {{0, 1}});
  ASSERT_TRUE(hom_der_check(k, der_from_triple(t)));
  const auto r = der_case1_check(k, t);
  EXPECT_TRUE(r.verdict());
  EXPECT_FALSE(r.displayed_verdict());
  // With k_0 = -1 the two right-hand sides coincide.
  const DerivationTriple s{WeylPoly::one(F), WeylPoly(F), P("y^7 + y^5", F)};
  const TwistParams m(F, {{0, 2}});
  EXPECT_EQ(der_case1_check(m, s).verdict(), hom_der_check(m, der_from_triple(s)));
  EXPECT_EQ(der_case1_check(m, s).displayed_verdict(), der_case1_check(m, s).verdict());
}

TEST(DerCase2, CorrectedShapeMatchesGeneralCheck) {
  for (const char* spec : {"2", "3", "2^2"}) {
    const Field F = parse_field_spec(spec);
    const std::uint32_t p = F.characteristic();
    std::mt19937_64 rng(26);
    std::vector<TwistParams> ks{TwistParams(F, {{p, 1}}), TwistParams(F, {{0, 1}, {p, 1}}),
                                TwistParams(F, {{2 * p, 1}}), TwistParams(F, {{p * p, 1}}),
                                TwistParams(F, {{0, 1}, {p * p, 1}})};
    for (const auto& k : ks)
      for (int i = 0; i < 40; ++i) {
        const auto t = gen::random_triple(F, rng);
        const auto r = der_case2_classify(k, t);
        ASSERT_EQ(r.corrected_shape, r.general) << spec << " " << render(k) << " " << render(t);
      }
  }
}

TEST(DerCase2, OuterAndInnerExamples) {
  for (const char* spec : {"2", "3", "5"}) {
    const Field F = parse_field_spec(spec);
    const std::uint32_t p = F.characteristic();
    for (const auto& k : {TwistParams(F, {{p, 1}}), TwistParams(F, {{0, 1}, {2 * p, 1}})}) {
      EXPECT_FALSE(hom_der_check(k, der_from_triple({WeylPoly::one(F), WeylPoly(F), WeylPoly(F)})));
      // ad_{yx} moves x to -x, and alpha fixes x, but delta(y) = y is not
      // compatible with the twist of y.
      EXPECT_FALSE(hom_der_check(k, inner_derivation(P("y*x", F)))) << spec << " " << render(k);
      EXPECT_TRUE(hom_der_check(k, inner_derivation(P("x", F))));
    }
  }
}

TEST(Iso, K0Case) {
  const Field F = Field::make(5, 1);
  const auto g = iso_k0_case(TwistParams(F, {{0, 2}}), TwistParams(F, {{0, 3}}));
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->image_of_x, P("4*x", F));
  EXPECT_EQ(g->image_of_y, P("4*y", F));
  EXPECT_FALSE(iso_k0_case(TwistParams(F, {{0, 2}}), TwistParams(F, {{5, 1}})).has_value());
  EXPECT_THROW(iso_k0_case(TwistParams(F, {{5, 1}}), TwistParams(F, {{0, 1}})), precondition_error);
}

TEST(Iso, Examples) {
  const Field F = Field::make(2, 1);
  const auto r = are_isomorphic(parse_twist(F, "0:1,4:1"), parse_twist(F, "4:1"));
  EXPECT_TRUE(r.isomorphic);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(r.certificate->a0, 1u);
  EXPECT_EQ(r.certificate->a1, 1u);
  EXPECT_FALSE(are_isomorphic(TwistParams(F), parse_twist(F, "0:1")).isomorphic);
  EXPECT_FALSE(are_isomorphic(parse_twist(F, "2:1"), parse_twist(F, "4:1")).isomorphic);
  EXPECT_THROW(are_isomorphic(TwistParams(F), TwistParams(Field::make(3, 1))), field_mismatch);
}

class IsoBrute : public ::testing::TestWithParam<const char*> {};

TEST_P(IsoBrute, MatchesAffineSearchAndShipsCertificates) {
  const Field F = parse_field_spec(GetParam());
  const auto ks = all_height_two(F);
  std::size_t iso = 0;
  for (const auto& k : ks)
    for (const auto& l : ks) {
      const auto r = are_isomorphic(k, l);
      ASSERT_EQ(r.isomorphic, oracle::brute_force_affine_iso(k, l)) << render(k) << " vs " << render(l);
      if (!r.isomorphic) continue;
      ++iso;
      const auto fwd = *r.forward(F), bwd = *r.backward(F);
      ASSERT_TRUE(hom_check(k, l, fwd));
      ASSERT_TRUE(hom_check(l, k, bwd));
      const auto id = compose(bwd, fwd);
      ASSERT_EQ(id.image_of_x, WeylPoly::x(F));
      ASSERT_EQ(id.image_of_y, WeylPoly::y(F));
    }
  EXPECT_GE(iso, ks.size());  // at least the diagonal
}

INSTANTIATE_TEST_SUITE_P(Fields, IsoBrute, ::testing::Values("2", "3", "2^2"));

TEST(Iso, EquivalenceRelation) {
  const Field F = Field::make(3, 1);
  const auto ks = all_height_two(F);
  for (const auto& a : ks)
    for (const auto& b : ks) {
      const bool ab = are_isomorphic(a, b).isomorphic;
      ASSERT_EQ(ab, are_isomorphic(b, a).isomorphic);
      if (!ab) continue;
      for (std::size_t c = 0; c < ks.size(); c += 5)
        if (are_isomorphic(b, ks[c]).isomorphic) ASSERT_TRUE(are_isomorphic(a, ks[c]).isomorphic);
    }
}

TEST(Iso, ClosedFormPrediction) {
  const Field F3 = Field::make(3, 1);
  for (Coef a = 0; a < 3; ++a)
    for (Coef b = 1; b < 3; ++b)
      for (Coef c = 0; c < 3; ++c)
        for (Coef d = 1; d < 3; ++d) {
          const TwistParams k(F3, {{0, a}, {3, b}}), l(F3, {{0, c}, {3, d}});
          ASSERT_TRUE(on_field_power_pattern(k));
          ASSERT_EQ(are_isomorphic(k, l).isomorphic, iso_closed_form_prediction(k, l));
        }
  // Over F_2 the k_2 + k_4 = 0 instances fall outside the prediction.
  const Field F2 = Field::make(2, 1);
  const auto k = parse_twist(F2, "0:1,2:1,4:1"), l = parse_twist(F2, "2:1,4:1");
  EXPECT_TRUE(iso_closed_form_prediction(k, l));
  EXPECT_FALSE(are_isomorphic(k, l).isomorphic);
  EXPECT_FALSE(oracle::brute_force_affine_iso(k, l));
  EXPECT_FALSE(on_field_power_pattern(parse_twist(F3, "6:1")));
}
