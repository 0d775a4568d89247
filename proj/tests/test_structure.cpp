#include <gtest/gtest.h>

#include "generators.hpp"

using namespace weylk;

TEST(Commuter, Examples) {
  const Field F = Field::make(3, 1);
  const TwistParams k(F, {{3, 1}});
  EXPECT_TRUE(in_commuter(k, parse_poly("y^3*x^3 + x^6 + 2", F)).member);
  const auto v = in_commuter(k, parse_poly("y*x^3", F));
  EXPECT_FALSE(v.member);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_FALSE(star_commutator(k, parse_poly("y*x^3", F), *v.witness).is_zero());
}

TEST(Commuter, ScanMatchesStructureOverF2) {
  const Field F = Field::make(2, 1);
  for (const auto& k : gen::twists(F)) {
    const auto records = commuter_scan(k, ScanConfig::exhaustive(3));
    ASSERT_EQ(records.size(), 1024u);
    std::size_t members = 0;
    for (const auto& r : records) {
      ASSERT_EQ(r.member, in_p_power_subalgebra(r.candidate));
      members += r.member;
    }
    // span{1, x^2, y^2} inside degree <= 3
    EXPECT_EQ(members, 8u);
  }
}

TEST(Commuter, SampledOverF3AndF4) {
  for (const char* spec : {"3", "2^2"}) {
    const Field F = parse_field_spec(spec);
    for (const auto& k : gen::twists(F))
      for (const auto& r : commuter_scan(k, ScanConfig::randomized(4, 200, 11)))
        ASSERT_EQ(r.member, in_p_power_subalgebra(r.candidate));
  }
}

class Nuclei : public ::testing::TestWithParam<NucleusSide> {};

TEST_P(Nuclei, EmptyForNonzeroTwistOverF2) {
  const Field F = Field::make(2, 1);
  for (const auto& k : gen::twists(F)) {
    const auto scan = nucleus_scan(k, GetParam(), ScanConfig::exhaustive(2));
    if (k.is_zero()) {
      EXPECT_TRUE(scan.everything);
      continue;
    }
    EXPECT_FALSE(scan.everything);
    // zero is always in the nucleus and is not scanned
    EXPECT_EQ(scan.records.size(), 63u);
    EXPECT_TRUE(scan.members().empty()) << to_string(GetParam()) << " " << render(k);
    for (const auto& r : scan.records)
      if (!r.member) EXPECT_FALSE(r.witness.empty());
  }
}

TEST_P(Nuclei, EmptyForNonzeroTwistSampledOverF3) {
  const Field F = Field::make(3, 1);
  for (const auto& k : gen::twists(F)) {
    if (k.is_zero()) continue;
    for (const auto& r : nucleus_scan(k, GetParam(), ScanConfig::randomized(3, 100, 3)).records)
      ASSERT_FALSE(r.member) << render(r.candidate);
  }
}

INSTANTIATE_TEST_SUITE_P(Sides, Nuclei, ::testing::Values(NucleusSide::left, NucleusSide::middle, NucleusSide::right));

TEST(Center, Dichotomy) {
  const Field F = Field::make(2, 1);
  for (const auto& k : gen::twists(F)) {
    const auto c = center_of(k, ScanConfig::exhaustive(2));
    EXPECT_EQ(c.kind == CenterDescriptor::Kind::zero, !k.is_zero());
    EXPECT_EQ(c.text(), k.is_zero() ? "K[x^p, y^p]" : "{0}");
  }
}

TEST(PowerAssoc, WitnessIffNonzero) {
  for (const char* spec : {"2", "3", "5", "2^2"}) {
    const Field F = parse_field_spec(spec);
    for (const auto& k : gen::twists(F)) {
      const auto w = power_assoc_witness(k);
      ASSERT_EQ(w.has_value(), !k.is_zero());
      if (w) {
        EXPECT_EQ(w->second, star_associator(k, w->first, w->first, w->first));
        EXPECT_FALSE(w->second.is_zero());
      }
    }
  }
  const Field F = Field::make(3, 1);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_poly(F, 3, rng);
    ASSERT_TRUE(associator(a, a, a).is_zero());
  }
}

TEST(Nonsimple, XToThePGeneratesProperIdeal) {
  for (const char* spec : {"2", "3"}) {
    const Field F = parse_field_spec(spec);
    for (const auto& k : gen::twists(F)) {
      const auto w = nonsimple_witness(k, ScanConfig::randomized(3, 150, 4));
      EXPECT_EQ(w.generator, WeylPoly::monomial(F, 0, F.characteristic()));
      EXPECT_EQ(w.bound, F.characteristic());
      EXPECT_GT(w.checked, 100u);
    }
  }
}

TEST(Sampling, EnumerationAndCeiling) {
  const Field F = Field::make(2, 1);
  EXPECT_EQ(enumeration_size(F, 4), 32768u);
  EXPECT_EQ(scan_elements(F, ScanConfig::exhaustive(1)).size(), 8u);
  EXPECT_THROW(scan_elements(Field::make(5, 1), ScanConfig::exhaustive(5)), std::exception);
  const auto a = scan_elements(F, ScanConfig::randomized(3, 20, 9)), b = scan_elements(F, ScanConfig::randomized(3, 20, 9));
  EXPECT_EQ(a, b);
}
