#include <twistlab/theorems.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

using namespace twistlab;
namespace tt = twistlab::testing;

namespace {

void expect_verdict(const TheoremVerdict& v, bool hyp, std::optional<bool> concl) {
  EXPECT_EQ(v.hypotheses_hold, hyp) << to_json(v).dump();
  EXPECT_EQ(v.conclusion_holds, concl) << to_json(v).dump();
  EXPECT_FALSE(v.violated());
}

}  // namespace

TEST(RamifiedPrimesBad, FiveTorsionGrowth) {
  auto C = make_context(tt::fixture("50a2"), Integer(5));
  auto v = check_ramified_primes_bad(C);
  expect_verdict(v, true, true);
  EXPECT_EQ(v.evidence["growth_primes_ge_5"], ordered_json::array({5}));
  EXPECT_EQ(v.evidence["ramified_primes"], ordered_json::array({"5"}));
}

TEST(TwistNoLargeTorsion, GoodPrimeInD) {
  auto C = make_context(tt::fixture("50a2"), Integer(7));
  expect_verdict(check_twist_no_large_torsion(C), true, true);
  auto local = check_local_twist_corollary(C, Integer(7));
  expect_verdict(local, true, true);
  EXPECT_EQ(local.evidence["twist_kodaira_at_p"], "I0*");
  EXPECT_EQ(local.evidence["twist_f_p"], 2);
  EXPECT_FALSE(local.evidence.contains("kodaira_flag"));

  // d = 5 divides the conductor: hypotheses fail
  expect_verdict(check_twist_no_large_torsion(tt::fixture("50a2"), Integer(5)), false, std::nullopt);
  expect_verdict(check_local_twist_corollary(tt::fixture("50a2"), Integer(5), Integer(5)), false, std::nullopt);
  EXPECT_THROW(check_local_twist_corollary(C, Integer(6)), NotPrime);
}

TEST(GrowthPowerOf2, ThreeTorsionOverQSqrtMinus3) {
  auto C = make_context(tt::fixture("19a2"), Integer(-3));
  EXPECT_EQ(C.growth.odd_L_torsion.to_string(), "Z/3Z x Z/3Z");
  auto v = check_growth_power_of_2(C);
  expect_verdict(v, true, true);
  EXPECT_EQ(v.evidence["part_ii_hypotheses_hold"], false);
  EXPECT_EQ(v.evidence["part_i_conclusion_holds"], true);
  expect_verdict(check_twist_no_large_torsion(C), false, std::nullopt);
  expect_verdict(check_ramified_primes_bad(C), false, std::nullopt);
  expect_verdict(check_heegner_corollary(C), false, std::nullopt);
}

TEST(GrowthPowerOf2, FixtureWithTrivialTorsion) {
  auto C = make_context(tt::fixture("50a4"), Integer(-7));
  expect_verdict(check_twist_no_large_torsion(C), true, true);
  expect_verdict(check_local_twist_corollary(C, Integer(7)), true, true);
  auto v = check_growth_power_of_2(C);
  expect_verdict(v, true, true);
  EXPECT_EQ(v.evidence["part_ii_hypotheses_hold"], true);
  EXPECT_EQ(v.evidence["part_ii_conclusion_holds"], true);

  auto D = make_context(tt::fixture("50a4"), Integer(-3));
  EXPECT_EQ(D.growth.odd_L_torsion.to_string(), "Z/3Z");
  expect_verdict(check_growth_power_of_2(D), true, true);

  auto F = make_context(tt::fixture("50a4"), Integer(-1));
  for (const auto& v2 : run_all(F)) expect_verdict(v2, false, std::nullopt);
}

TEST(Heegner, Fixtures) {
  auto C = make_context(tt::fixture("50a2"), Integer(-31));
  auto v = check_heegner_corollary(C);
  expect_verdict(v, true, true);
  EXPECT_EQ(v.evidence["quotient_odd_part"], 1);
  EXPECT_EQ(v.evidence["u_L"], 1);
  EXPECT_EQ(v.evidence["tamagawa_product"], "3");
  EXPECT_EQ(C.growth.quotient_odd_part, 1);

  expect_verdict(check_heegner_corollary(tt::fixture("50a2"), Integer(-1)), false, std::nullopt);
  auto w = check_heegner_corollary(tt::fixture("50a2"), Integer(-3));
  expect_verdict(w, false, std::nullopt);
  EXPECT_EQ(w.evidence["heegner_reason"], "2 is inert");
}

TEST(RunAll, ShapeAndOrder) {
  auto vs = run_all(tt::fixture("50a2"), Integer(-31));
  ASSERT_EQ(vs.size(), 5u);
  EXPECT_EQ(vs[0].theorem_id, TheoremId::TwistNoLargeTorsion);
  EXPECT_EQ(vs[1].theorem_id, TheoremId::RamifiedPrimesBad);
  EXPECT_EQ(vs[2].theorem_id, TheoremId::TorsionGrowthPowerOf2);
  EXPECT_EQ(vs[3].theorem_id, TheoremId::LocalTwist);
  EXPECT_EQ(vs[4].theorem_id, TheoremId::Heegner);
  auto j = to_json(vs[0]);
  for (const char* k : {"theorem_id", "hypotheses_hold", "conclusion_holds", "evidence"}) EXPECT_TRUE(j.contains(k));
  EXPECT_EQ(j["theorem_id"], "Thm_TwistNoLargeTorsion");
}

TEST(RunAll, WitnessPrime) {
  EXPECT_EQ(local_witness_prime(make_context(tt::fixture("50a2"), Integer(-35))), 7);
  EXPECT_EQ(local_witness_prime(make_context(tt::fixture("50a2"), Integer(-15))), 5);
  EXPECT_EQ(local_witness_prime(make_context(tt::fixture("50a2"), Integer(-1))), 2);
  EXPECT_EQ(local_witness_prime(make_context(tt::fixture("50a2"), Integer(6))), 3);
}

TEST(RunAll, NoViolationsOnFixtureSweep) {
  for (const auto& f : tt::fixtures()) {
    for (long d = -30; d <= 30; ++d) {
      if (d == 0 || d == 1 || !is_squarefree(Integer(d))) continue;
      std::vector<TheoremVerdict> vs;
      ASSERT_NO_THROW(vs = run_all(tt::curve_of(f), Integer(d))) << f.label << " d=" << d;
      for (const auto& v : vs) EXPECT_EQ(v.hypotheses_hold, v.conclusion_holds.has_value());
    }
  }
}

TEST(RunAll, RejectsSquareD) {
  EXPECT_THROW(run_all(tt::fixture("50a2"), Integer(1)), TrivialExtension);
  EXPECT_THROW(run_all(tt::fixture("50a2"), Integer(0)), ZeroInput);
}

TEST(Violation, CarriesEvidence) {
  Violation v("boom", ordered_json{{"d", 5}});
  EXPECT_STREQ(v.kind(), "Violation");
  EXPECT_EQ(v.evidence()["d"], 5);
}
