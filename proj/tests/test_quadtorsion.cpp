#include <twistlab/quadtorsion.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

using namespace twistlab;
namespace tt = twistlab::testing;

namespace {

std::vector<long> squarefree_ds(long bound) {
  std::vector<long> out;
  for (long d = -bound; d <= bound; ++d)
    if (d != 0 && d != 1 && is_squarefree(Integer(d))) out.push_back(d);
  return out;
}

}  // namespace

TEST(OddTorsionOverL, Fixtures) {
  EXPECT_EQ(odd_torsion_over_L(tt::fixture("50a2"), Integer(5)).to_string(), "Z/15Z");
  EXPECT_EQ(odd_torsion_over_L(tt::fixture("50a4"), Integer(-3)).to_string(), "Z/3Z");
  EXPECT_EQ(odd_torsion_over_L(tt::fixture("19a2"), Integer(-3)).to_string(), "Z/3Z x Z/3Z");
  EXPECT_EQ(odd_torsion_over_L(tt::fixture("50a4"), Integer(-1)).to_string(), "0");
  EXPECT_THROW(odd_torsion_over_L(tt::fixture("50a2"), Integer(9)), TrivialExtension);
}

TEST(OddTorsionOverL, DirectComputationAgrees) {
  long triples = 0;
  for (const auto& f : tt::fixtures()) {
    auto E = tt::curve_of(f);
    for (long d : squarefree_ds(20)) {
      auto odd = odd_torsion_over_L(E, Integer(d));
      for (long ell : {3L, 5L, 7L}) {
        auto direct = direct_ell_torsion_over_L(E, Integer(d), ell);
        EXPECT_EQ(direct.structure(), odd.ell_part(ell)) << f.label << " d=" << d << " ell=" << ell;
        ++triples;
      }
    }
  }
  EXPECT_GE(triples, 400);
}

TEST(DirectEllTorsion, PointsLieOnTheCurveWithTheRightOrder) {
  auto E = tt::fixture("50a2");
  auto G = direct_ell_torsion_over_L(E, Integer(5), 5);
  ASSERT_EQ(G.rank, 1);
  ASSERT_EQ(G.points.size(), 4u);
  auto C = lift_curve<QuadElement>(E);
  for (const auto& P : G.points) {
    EXPECT_TRUE(on_curve(C, P));
    EXPECT_EQ(point_order(C, P, 10), 5);
    EXPECT_FALSE(P.y.is_rational()) << "the 5-torsion comes from the twist";
  }
  EXPECT_EQ(direct_ell_torsion_over_L(E, Integer(5), 3).rank, 1);
  EXPECT_EQ(direct_ell_torsion_over_L(tt::fixture("19a2"), Integer(-3), 3).rank, 2);
  EXPECT_THROW(direct_ell_torsion_over_L(E, Integer(5), 11), std::invalid_argument);
}

TEST(DirectEllTorsion, TwistPointsMapIntoTheBaseCurve) {
  // (x0, y0) on y^2 = x^3 + A d^2 x + B d^3 gives (x0/d, y0/(d sqrt d)) on
  // y^2 = x^3 + A x + B over Q(sqrt d).
  for (const auto& [label, d] : std::vector<std::pair<std::string, long>>{{"50a2", 5}, {"19a2", -3}, {"50a4", -3}}) {
    auto E = tt::fixture(label);
    auto S = short_model(E).first;
    auto Ed = quadratic_twist(E, Integer(d));
    auto C = lift_curve<QuadElement>(S);
    auto G = torsion_subgroup(Ed);
    ASSERT_FALSE(G.points.empty()) << label;
    QuadElement D{Rational(d)}, root = QuadElement::sqrt_d(Integer(d));
    for (const auto& P : G.points) {
      LPoint Q = LPoint::affine(QuadElement(P.x()) / D, QuadElement(P.y()) / (D * root));
      EXPECT_TRUE(on_curve(C, Q)) << label;
      EXPECT_EQ(point_order(C, Q, 12), P.order) << label;
    }
  }
}

TEST(TwoTorsionOverL, Examples) {
  EXPECT_EQ(two_torsion_over_L(WeierstrassCurve(0, 0, 0, -1, 0), Integer(-1)).rank, 2);
  EXPECT_EQ(two_torsion_over_L(WeierstrassCurve(0, 0, 0, 0, -2), Integer(-3)).rank, 0);
  auto G = two_torsion_over_L(WeierstrassCurve(0, 0, 0, -5, 0), Integer(5));  // x(x^2 - 5)
  EXPECT_EQ(G.rank, 2);
  EXPECT_EQ(G.to_string(), "Z/2Z x Z/2Z");
  EXPECT_EQ(two_torsion_over_L(WeierstrassCurve(0, 0, 0, -5, 0), Integer(2)).rank, 1);
  auto C = lift_curve<QuadElement>(WeierstrassCurve(0, 0, 0, -5, 0));
  for (const auto& P : G.points) EXPECT_EQ(point_order(C, P, 4), 2);
}

TEST(OddTorsionOverL, SymmetricUnderTwisting) {
  for (const auto& f : tt::fixtures()) {
    auto E = tt::curve_of(f);
    for (long d : {-7L, -3L, 5L, 13L}) {
      auto Ed = quadratic_twist(E, Integer(d));
      EXPECT_EQ(odd_torsion_over_L(E, Integer(d)), odd_torsion_over_L(Ed, Integer(d))) << f.label << " d=" << d;
      EXPECT_EQ(two_torsion_over_L(E, Integer(d)).rank, two_torsion_over_L(Ed, Integer(d)).rank);
    }
  }
}

TEST(GrowthReport, Fields) {
  auto R = growth_report(tt::fixture("50a2"), Integer(5));
  EXPECT_EQ(R.twist, WeierstrassCurve(1, 1, 1, -3, 1));
  EXPECT_EQ(R.base_torsion.to_string(), "Z/3Z");
  EXPECT_EQ(R.twist_torsion.to_string(), "Z/5Z");
  EXPECT_EQ(R.odd_L_torsion.to_string(), "Z/15Z");
  EXPECT_EQ(R.growth_primes, std::vector<long>{5});
  EXPECT_EQ(R.quotient_odd_part, 5);
  EXPECT_EQ(R.two_torsion_Q_rank, 0);

  auto S = growth_report(WeierstrassCurve(0, 0, 0, -5, 0), Integer(5));
  EXPECT_EQ(S.two_torsion_Q_rank, 1);
  EXPECT_EQ(S.growth_primes, std::vector<long>{2});
}
