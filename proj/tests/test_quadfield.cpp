#include <twistlab/quadfield.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

using namespace twistlab;
using twistlab::testing::mod;
using twistlab::testing::sieve;

namespace {

// Splitting of p in Q(sqrt d) read off from x^2 - d mod p (odd p) or from
// the minimal polynomial of (1 + sqrt d)/2 when d = 1 mod 4 (p = 2).
Splitting splitting_by_roots(long d, long p) {
  if (p == 2) {
    if (mod(d, 4) != 1) return Splitting::Ramified;
    long c = mod((1 - d) / 4, 2);  // x^2 - x + c
    int roots = 0;
    for (long x = 0; x < 2; ++x) roots += mod(x * x - x + c, 2) == 0;
    return roots == 2 ? Splitting::Split : Splitting::Inert;
  }
  if (mod(d, p) == 0) return Splitting::Ramified;
  int roots = 0;
  for (long x = 0; x < p; ++x) roots += mod(x * x - d, p) == 0;
  return roots == 2 ? Splitting::Split : Splitting::Inert;
}

}  // namespace

TEST(Field, Construction) {
  auto F = make_field(Integer(-12));
  EXPECT_EQ(F.d, -3);
  EXPECT_EQ(F.discriminant, -3);
  EXPECT_TRUE(F.imaginary);
  EXPECT_EQ(F.ramified_primes, std::vector<Integer>{3});
  EXPECT_EQ(F.u(), 3);

  auto G = make_field(Integer(10));
  EXPECT_EQ(G.discriminant, 40);
  EXPECT_EQ(G.ramified_primes, (std::vector<Integer>{2, 5}));
  EXPECT_EQ(make_field(Integer(-1)).u(), 2);
  EXPECT_EQ(make_field(Integer(-31)).u(), 1);
  EXPECT_EQ(make_field(Integer(5)).u(), 1);

  EXPECT_THROW(make_field(Integer(1)), TrivialExtension);
  EXPECT_THROW(make_field(Integer(36)), TrivialExtension);
  EXPECT_THROW(make_field(Integer(0)), ZeroInput);
}

TEST(Field, SplittingMatchesRootCount) {
  auto primes = sieve(200);
  for (long d = -60; d <= 60; ++d) {
    if (d == 0 || d == 1 || !is_squarefree(Integer(d))) continue;
    auto F = make_field(Integer(d));
    for (long p : primes) ASSERT_EQ(splitting(F, Integer(p)), splitting_by_roots(d, p)) << "d=" << d << " p=" << p;
  }
  EXPECT_THROW(splitting(make_field(Integer(5)), Integer(9)), NotPrime);
}

TEST(Heegner, ConductorFifty) {
  auto yes = heegner_hypothesis(make_field(Integer(-31)), Integer(50));
  EXPECT_TRUE(yes.holds);
  EXPECT_EQ(yes.reason, "ok");
  auto no = heegner_hypothesis(make_field(Integer(-3)), Integer(50));
  EXPECT_FALSE(no.holds);
  EXPECT_EQ(no.reason, "2 is inert");
  auto real = heegner_hypothesis(make_field(Integer(41)), Integer(50));
  EXPECT_FALSE(real.holds);
  EXPECT_EQ(real.reason, "not imaginary");
  auto ram = heegner_hypothesis(make_field(Integer(-5)), Integer(50));
  EXPECT_EQ(ram.reason, "2 is ramified");
  EXPECT_THROW(heegner_hypothesis(make_field(Integer(-31)), Integer(0)), std::invalid_argument);
}

TEST(QuadElement, FieldAxiomsOnSamples) {
  Integer d = -7;
  QuadElement x{Rational(1, 2), Rational(3), d}, y{Rational(-2), Rational(1, 5), d};
  EXPECT_EQ((x * y) / y, x);
  EXPECT_EQ(x + y - y, x);
  EXPECT_EQ(x * x.conjugate(), QuadElement(x.norm()));
  EXPECT_EQ(x + x.conjugate(), QuadElement(x.trace()));
  auto s = QuadElement::sqrt_d(d);
  EXPECT_EQ(s * s, QuadElement(Rational(-7)));
  EXPECT_EQ(QuadElement(Rational(3)) * s, QuadElement(Rational(0), Rational(3), d));
  EXPECT_THROW(x / QuadElement(Rational(0)), std::exception);
  EXPECT_THROW(QuadElement(Rational(1), Rational(1), Integer(0)), std::invalid_argument);
}

TEST(QuadElement, SquareRoots) {
  Integer d = 5;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> U(-30, 30);
  for (int i = 0; i < 200; ++i) {
    Rational a = make_rational(Integer(U(rng)), Integer(1 + i % 4));
    Rational b = make_rational(Integer(U(rng)), Integer(1 + i % 3));
    QuadElement z{a, b, d};
    auto r = is_square_in_field(z * z, d);
    ASSERT_TRUE(r) << z.to_string();
    EXPECT_EQ(*r * *r, z * z);
  }
  // 5 is a square in Q(sqrt 5) but 2 and sqrt 5 are not
  EXPECT_TRUE(is_square_in_field(QuadElement(Rational(5)), d));
  EXPECT_FALSE(is_square_in_field(QuadElement(Rational(2)), d));
  EXPECT_FALSE(is_square_in_field(QuadElement::sqrt_d(d), d));
  // 6 + 2 sqrt 5 = (1 + sqrt 5)^2
  auto r = is_square_in_field(QuadElement(Rational(6), Rational(2), d), d);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r * *r, QuadElement(Rational(6), Rational(2), d));
}
