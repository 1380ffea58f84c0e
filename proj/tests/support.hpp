#pragma once

// Fixture curves and slow, independent reference computations shared by the
// test programs. Nothing here calls the code it is used to check.

#include <twistlab/curve.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace twistlab::testing {

struct Fixture {
  const char* label;
  long a[5];
  long conductor;
  const char* torsion;
};

// Cremona/LMFDB labels with coefficients as listed in the databases.
inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> f{
      {"50a2", {1, 0, 1, -76, 298}, 50, "Z/3Z"},
      {"50b3", {1, 1, 1, -3, 1}, 50, "Z/5Z"},
      {"19a2", {0, 1, 1, -9, -15}, 19, "Z/3Z"},
      {"171b2", {0, 0, 1, -84, 315}, 171, "Z/3Z"},
      {"26.b1", {1, -1, 1, -213, -1257}, 26, "0"},
      {"1225.b2", {1, 1, 1, -8, 6}, 1225, "0"},
      {"50a4", {1, 0, 1, 549, -2202}, 50, "0"},
  };
  return f;
}

inline WeierstrassCurve curve_of(const Fixture& f) { return {f.a[0], f.a[1], f.a[2], f.a[3], f.a[4]}; }

inline WeierstrassCurve fixture(const std::string& label) {
  for (const auto& f : fixtures())
    if (label == f.label) return curve_of(f);
  throw std::out_of_range("no fixture " + label);
}

inline std::vector<long> sieve(long n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<long> out;
  for (long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

inline long mod(long a, long m) { return ((a % m) + m) % m; }

// Legendre symbol from the list of nonzero squares mod an odd prime p.
inline int legendre_by_squares(long a, long p) {
  a = mod(a, p);
  if (a == 0) return 0;
  for (long x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

// Kronecker symbol assembled from its definition: factor n by trial
// division, Legendre at odd primes, the 2-adic rule at 2, sign at -1.
inline int kronecker_by_definition(long a, long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int r = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) r = -r;
  }
  for (long p = 2; n > 1; ++p) {
    while (n % p == 0) {
      n /= p;
      if (p == 2) {
        if (a % 2 == 0) return 0;
        long m8 = mod(a, 8);
        if (m8 == 3 || m8 == 5) r = -r;
      } else {
        r *= legendre_by_squares(a, p);
      }
    }
  }
  return r;
}

// Weierstrass equation of an integral curve evaluated mod p.
inline long equation_mod(const WeierstrassCurve& E, long x, long y, long p) {
  auto c = [p](const Rational& v) { return mod(Integer(v.get_num()).get_si() % p, p); };
  long a1 = c(E.a1), a2 = c(E.a2), a3 = c(E.a3), a4 = c(E.a4), a6 = c(E.a6);
  long lhs = (y * y + a1 * x % p * y + a3 * y) % p;
  long rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
  return mod(lhs - rhs, p);
}

// #E(F_p) by enumerating every (x, y) pair, plus the point at infinity.
inline long count_points_by_enumeration(const WeierstrassCurve& E, long p) {
  long n = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) n += equation_mod(E, x, y, p) == 0;
  return n;
}

// Random integral curve with small coefficients; may be singular.
inline WeierstrassCurve random_curve(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> U(-bound, bound);
  return {U(rng), U(rng), U(rng), U(rng), U(rng)};
}

inline bool nonsingular(const WeierstrassCurve& E) { return detail::raw_invariants(E).disc != 0; }

}  // namespace twistlab::testing
