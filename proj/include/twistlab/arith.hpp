#pragma once

// Exact integer and rational arithmetic: primality, factorization,
// valuations, squarefree parts and the Kronecker symbol.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistlab {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define TWISTLAB_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                      \
   public:                                                         \
    using Error::Error;                                            \
    const char* kind() const noexcept override { return #Name; }   \
  }

TWISTLAB_DEFINE_ERROR(ZeroInput);
TWISTLAB_DEFINE_ERROR(NotPrime);
TWISTLAB_DEFINE_ERROR(BothZero);
TWISTLAB_DEFINE_ERROR(FactorizationLimitExceeded);

struct PrimeFactorization {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned>> factors;

  Integer value() const {
    Integer n = sign;
    for (const auto& [p, e] : factors) {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      n *= pe;
    }
    return n;
  }

  std::vector<Integer> primes() const {
    std::vector<Integer> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.first);
    return out;
  }
};

struct SquarefreeDecomposition {
  Integer squarefree;  // carries the sign of the input
  Integer cofactor;    // input = squarefree * cofactor^2
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline Integer pow2(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// Sorenson-Webster: the first 13 prime bases are deterministic below this.
inline const Integer& miller_rabin_bound() {
  static const Integer bound("3317044064679887385961981");
  return bound;
}

inline bool miller_rabin(const Integer& n, unsigned base) {
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer a = base;
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

/// Deterministic for n below 3.3e24; above that a BPSW test backs the
/// fixed-base Miller-Rabin rounds.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static constexpr unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned b : bases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  for (unsigned b : bases)
    if (!detail::miller_rabin(n, b)) return false;
  if (n >= detail::miller_rabin_bound()) return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
  return true;
}

namespace detail {

// Brent's variant of Pollard rho. Returns a nontrivial factor or nullopt
// when the iteration budget runs out.
inline std::optional<Integer> pollard_rho(const Integer& n, unsigned long budget) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  unsigned long spent = 0;
  for (unsigned long c = 1; c < 64 && spent < budget; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1;
    constexpr unsigned long m = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
        spent += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1 && spent < budget);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return std::nullopt;
}

inline void factor_cofactor(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (n >= pow2(96))
    throw FactorizationLimitExceeded("composite cofactor " + n.get_str() +
                                     " exceeds the 2^96 factorization limit");
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    factor_cofactor(r, out);
    factor_cofactor(r, out);
    return;
  }
  auto f = pollard_rho(n, 1ul << 22);
  if (!f) throw FactorizationLimitExceeded("Pollard rho budget exhausted on " + n.get_str());
  factor_cofactor(*f, out);
  factor_cofactor(Integer(n / *f), out);
}

}  // namespace detail

inline PrimeFactorization factorize(const Integer& n) {
  if (n == 0) throw ZeroInput("factorize: zero input");
  PrimeFactorization pf;
  pf.sign = sgn(n) < 0 ? -1 : 1;
  Integer m = abs(n);
  for (std::uint32_t p : detail::small_primes()) {
    if (Integer(p) * p > m) break;
    if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    pf.factors.emplace_back(Integer(p), e);
  }
  std::vector<Integer> rest;
  detail::factor_cofactor(m, rest);
  std::sort(rest.begin(), rest.end());
  for (const auto& p : rest) {
    if (!pf.factors.empty() && pf.factors.back().first == p)
      ++pf.factors.back().second;
    else
      pf.factors.emplace_back(p, 1u);
  }
  return pf;
}

inline SquarefreeDecomposition squarefree_part(const Integer& n) {
  if (n == 0) throw ZeroInput("squarefree_part: zero input");
  auto pf = factorize(n);
  SquarefreeDecomposition out{Integer(pf.sign), Integer(1)};
  for (const auto& [p, e] : pf.factors) {
    if (e % 2) out.squarefree *= p;
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
    out.cofactor *= pe;
  }
  return out;
}

inline bool is_squarefree(const Integer& n) {
  return n != 0 && squarefree_part(n).cofactor == 1;
}

/// p-adic valuation of a nonzero rational.
inline long valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw ZeroInput("valuation of zero");
  if (!is_prime(p)) throw NotPrime("valuation: " + p.get_str() + " is not prime");
  Integer rest;
  long up = long(mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t()));
  long down = long(mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), p.get_mpz_t()));
  return up - down;
}

/// Valuation without the primality check, for hot loops over known primes.
/// Returns a large sentinel for zero.
inline long val_unchecked(const Integer& x, const Integer& p) {
  if (x == 0) return 1L << 30;
  Integer rest;
  return long(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

inline long val_unchecked(const Rational& x, const Integer& p) {
  if (x == 0) return 1L << 30;
  return val_unchecked(Integer(x.get_num()), p) - val_unchecked(Integer(x.get_den()), p);
}

inline int kronecker(const Integer& a, const Integer& n) {
  if (a == 0 && n == 0) throw BothZero("kronecker(0, 0) is undefined");
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rational rpow(const Rational& b, long e) {
  Rational base = e < 0 ? Rational(1 / b) : b;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational r(ipow(base.get_num(), k), ipow(base.get_den(), k));
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Exact k-th root of a rational (sign handled for odd k).
inline std::optional<Rational> rational_root(const Rational& x, unsigned long k) {
  if (x == 0) return Rational(0);
  if (x < 0 && k % 2 == 0) return std::nullopt;
  Integer num = abs(x.get_num()), den = x.get_den();
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return std::nullopt;
  if (x < 0) rn = -rn;
  return make_rational(rn, rd);
}

inline std::optional<Rational> rational_sqrt(const Rational& x) { return rational_root(x, 2); }

inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Reduction of a p-integral rational modulo m (denominator coprime to m).
inline Integer mod_reduce(const Rational& x, const Integer& m) {
  Integer inv;
  Integer den = x.get_den();
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()))
    throw std::domain_error("mod_reduce: denominator not invertible");
  return mod_floor(Integer(x.get_num() * inv), m);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline std::optional<Rational> parse_rational(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) return std::nullopt;
  Integer n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) return std::nullopt;
  return make_rational(n, d);
}

}  // namespace twistlab
