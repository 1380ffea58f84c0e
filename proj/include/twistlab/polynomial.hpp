#pragma once

// Dense univariate polynomials over Q and over F_p, plus the pieces of
// Zassenhaus-style factorization this library needs: rational roots of
// polynomials of any degree and the irreducible quadratic factors of
// polynomials of moderate degree.

#include <twistlab/arith.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace twistlab {

/// Dense polynomial with rational coefficients, lowest degree first,
/// no trailing zeros. The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const Rational& a) { return Poly({a}); }
  static Poly x() { return Poly({Rational(0), Rational(1)}); }
  static Poly from_integers(const std::vector<Integer>& c) {
    return Poly(std::vector<Rational>(c.begin(), c.end()));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  template <class T>
  T eval(const T& x) const {
    T acc = T(Rational(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }
  Rational operator()(const Rational& x) const { return eval<Rational>(x); }

  Poly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Rational lc = leading();
    for (auto& a : r.c_) a /= lc;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> r = a.c_;
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division over Q.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    long dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<Rational> q(static_cast<std::size_t>(degree() - dd + 1));
    Rational lc = d.leading();
    for (long i = degree(); i >= dd; --i) {
      Rational coef = rem[static_cast<std::size_t>(i)] / lc;
      q[static_cast<std::size_t>(i - dd)] = coef;
      if (coef == 0) continue;
      for (long j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= coef * d.c_[static_cast<std::size_t>(j)];
    }
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
      Rational a = c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      if (!first) os << (a < 0 ? " - " : " + ");
      else if (a < 0) os << "-";
      Rational m = abs(a);
      if (m != 1 || i == 0) os << m.get_str();
      if (i >= 1) os << (m != 1 ? "*" : "") << var;
      if (i >= 2) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Integer polynomial with content 1 and positive leading coefficient
/// that is a rational multiple of f.
inline std::vector<Integer> primitive_integer_poly(const Poly& f) {
  Integer den = 1;
  for (const auto& a : f.coeffs()) den = lcm(den, Integer(a.get_den()));
  std::vector<Integer> out;
  Integer content = 0;
  for (const auto& a : f.coeffs()) {
    Integer v = a.get_num() * (den / a.get_den());
    out.push_back(v);
    content = gcd(content, v);
  }
  if (content == 0) return out;
  if (sgn(f.leading()) < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, coefficients reduced into [0, p).

class FpPoly {
 public:
  FpPoly(Integer p) : p_(std::move(p)) {}
  FpPoly(Integer p, std::vector<Integer> c) : p_(std::move(p)), c_(std::move(c)) { normalize(); }

  static FpPoly from_integers(const std::vector<Integer>& f, const Integer& p) { return FpPoly(p, f); }

  const Integer& modulus() const { return p_; }
  const std::vector<Integer>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Integer leading() const { return c_.empty() ? Integer(0) : c_.back(); }
  Integer operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

  Integer eval(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = mod_floor(Integer(acc * x + *it), p_);
    return acc;
  }

  FpPoly monic() const {
    if (is_zero()) return *this;
    Integer inv;
    Integer lc = leading();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), p_.get_mpz_t());
    std::vector<Integer> r = c_;
    for (auto& a : r) a = a * inv;
    return FpPoly(p_, std::move(r));
  }

  FpPoly derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return FpPoly(p_, std::move(d));
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return FpPoly(a.p_, std::move(r));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return FpPoly(a.p_, std::move(r));
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return FpPoly(a.p_, std::move(r));
  }

  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
    if (d.is_zero()) throw std::domain_error("F_p polynomial division by zero");
    std::vector<Integer> rem = c_;
    long dd = d.degree();
    if (degree() < dd) return {FpPoly(p_), *this};
    std::vector<Integer> q(static_cast<std::size_t>(degree() - dd + 1));
    Integer inv;
    Integer lc = d.leading();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), p_.get_mpz_t());
    for (long i = degree(); i >= dd; --i) {
      Integer coef = mod_floor(Integer(rem[static_cast<std::size_t>(i)] * inv), p_);
      q[static_cast<std::size_t>(i - dd)] = coef;
      if (coef == 0) continue;
      for (long j = 0; j <= dd; ++j) {
        auto& slot = rem[static_cast<std::size_t>(i - dd + j)];
        slot = mod_floor(Integer(slot - coef * d.c_[static_cast<std::size_t>(j)]), p_);
      }
    }
    return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(rem))};
  }
  FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }
  FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c_ == b.c_; }

 private:
  void normalize() {
    for (auto& a : c_) a = mod_floor(a, p_);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  Integer p_;
  std::vector<Integer> c_;
};

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// (s, t) with s*a + t*b = gcd(a, b) = 1 over F_p; throws if not coprime.
inline std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& a, const FpPoly& b) {
  const Integer& p = a.modulus();
  FpPoly r0 = a, r1 = b;
  FpPoly s0(p, {1}), s1(p), t0(p), t1(p, {1});
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) throw std::domain_error("fp_bezout: polynomials are not coprime");
  Integer inv, lc = r0.leading();
  mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), p.get_mpz_t());
  FpPoly scale(p, {inv});
  return {s0 * scale, t0 * scale};
}

inline FpPoly fp_powmod(const FpPoly& base, Integer e, const FpPoly& mod) {
  const Integer& p = mod.modulus();
  FpPoly result(p, {1});
  FpPoly b = base % mod;
  result = result % mod;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * b) % mod;
    e >>= 1;
    if (e > 0) b = (b * b) % mod;
  }
  return result;
}

namespace detail {

// Splits a squarefree monic f whose irreducible factors all have degree k
// (p odd) into those factors.
inline void equal_degree_split(const FpPoly& f, long k, std::mt19937_64& rng,
                               std::vector<FpPoly>& out) {
  if (f.degree() <= k) {
    if (f.degree() == k) out.push_back(f.monic());
    return;
  }
  const Integer& p = f.modulus();
  Integer pk = ipow(p, static_cast<unsigned long>(k));
  Integer e = (pk - 1) / 2;
  while (true) {
    std::vector<Integer> a(static_cast<std::size_t>(f.degree()));
    for (auto& v : a) v = Integer(static_cast<unsigned long>(rng() >> 1)) % p;
    FpPoly ap(p, a);
    if (ap.degree() < 1) continue;
    FpPoly g = fp_gcd(ap, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, k, rng, out);
      equal_degree_split(f / g, k, rng, out);
      return;
    }
    FpPoly h = fp_powmod(ap, e, f) - FpPoly(p, {1});
    g = fp_gcd(h, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, k, rng, out);
      equal_degree_split(f / g, k, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Monic irreducible factors of degree 1 and 2 of a squarefree f over F_p,
/// p odd.
inline std::pair<std::vector<FpPoly>, std::vector<FpPoly>> fp_small_factors(const FpPoly& f) {
  const Integer& p = f.modulus();
  std::mt19937_64 rng(0x7457157ull);
  FpPoly x(p, {0, 1});
  FpPoly fm = f.monic();
  FpPoly xp = fp_powmod(x, p, fm);
  FpPoly linear_part = fp_gcd(xp - x, fm);
  std::vector<FpPoly> lin, quad;
  detail::equal_degree_split(linear_part, 1, rng, lin);
  FpPoly rest = fm / linear_part;
  if (rest.degree() >= 2) {
    FpPoly xp2 = fp_powmod(xp, p, rest);
    FpPoly quad_part = fp_gcd(xp2 - x, rest);
    detail::equal_degree_split(quad_part, 2, rng, quad);
  }
  return {lin, quad};
}

inline std::vector<Integer> roots_mod_p(const FpPoly& f) {
  const Integer& p = f.modulus();
  std::vector<Integer> roots;
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  if (p == 2) {
    for (int v = 0; v < 2; ++v)
      if (f.eval(Integer(v)) == 0) roots.emplace_back(v);
    return roots;
  }
  FpPoly x(p, {0, 1});
  FpPoly fm = f.monic();
  if (fm.degree() == 0) return roots;
  FpPoly g = fp_gcd(fp_powmod(x, p, fm) - x, fm);
  std::mt19937_64 rng(0x5eed);
  std::vector<FpPoly> lin;
  detail::equal_degree_split(g, 1, rng, lin);
  for (const auto& l : lin) roots.push_back(mod_floor(Integer(-l[0]), p));
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline bool fp_squarefree(const FpPoly& f) { return fp_gcd(f, f.derivative()).degree() == 0; }

// ---------------------------------------------------------------------------
// Factorization helpers over Z.

namespace detail {

inline Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r = mod_floor(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline Integer norm2_ceiling(const std::vector<Integer>& f) {
  Integer s = 0;
  for (const auto& a : f) s += a * a;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  return r + 1;
}

// A prime p >= 3 with p not dividing lc(f) and f squarefree mod p.
inline std::optional<Integer> good_prime_for(const std::vector<Integer>& f) {
  for (std::uint32_t p : small_primes()) {
    if (p < 3) continue;
    if (p > 2000) break;
    Integer P(p);
    if (mod_floor(f.back(), P) == 0) continue;
    if (fp_squarefree(FpPoly::from_integers(f, P))) return P;
  }
  return std::nullopt;
}


// Primitive squarefree integer model of f together with a good prime.
inline std::pair<std::vector<Integer>, Integer> squarefree_with_prime(const Poly& f) {
  std::vector<Integer> zf = primitive_integer_poly(f);
  if (auto p = good_prime_for(zf)) return {zf, *p};
  Poly sq = f.divmod(poly_gcd(f, f.derivative())).first;
  zf = primitive_integer_poly(sq);
  if (auto p = good_prime_for(zf)) return {zf, *p};
  throw std::domain_error("no good prime found for polynomial factorization");
}

// Linear Hensel lifting of f = lc * g * h (g monic mod p) to modulus p^k.
inline FpPoly hensel_lift_factor(const std::vector<Integer>& f, const FpPoly& g0,
                                 const Integer& p, const Integer& target) {
  FpPoly fp = FpPoly::from_integers(f, p);
  FpPoly h0 = fp / g0;
  auto [s, t] = fp_bezout(g0, h0);  // s*g0 + t*h0 = 1
  std::vector<Integer> g = g0.coeffs(), h = h0.coeffs();
  Integer pk = p;
  auto mul = [](const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  // keep h's leading coefficient equal to lc(f) so f - g*h has lower degree
  h.back() = f.back();
  while (pk <= target) {
    std::vector<Integer> gh = mul(g, h);
    std::vector<Integer> e(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      Integer diff = f[i] - (i < gh.size() ? gh[i] : Integer(0));
      e[i] = diff / pk;  // exact by invariant
    }
    FpPoly ep(p, e);
    auto [q, dg] = (t * ep).divmod(g0);
    FpPoly dh = s * ep + q * h0;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += pk * dg[i];
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += pk * dh[i];
    pk *= p;
    for (auto& v : g) v = mod_floor(v, pk);
    for (auto& v : h) v = symmetric_mod(v, pk);
    h.back() = f.back();
  }
  return FpPoly(pk, g);
}

// Newton lifting of a simple root of f mod p up to modulus > target.
inline std::pair<Integer, Integer> newton_lift_root(const std::vector<Integer>& f, Integer r,
                                                    const Integer& p, const Integer& target) {
  auto eval = [&](const std::vector<Integer>& c, const Integer& x, const Integer& m) {
    Integer acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mod_floor(Integer(acc * x + *it), m);
    return acc;
  };
  std::vector<Integer> df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<unsigned long>(i));
  Integer m = p;
  while (m <= target) {
    m = m * m;
    Integer fv = eval(f, r, m), dv = eval(df, r, m), inv;
    if (!mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t()))
      throw std::domain_error("newton_lift_root: derivative vanishes");
    r = mod_floor(Integer(r - fv * inv), m);
  }
  return {r, m};
}

// a/b with |a| <= N, 0 < b <= D and a = b*r mod m, if one exists (m > 2ND).
inline std::optional<Rational> rational_reconstruct(const Integer& r, const Integer& m,
                                                    const Integer& N, const Integer& D) {
  Integer r0 = m, r1 = mod_floor(r, m), t0 = 0, t1 = 1;
  while (r1 > N) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > D) return std::nullopt;
  return make_rational(r1, t1);
}

inline bool divides_exactly(const std::vector<Integer>& f, const Poly& g) {
  return Poly::from_integers(f).divmod(g).second.is_zero();
}

}  // namespace detail

/// All rational roots of f (without multiplicity), ascending.
inline std::vector<Rational> rational_roots(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
  std::vector<Rational> roots;
  Poly g = f;
  if (g.degree() >= 1 && g[0] == 0) {
    roots.emplace_back(0);
    while (g.degree() >= 1 && g[0] == 0) g = g.divmod(Poly::x()).first;
  }
  if (g.degree() < 1) return roots;
  if (g.degree() == 1) {
    roots.push_back(-g[0] / g[1]);
  } else {
    auto [zf, p] = detail::squarefree_with_prime(g);
    Poly sq = Poly::from_integers(zf);
    Integer N = abs(zf.front()), D = abs(zf.back());
    Integer target = 2 * N * D;
    for (const Integer& r : roots_mod_p(FpPoly::from_integers(zf, p))) {
      auto [lifted, m] = detail::newton_lift_root(zf, r, p, target);
      auto cand = detail::rational_reconstruct(lifted, m, N, D);
      if (cand && sq(*cand) == 0) roots.push_back(*cand);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Factors of f over Q of degree at most 2, as monic polynomials: all
/// linear factors and all irreducible quadratic factors.
struct SmallFactors {
  std::vector<Rational> roots;  // linear factors x - r
  std::vector<Poly> quadratics; // monic irreducible
};

inline SmallFactors small_factors(const Poly& f) {
  SmallFactors out;
  out.roots = rational_roots(f);
  Poly g = f;
  while (g.degree() >= 1 && g[0] == 0) g = g.divmod(Poly::x()).first;
  if (g.degree() < 2) return out;
  auto [zf, p] = detail::squarefree_with_prime(g);
  if (zf.size() < 3) return out;
  auto [lin, quad] = fp_small_factors(FpPoly::from_integers(zf, p));
  std::vector<FpPoly> candidates = quad;
  for (std::size_t i = 0; i < lin.size(); ++i)
    for (std::size_t j = i + 1; j < lin.size(); ++j) candidates.push_back(lin[i] * lin[j]);
  Integer lc = zf.back();
  Integer bound = abs(lc) * 4 * detail::norm2_ceiling(zf);
  Integer target = 2 * bound;
  for (const auto& c : candidates) {
    if (c.degree() == static_cast<long>(zf.size()) - 1) {
      // f itself is (a multiple of) this quadratic
      Poly q = Poly::from_integers(zf).monic();
      Rational disc = q[1] * q[1] - 4 * q[0];
      if (!rational_sqrt(disc)) out.quadratics.push_back(q);
      continue;
    }
    FpPoly lifted = detail::hensel_lift_factor(zf, c, p, target);
    const Integer& pk = lifted.modulus();
    std::vector<Rational> co;
    for (std::size_t i = 0; i < 3; ++i) co.emplace_back(detail::symmetric_mod(Integer(lc * lifted[i]), pk));
    Poly q = Poly(std::move(co));
    if (q.degree() != 2) continue;
    q = q.monic();
    if (!detail::divides_exactly(zf, q)) continue;
    Rational disc = q[1] * q[1] - 4 * q[0];
    if (rational_sqrt(disc)) continue;  // splits into rational roots already found
    out.quadratics.push_back(q);
  }
  std::sort(out.quadratics.begin(), out.quadratics.end(), [](const Poly& a, const Poly& b) {
    if (a[1] != b[1]) return a[1] < b[1];
    return a[0] < b[0];
  });
  out.quadratics.erase(std::unique(out.quadratics.begin(), out.quadratics.end()), out.quadratics.end());
  return out;
}


/// Complete factorization of a squarefree f over F_p (p odd) into monic
/// irreducibles, by distinct-degree then equal-degree splitting.
inline std::vector<FpPoly> fp_factor(const FpPoly& f) {
  const Integer& p = f.modulus();
  std::mt19937_64 rng(0xfac7ull);
  std::vector<FpPoly> out;
  FpPoly x(p, {0, 1});
  FpPoly rest = f.monic();
  FpPoly h = x;
  for (long d = 1; rest.degree() >= 2 * d; ++d) {
    h = fp_powmod(h, p, rest);
    FpPoly g = fp_gcd(h - x, rest);
    if (g.degree() > 0) {
      detail::equal_degree_split(g.monic(), d, rng, out);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.push_back(rest.monic());
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  return out;
}

struct PolyFactorization {
  Rational unit;  // f = unit * prod(factor^e)
  std::vector<std::pair<Poly, unsigned>> factors;  // primitive, integral, positive leading coefficient
};

namespace detail {

inline Poly primitive_positive(const Poly& f) {
  auto z = primitive_integer_poly(f);
  if (z.back() < 0)
    for (auto& c : z) c = -c;
  return Poly::from_integers(z);
}

// Zassenhaus: irreducible factors of a squarefree primitive integer polynomial.
inline std::vector<Poly> zassenhaus(const std::vector<Integer>& f0, long max_subsets) {
  long n = static_cast<long>(f0.size()) - 1;
  if (n <= 1) return {Poly::from_integers(f0)};
  // pick the good prime (among a few) with the fewest modular factors
  std::optional<Integer> best_p;
  std::vector<FpPoly> best;
  int tried = 0;
  for (std::uint32_t q : small_primes()) {
    if (q < 3) continue;
    if (q > 3000 || tried >= 6) break;
    Integer P(q);
    if (mod_floor(f0.back(), P) == 0) continue;
    FpPoly fp = FpPoly::from_integers(f0, P);
    if (!fp_squarefree(fp)) continue;
    ++tried;
    auto fac = fp_factor(fp);
    if (!best_p || fac.size() < best.size()) {
      best_p = P;
      best = std::move(fac);
    }
    if (best.size() == 1) break;
  }
  if (!best_p) throw std::domain_error("zassenhaus: no good prime");
  if (best.size() == 1) return {Poly::from_integers(f0)};
  const Integer& p = *best_p;

  std::vector<Integer> f = f0;
  Integer bound = abs(f.back()) * pow2(static_cast<unsigned>(n)) * norm2_ceiling(f);
  Integer target = 2 * bound;
  std::vector<std::vector<Integer>> lifted;
  Integer pk;
  for (const auto& g : best) {
    FpPoly L = hensel_lift_factor(f, g, p, target);
    pk = L.modulus();
    lifted.push_back(L.coeffs());
  }
  auto mulmod = [&](const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& v : r) v = mod_floor(v, pk);
    return r;
  };

  std::vector<Poly> out;
  std::vector<std::size_t> alive(lifted.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  Poly F = Poly::from_integers(f);
  long budget = max_subsets;
  std::size_t s = 1;
  while (2 * s <= alive.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      if (--budget < 0) throw FactorizationLimitExceeded("zassenhaus: recombination budget exhausted");
      Integer lc = primitive_integer_poly(F).back();
      std::vector<Integer> g{mod_floor(lc, pk)};
      for (auto i : idx) g = mulmod(g, lifted[alive[i]]);
      for (auto& v : g) v = symmetric_mod(v, pk);
      Poly G = primitive_positive(Poly::from_integers(g));
      auto [q, r] = F.divmod(G);
      if (G.degree() >= 1 && r.is_zero()) {
        out.push_back(G);
        F = q;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < alive.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(alive[i]);
        alive = std::move(keep);
        found = true;
        break;
      }
      // next combination
      long i = static_cast<long>(s) - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == alive.size() - s + static_cast<std::size_t>(i)) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (F.degree() >= 1) out.push_back(primitive_positive(F));
  return out;
}

}  // namespace detail

/// Factorization of f over Q into irreducibles with multiplicities, via
/// squarefree decomposition and Zassenhaus. Factors are sorted by degree,
/// then coefficients.
inline PolyFactorization factor_over_Q(const Poly& f, long max_subsets = 1L << 20) {
  if (f.is_zero()) throw std::domain_error("factor_over_Q of the zero polynomial");
  PolyFactorization out;
  Poly prim = detail::primitive_positive(f);
  out.unit = f.leading() / prim.leading();
  auto zp = primitive_integer_poly(prim);
  if (prim.degree() >= 1 && detail::good_prime_for(zp)) {
    // squarefree mod p, hence squarefree over Q
    for (const auto& h : detail::zassenhaus(zp, max_subsets))
      out.factors.emplace_back(detail::primitive_positive(h), 1u);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& A, const auto& B) {
      if (A.first.degree() != B.first.degree()) return A.first.degree() < B.first.degree();
      return A.first.coeffs() < B.first.coeffs();
    });
    return out;
  }
  // Yun's squarefree decomposition
  Poly a = prim;
  Poly b = a.derivative();
  Poly c = poly_gcd(a, b);
  Poly w = a.divmod(c).first;
  Poly y = b.divmod(c).first;
  unsigned e = 1;
  while (w.degree() >= 1) {
    Poly z = y - w.derivative();
    Poly g = poly_gcd(w, z);
    if (g.degree() >= 1) {
      for (const auto& h : detail::zassenhaus(primitive_integer_poly(g), max_subsets))
        out.factors.emplace_back(detail::primitive_positive(h), e);
    }
    w = w.divmod(g).first;
    y = z.divmod(g).first;
    ++e;
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& A, const auto& B) {
    if (A.first.degree() != B.first.degree()) return A.first.degree() < B.first.degree();
    if (A.first.coeffs() != B.first.coeffs()) return A.first.coeffs() < B.first.coeffs();
    return A.second < B.second;
  });
  return out;
}

}  // namespace twistlab
