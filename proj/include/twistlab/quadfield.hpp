#pragma once

// Quadratic fields Q(sqrt d): discriminants, splitting of rational primes,
// roots of unity, element arithmetic and the Heegner hypothesis.

#include <twistlab/arith.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twistlab {

TWISTLAB_DEFINE_ERROR(TrivialExtension);

struct QuadraticField {
  Integer d;             // squarefree, != 0, 1
  Integer discriminant;  // d if d = 1 mod 4, else 4d
  bool imaginary = false;
  std::vector<Integer> ramified_primes;
  int two_u = 2;  // number of roots of unity

  int u() const { return two_u / 2; }
  std::string name() const { return "Q(sqrt(" + d.get_str() + "))"; }
};

inline QuadraticField make_field(const Integer& d_in) {
  auto sf = squarefree_part(d_in);  // throws ZeroInput on 0
  if (sf.squarefree == 1) throw TrivialExtension("Q(sqrt(" + d_in.get_str() + ")) = Q");
  QuadraticField F;
  F.d = sf.squarefree;
  F.discriminant = mod_floor(F.d, Integer(4)) == 1 ? F.d : Integer(4 * F.d);
  F.imaginary = F.d < 0;
  F.ramified_primes = factorize(F.discriminant).primes();
  F.two_u = F.d == -3 ? 6 : F.d == -1 ? 4 : 2;
  return F;
}

enum class Splitting { Split, Inert, Ramified };

inline const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

inline Splitting splitting(const QuadraticField& F, const Integer& p) {
  if (!is_prime(p)) throw NotPrime("splitting: " + p.get_str() + " is not prime");
  if (mpz_divisible_p(F.discriminant.get_mpz_t(), p.get_mpz_t())) return Splitting::Ramified;
  return kronecker(F.discriminant, p) == 1 ? Splitting::Split : Splitting::Inert;
}

struct HeegnerResult {
  bool holds = false;
  std::string reason;  // "ok", "not imaginary", or "<p> is inert/ramified"
  std::vector<std::pair<Integer, Splitting>> primes;
};

/// Every prime dividing N splits in the imaginary field F. Real fields give
/// false with reason "not imaginary".
inline HeegnerResult heegner_hypothesis(const QuadraticField& F, const Integer& N) {
  if (N < 1) throw std::invalid_argument("heegner_hypothesis: N must be positive");
  HeegnerResult r;
  for (const auto& p : factorize(N).primes()) r.primes.emplace_back(p, splitting(F, p));
  if (!F.imaginary) {
    r.reason = "not imaginary";
    return r;
  }
  for (const auto& [p, s] : r.primes) {
    if (s != Splitting::Split) {
      r.reason = p.get_str() + " is " + to_string(s);
      return r;
    }
  }
  r.holds = true;
  r.reason = "ok";
  return r;
}

/// a + b*sqrt(d). A value with d = 0 is a rational constant that adopts the
/// field of whatever it is combined with.
class QuadElement {
 public:
  QuadElement() = default;
  QuadElement(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadElement(long a) : a_(a) {}             // NOLINT(google-explicit-constructor)
  QuadElement(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (b_ != 0 && d_ == 0) throw std::invalid_argument("QuadElement: irrational part needs a field");
  }

  static QuadElement sqrt_d(const Integer& d) { return {Rational(0), Rational(1), d}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadElement conjugate() const { return {a_, -b_, d_}; }
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  Rational trace() const { return 2 * a_; }

  friend QuadElement operator+(const QuadElement& x, const QuadElement& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, common(x, y)};
  }
  friend QuadElement operator-(const QuadElement& x, const QuadElement& y) {
    return {x.a_ - y.a_, x.b_ - y.b_, common(x, y)};
  }
  friend QuadElement operator-(const QuadElement& x) { return {-x.a_, -x.b_, x.d_}; }
  friend QuadElement operator*(const QuadElement& x, const QuadElement& y) {
    Integer d = common(x, y);
    return {x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d};
  }
  friend QuadElement operator/(const QuadElement& x, const QuadElement& y) {
    if (y.is_zero()) throw std::domain_error("QuadElement division by zero");
    Integer d = common(x, y);
    QuadElement yy{y.a_, y.b_, d};
    QuadElement num = x * yy.conjugate();
    Rational n = yy.norm();
    return {num.a_ / n, num.b_ / n, d};
  }
  QuadElement& operator+=(const QuadElement& o) { return *this = *this + o; }
  QuadElement& operator-=(const QuadElement& o) { return *this = *this - o; }
  QuadElement& operator*=(const QuadElement& o) { return *this = *this * o; }
  friend bool operator==(const QuadElement& x, const QuadElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadElement& x, const QuadElement& y) { return !(x == y); }

  std::string to_string() const {
    if (b_ == 0) return a_.get_str();
    std::string s = a_ == 0 ? "" : a_.get_str() + (b_ < 0 ? " - " : " + ");
    Rational mb = a_ == 0 ? b_ : Rational(abs(b_));
    std::string coeff = mb == 1 ? "" : mb == -1 ? "-" : mb.get_str() + "*";
    return s + coeff + "sqrt(" + d_.get_str() + ")";
  }

 private:
  static Integer common(const QuadElement& x, const QuadElement& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw std::invalid_argument("QuadElement: mixing elements of different fields");
  }

  Rational a_{0}, b_{0};
  Integer d_{0};
};

/// Square root of x inside Q(sqrt d), with the first nonzero coordinate of
/// the result positive. d is the field of x (or the supplied d when x is a
/// rational constant).
inline std::optional<QuadElement> is_square_in_field(const QuadElement& x, const Integer& field_d) {
  const Integer d = x.d() != 0 ? x.d() : field_d;
  if (x.is_zero()) return QuadElement(Rational(0));
  if (x.b() == 0) {
    if (auto s = rational_sqrt(x.a())) return QuadElement(*s, Rational(0), d);
    if (d != 0) {
      if (auto t = rational_sqrt(x.a() / Rational(d))) return QuadElement(Rational(0), abs(*t), d);
    }
    return std::nullopt;
  }
  // (s + t sqrt d)^2 = a + b sqrt d:  s^2 + d t^2 = a, 2 s t = b.
  auto n = rational_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (const Rational& cand : {Rational((x.a() + *n) / 2), Rational((x.a() - *n) / 2)}) {
    if (cand == 0) continue;
    auto s = rational_sqrt(cand);
    if (!s) continue;
    Rational t = x.b() / (2 * *s);
    QuadElement r(*s, t, d);
    if (r * r == x) return r;  // s > 0 already
  }
  return std::nullopt;
}

inline std::optional<QuadElement> is_square_in_field(const QuadElement& x) {
  return is_square_in_field(x, x.d());
}

}  // namespace twistlab
