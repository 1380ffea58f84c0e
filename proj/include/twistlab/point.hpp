#pragma once

// Group law on generalized Weierstrass curves over any field type that
// supports + - * / and ==: Rational, QuadElement, or the prime-field type
// below.

#include <twistlab/curve.hpp>
#include <twistlab/quadfield.hpp>

#include <optional>
#include <string>

namespace twistlab {

TWISTLAB_DEFINE_ERROR(PointNotOnCurve);

/// Element of F_p. A value with p = 0 is an integer constant that adopts
/// the modulus of whatever it is combined with.
class Fp {
 public:
  Fp() = default;
  Fp(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Fp(const Rational& v) {  // NOLINT(google-explicit-constructor)
    if (v.get_den() != 1) throw std::invalid_argument("Fp constant must be an integer");
    v_ = v.get_num();
  }
  Fp(const Integer& v, const Integer& p) : v_(mod_floor(v, p)), p_(p) {}
  static Fp reduce(const Rational& x, const Integer& p) { return Fp(mod_reduce(x, p), p); }

  const Integer& value() const { return v_; }
  const Integer& modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) { return make(a.v_ + b.v_, common(a, b)); }
  friend Fp operator-(const Fp& a, const Fp& b) { return make(a.v_ - b.v_, common(a, b)); }
  friend Fp operator-(const Fp& a) { return make(-a.v_, a.p_); }
  friend Fp operator*(const Fp& a, const Fp& b) { return make(a.v_ * b.v_, common(a, b)); }
  friend Fp operator/(const Fp& a, const Fp& b) {
    Integer p = common(a, b);
    Integer bv = mod_floor(b.v_, p), inv;
    if (!mpz_invert(inv.get_mpz_t(), bv.get_mpz_t(), p.get_mpz_t()))
      throw std::domain_error("Fp division by zero");
    return make(a.v_ * inv, p);
  }
  friend bool operator==(const Fp& a, const Fp& b) {
    Integer p = common(a, b);
    if (p == 0) return a.v_ == b.v_;
    return mod_floor(a.v_ - b.v_, p) == 0;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  static Fp make(const Integer& v, const Integer& p) {
    Fp r;
    r.v_ = p == 0 ? v : mod_floor(v, p);
    r.p_ = p;
    return r;
  }
  static Integer common(const Fp& a, const Fp& b) {
    if (a.p_ == 0) return b.p_;
    if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
    throw std::invalid_argument("Fp: mixing moduli");
  }
  Integer v_{0};
  Integer p_{0};
};

/// a-invariants lifted into the field T.
template <class T>
struct CurveOver {
  T a1, a2, a3, a4, a6;
};

template <class T>
CurveOver<T> lift_curve(const WeierstrassCurve& E) {
  return {T(E.a1), T(E.a2), T(E.a3), T(E.a4), T(E.a6)};
}

inline CurveOver<Fp> reduce_curve(const WeierstrassCurve& E, const Integer& p) {
  return {Fp::reduce(E.a1, p), Fp::reduce(E.a2, p), Fp::reduce(E.a3, p), Fp::reduce(E.a4, p),
          Fp::reduce(E.a6, p)};
}

template <class T>
struct Point {
  bool infinity = true;
  T x{}, y{};

  static Point identity() { return Point{}; }
  static Point affine(T x_, T y_) { return Point{false, std::move(x_), std::move(y_)}; }
  bool is_identity() const { return infinity; }
  friend bool operator==(const Point& P, const Point& Q) {
    if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
    return P.x == Q.x && P.y == Q.y;
  }
  friend bool operator!=(const Point& P, const Point& Q) { return !(P == Q); }
};

template <class T>
bool on_curve(const CurveOver<T>& E, const Point<T>& P) {
  if (P.infinity) return true;
  const T& x = P.x;
  const T& y = P.y;
  return y * y + E.a1 * x * y + E.a3 * y == x * x * x + E.a2 * x * x + E.a4 * x + E.a6;
}

template <class T>
Point<T> negate(const CurveOver<T>& E, const Point<T>& P) {
  if (P.infinity) return P;
  return Point<T>::affine(P.x, T(0) - P.y - E.a1 * P.x - E.a3);
}

template <class T>
Point<T> add(const CurveOver<T>& E, const Point<T>& P, const Point<T>& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  T lambda, nu;
  if (P.x == Q.x) {
    if (P.y + Q.y + E.a1 * Q.x + E.a3 == T(0)) return Point<T>::identity();
    T den = T(2) * P.y + E.a1 * P.x + E.a3;
    lambda = (T(3) * P.x * P.x + T(2) * E.a2 * P.x + E.a4 - E.a1 * P.y) / den;
    nu = (T(0) - P.x * P.x * P.x + E.a4 * P.x + T(2) * E.a6 - E.a3 * P.y) / den;
  } else {
    T den = Q.x - P.x;
    lambda = (Q.y - P.y) / den;
    nu = (P.y * Q.x - Q.y * P.x) / den;
  }
  T x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
  T y3 = T(0) - (lambda + E.a1) * x3 - nu - E.a3;
  return Point<T>::affine(x3, y3);
}

template <class T>
Point<T> multiply(const CurveOver<T>& E, Point<T> P, long n) {
  if (n < 0) {
    P = negate(E, P);
    n = -n;
  }
  Point<T> R = Point<T>::identity();
  while (n > 0) {
    if (n & 1) R = add(E, R, P);
    n >>= 1;
    if (n > 0) P = add(E, P, P);
  }
  return R;
}

/// Least n <= cap with nP = O, or nullopt (order exceeds cap or is infinite).
template <class T>
std::optional<long> point_order(const CurveOver<T>& E, const Point<T>& P, long cap) {
  if (!on_curve(E, P)) throw PointNotOnCurve("point_order: point is not on the curve");
  Point<T> Q = P;
  for (long n = 1; n <= cap; ++n) {
    if (Q.infinity) return n;
    Q = add(E, Q, P);
  }
  return std::nullopt;
}

using RationalPoint = Point<Rational>;

inline std::optional<long> point_order(const WeierstrassCurve& E, const RationalPoint& P, long cap) {
  return point_order(lift_curve<Rational>(E), P, cap);
}

inline std::string to_string(const RationalPoint& P) {
  if (P.infinity) return "O";
  return "(" + P.x.get_str() + ", " + P.y.get_str() + ")";
}

inline std::string to_string(const Point<QuadElement>& P) {
  if (P.infinity) return "O";
  return "(" + P.x.to_string() + ", " + P.y.to_string() + ")";
}

}  // namespace twistlab
