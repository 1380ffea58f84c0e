#pragma once

// Weierstrass models over Q: invariants, changes of coordinates, minimal
// models, isomorphism testing and quadratic twists.

#include <twistlab/arith.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace twistlab {

TWISTLAB_DEFINE_ERROR(SingularCurve);
TWISTLAB_DEFINE_ERROR(ParseError);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassCurve {
  Rational a1{0}, a2{0}, a3{0}, a4{0}, a6{0};

  WeierstrassCurve() = default;
  WeierstrassCurve(Rational a1_, Rational a2_, Rational a3_, Rational a4_, Rational a6_)
      : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {}
  WeierstrassCurve(long a1_, long a2_, long a3_, long a4_, long a6_)
      : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_) {}

  std::array<Rational, 5> ainvs() const { return {a1, a2, a3, a4, a6}; }
  bool is_integral() const {
    for (const auto& a : ainvs())
      if (a.get_den() != 1) return false;
    return true;
  }
  friend bool operator==(const WeierstrassCurve& x, const WeierstrassCurve& y) {
    return x.ainvs() == y.ainvs();
  }
  friend bool operator!=(const WeierstrassCurve& x, const WeierstrassCurve& y) { return !(x == y); }

  std::string to_string() const {
    std::ostringstream os;
    os << '[' << a1.get_str() << ',' << a2.get_str() << ',' << a3.get_str() << ','
       << a4.get_str() << ',' << a6.get_str() << ']';
    return os.str();
  }
};

struct CurveInvariants {
  Rational b2, b4, b6, b8, c4, c6, disc, j;
};

namespace detail {

inline CurveInvariants raw_invariants(const WeierstrassCurve& E) {
  CurveInvariants I;
  const auto& [a1, a2, a3, a4, a6] = E.ainvs();
  I.b2 = a1 * a1 + 4 * a2;
  I.b4 = 2 * a4 + a1 * a3;
  I.b6 = a3 * a3 + 4 * a6;
  I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  I.c4 = I.b2 * I.b2 - 24 * I.b4;
  I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
  I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
  I.j = I.disc == 0 ? Rational(0) : Rational(I.c4 * I.c4 * I.c4 / I.disc);
  return I;
}

}  // namespace detail

inline CurveInvariants invariants(const WeierstrassCurve& E) {
  CurveInvariants I = detail::raw_invariants(E);
  if (I.disc == 0) throw SingularCurve("singular curve " + E.to_string());
  return I;
}

inline Rational discriminant(const WeierstrassCurve& E) { return invariants(E).disc; }
inline Rational j_invariant(const WeierstrassCurve& E) { return invariants(E).j; }

/// x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t
struct ModelTransformation {
  Rational u{1}, r{0}, s{0}, t{0};

  static ModelTransformation identity() { return {}; }

  /// this followed by other
  ModelTransformation then(const ModelTransformation& o) const {
    return {u * o.u, r + u * u * o.r, s + u * o.s, t + u * u * s * o.r + u * u * u * o.t};
  }
  ModelTransformation inverse() const {
    return {1 / u, -r / (u * u), -s / u, (r * s - t) / (u * u * u)};
  }
  friend bool operator==(const ModelTransformation& x, const ModelTransformation& y) {
    return x.u == y.u && x.r == y.r && x.s == y.s && x.t == y.t;
  }
};

inline WeierstrassCurve apply(const WeierstrassCurve& E, const ModelTransformation& T) {
  if (T.u == 0) throw std::invalid_argument("ModelTransformation with u = 0");
  const auto& [a1, a2, a3, a4, a6] = E.ainvs();
  const auto& [u, r, s, t] = T;
  Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  WeierstrassCurve F;
  F.a1 = (a1 + 2 * s) / u;
  F.a2 = (a2 - s * a1 + 3 * r - s * s) / u2;
  F.a3 = (a3 + r * a1 + 2 * t) / u3;
  F.a4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
  F.a6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
  return F;
}

/// The unique transformation with scaling u taking E to F, assuming one
/// exists with that u. Returns nullopt if the solved r, s, t do not carry E
/// onto F.
inline std::optional<ModelTransformation> transformation_with_scale(const WeierstrassCurve& E,
                                                                    const WeierstrassCurve& F,
                                                                    const Rational& u) {
  ModelTransformation T;
  T.u = u;
  T.s = (u * F.a1 - E.a1) / 2;
  T.r = (u * u * F.a2 - E.a2 + T.s * E.a1 + T.s * T.s) / 3;
  T.t = (u * u * u * F.a3 - E.a3 - T.r * E.a1) / 2;
  if (apply(E, T) != F) return std::nullopt;
  return T;
}

/// Parses "[a1,a2,a3,a4,a6]" with integer or p/q entries. Also accepts the
/// two-entry short form "[a4,a6]".
inline WeierstrassCurve parse_curve(const std::string& literal) {
  std::string s;
  for (char c : literal)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("curve literal must look like [a1,a2,a3,a4,a6]: '" + literal + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<Rational> vals;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    auto tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto v = parse_rational(tok);
    if (!v) throw ParseError("bad coefficient '" + tok + "' in curve literal '" + literal + "'");
    vals.push_back(*v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.size() == 2) return {Rational(0), Rational(0), Rational(0), vals[0], vals[1]};
  if (vals.size() != 5)
    throw ParseError("curve literal needs 5 coefficients, got " + std::to_string(vals.size()));
  return {vals[0], vals[1], vals[2], vals[3], vals[4]};
}

/// y^2 = x^3 - 27 c4 x - 54 c6 together with the transformation from E.
inline std::pair<WeierstrassCurve, ModelTransformation> short_model(const WeierstrassCurve& E) {
  auto I = invariants(E);
  WeierstrassCurve S(Rational(0), Rational(0), Rational(0), -27 * I.c4, -54 * I.c6);
  auto T = transformation_with_scale(E, S, Rational(1, 6));
  if (!T) throw std::logic_error("short_model: transformation failed");
  return {S, *T};
}

/// dy^2 = x^3 + Ax + B rewritten as y^2 = x^3 + A d^2 x + B d^3, starting
/// from the short model of E. d is reduced to its squarefree part first.
inline WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, const Integer& d) {
  Integer sd = squarefree_part(d).squarefree;
  auto [S, T] = short_model(E);
  (void)T;
  Rational dd(sd);
  return {Rational(0), Rational(0), Rational(0), S.a4 * dd * dd, S.a6 * dd * dd * dd};
}

namespace detail {

// Kraus conditions at 2 and 3 for integers c4, c6 to be the invariants of
// an integral model.
inline bool kraus_at_3(const Integer& c6) { return val_unchecked(c6, Integer(3)) != 2; }

inline bool kraus_at_2(const Integer& c4, const Integer& c6) {
  if (mod_floor(c6, Integer(4)) == 3) return true;
  if (val_unchecked(c4, Integer(2)) < 4) return false;
  Integer r = mod_floor(c6, Integer(32));
  return r == 0 || r == 8;
}

// Integral model with invariants c4, c6 (which must satisfy Kraus'
// conditions), normalized with a1, a3 in {0,1} and a2 in {-1,0,1}.
inline WeierstrassCurve model_from_c4c6(const Integer& c4, const Integer& c6) {
  Integer b2 = mod_floor(Integer(-c6), Integer(12));
  if (b2 > 6) b2 -= 12;
  Integer b4 = (b2 * b2 - c4) / 24;
  Integer b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - c6) / 216;
  Integer a1 = mod_floor(b2, Integer(2));
  Integer a3 = mod_floor(b6, Integer(2));
  Integer a2 = (b2 - a1) / 4;
  Integer a4 = (b4 - a1 * a3) / 2;
  Integer a6 = (b6 - a3) / 4;
  return {Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)};
}

}  // namespace detail

/// Globally minimal integral model (reduced: a1,a3 in {0,1}, a2 in
/// {-1,0,1}) and the transformation from E to it.
inline std::pair<WeierstrassCurve, ModelTransformation> minimal_model(const WeierstrassCurve& E) {
  auto I = invariants(E);
  // integral scaling: a_i -> a_i k^i
  Integer k = 1;
  for (const auto& a : E.ainvs()) k = lcm(k, Integer(a.get_den()));
  Integer c4 = Rational(I.c4 * ipow(k, 4)).get_num();
  Integer c6 = Rational(I.c6 * ipow(k, 6)).get_num();
  Integer disc = Rational(I.disc * ipow(k, 12)).get_num();
  Integer u = 1;
  for (const auto& [p, e] : factorize(disc).factors) {
    if (e < 12) continue;
    long best = 0;
    long max_e = static_cast<long>(e / 12);
    max_e = std::min(max_e, val_unchecked(c4, p) / 4);
    max_e = std::min(max_e, val_unchecked(c6, p) / 6);
    for (long t = max_e; t >= 1; --t) {
      Integer q4 = c4 / ipow(p, 4 * static_cast<unsigned long>(t));
      Integer q6 = c6 / ipow(p, 6 * static_cast<unsigned long>(t));
      bool ok = true;
      if (p == 2) ok = detail::kraus_at_2(q4, q6);
      if (p == 3) ok = detail::kraus_at_3(q6);
      if (ok) {
        best = t;
        break;
      }
    }
    u *= ipow(p, static_cast<unsigned long>(best));
  }
  Integer mc4 = c4 / ipow(u, 4), mc6 = c6 / ipow(u, 6);
  WeierstrassCurve M = detail::model_from_c4c6(mc4, mc6);
  Rational scale = make_rational(u, k);
  auto T = transformation_with_scale(E, M, scale);
  if (!T) throw std::logic_error("minimal_model: no transformation to " + M.to_string());
  return {M, *T};
}

inline bool is_minimal(const WeierstrassCurve& E) {
  return E.is_integral() && abs(discriminant(E)) == abs(discriminant(minimal_model(E).first));
}

/// A transformation carrying E1 onto E2 over Q, if the curves are isomorphic.
inline std::optional<ModelTransformation> is_isomorphic_over_Q(const WeierstrassCurve& E1,
                                                               const WeierstrassCurve& E2) {
  auto I1 = invariants(E1), I2 = invariants(E2);
  if (I1.j != I2.j) return std::nullopt;
  // c4' = c4 / u^4, c6' = c6 / u^6
  std::vector<Rational> candidates;
  if (I1.c4 != 0 && I1.c6 != 0) {
    Rational u2 = (I1.c6 / I2.c6) / (I1.c4 / I2.c4);
    if (auto u = rational_sqrt(u2)) candidates = {*u, -*u};
  } else if (I1.c4 == 0) {
    if (auto u = rational_root(I1.c6 / I2.c6, 6)) candidates = {*u, -*u};
  } else {
    if (auto u = rational_root(I1.c4 / I2.c4, 4)) candidates = {*u, -*u};
  }
  for (const auto& u : candidates) {
    if (I1.c4 / rpow(u, 4) != I2.c4 || I1.c6 / rpow(u, 6) != I2.c6) continue;
    if (auto T = transformation_with_scale(E1, E2, u)) return T;
  }
  return std::nullopt;
}

}  // namespace twistlab
