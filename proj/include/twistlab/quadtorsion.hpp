#pragma once

// Torsion of E over L = Q(sqrt d). The odd part comes from the twist
// decomposition odd(E(Q)) + odd(E^d(Q)); E(L)[2] and E(L)[ell] are also
// computed directly from division polynomials as an independent check.

#include <twistlab/group.hpp>
#include <twistlab/point.hpp>
#include <twistlab/polynomial.hpp>
#include <twistlab/quadfield.hpp>
#include <twistlab/torsion.hpp>

#include <set>
#include <string>
#include <vector>

namespace twistlab {

using LPoint = Point<QuadElement>;

/// An elementary abelian ell-group (Z/ell)^rank with its nonzero points.
struct ElementaryGroup {
  long ell = 2;
  int rank = 0;
  std::vector<LPoint> points;

  long order() const {
    long n = 1;
    for (int i = 0; i < rank; ++i) n *= ell;
    return n;
  }
  AbelianGroup structure() const { return AbelianGroup::from_cyclic(std::vector<long>(rank, ell)); }
  std::string to_string() const { return structure().to_string(); }
};

namespace detail {

inline LPoint map_point_L(const LPoint& P, const ModelTransformation& T) {
  if (P.infinity) return P;
  QuadElement u(T.u), u2 = u * u;
  return LPoint::affine(u2 * P.x + QuadElement(T.r), u2 * u * P.y + QuadElement(T.s) * u2 * P.x + QuadElement(T.t));
}

// Points of E over Q(sqrt d) with the given x-coordinate.
inline std::vector<LPoint> points_with_x_L(const WeierstrassCurve& E, const QuadElement& x, const Integer& d) {
  QuadElement b = QuadElement(E.a1) * x + QuadElement(E.a3);
  QuadElement rhs = x * x * x + QuadElement(E.a2) * x * x + QuadElement(E.a4) * x + QuadElement(E.a6);
  QuadElement disc = b * b + QuadElement(4) * rhs;
  std::vector<LPoint> out;
  auto s = is_square_in_field(disc, d);
  if (!s) return out;
  QuadElement half(Rational(1, 2));
  out.push_back(LPoint::affine(x, (QuadElement(0) - b + *s) * half));
  if (!s->is_zero()) out.push_back(LPoint::affine(x, (QuadElement(0) - b - *s) * half));
  return out;
}

// Roots of f in Q(sqrt d): rational roots plus roots of irreducible
// quadratic factors whose discriminant is d times a rational square.
inline std::vector<QuadElement> roots_in_field(const PolyFactorization& fac, const Integer& d) {
  std::vector<QuadElement> out;
  for (const auto& [g, e] : fac.factors) {
    if (g.degree() == 1) {
      out.emplace_back(Rational(-g[0] / g[1]), Rational(0), d);
    } else if (g.degree() == 2) {
      Poly q = g.monic();
      Rational D = q[1] * q[1] - 4 * q[0];
      auto t = rational_sqrt(D / Rational(d));
      if (!t) continue;
      Rational a = -q[1] / 2, b = *t / 2;
      out.emplace_back(a, b, d);
      out.emplace_back(a, -b, d);
    }
  }
  return out;
}

}  // namespace detail

/// E(L)[2] from the roots of the 2-division cubic in L.
inline ElementaryGroup two_torsion_over_L(const WeierstrassCurve& E, const Integer& d) {
  QuadraticField L = make_field(d);
  auto fac = factor_over_Q(division_polynomial(E, 2));
  ElementaryGroup G;
  G.ell = 2;
  auto CE = lift_curve<QuadElement>(E);
  for (const auto& x : detail::roots_in_field(fac, L.d))
    for (const auto& P : detail::points_with_x_L(E, x, L.d)) {
      if (!on_curve(CE, P) || !multiply(CE, P, 2).infinity)
        throw std::logic_error("two_torsion_over_L: candidate is not a 2-torsion point");
      G.points.push_back(P);
    }
  std::size_t n = G.points.size() + 1;
  if (n != 1 && n != 2 && n != 4) throw std::logic_error("two_torsion_over_L: impossible point count");
  G.rank = n == 1 ? 0 : n == 2 ? 1 : 2;
  return G;
}

/// E(L)[ell] for ell in {3, 5, 7}, directly: factor psi_ell over Q, keep the
/// roots lying in L, lift y in L, and count.
inline ElementaryGroup direct_ell_torsion_over_L(const WeierstrassCurve& E, const Integer& d, long ell) {
  if (ell != 3 && ell != 5 && ell != 7)
    throw std::invalid_argument("direct_ell_torsion_over_L: ell must be 3, 5 or 7");
  QuadraticField L = make_field(d);
  auto [M, T] = minimal_model(E);
  auto fac = factor_over_Q(division_polynomial(M, ell));
  auto CM = lift_curve<QuadElement>(M);
  auto CE = lift_curve<QuadElement>(E);
  ElementaryGroup G;
  G.ell = ell;
  for (const auto& x : detail::roots_in_field(fac, L.d))
    for (const auto& P : detail::points_with_x_L(M, x, L.d)) {
      if (!on_curve(CM, P) || !multiply(CM, P, ell).infinity)
        throw std::logic_error("direct_ell_torsion_over_L: candidate is not an ell-torsion point");
      LPoint Q = detail::map_point_L(P, T);  // M = apply(E, T)
      if (!on_curve(CE, Q)) throw std::logic_error("direct_ell_torsion_over_L: model map failed");
      G.points.push_back(Q);
    }
  long n = static_cast<long>(G.points.size()) + 1;
  if (n == 1)
    G.rank = 0;
  else if (n == ell)
    G.rank = 1;
  else if (n == ell * ell)
    G.rank = 2;
  else
    throw std::logic_error("direct_ell_torsion_over_L: point count is not a power of ell");
  return G;
}

/// odd(E(L)_tors) = odd(E(Q)_tors) + odd(E^d(Q)_tors).
inline AbelianGroup odd_torsion_over_L(const WeierstrassCurve& E, const Integer& d) {
  QuadraticField L = make_field(d);
  auto base = torsion_subgroup(E).structure().odd_part();
  auto twist = torsion_subgroup(quadratic_twist(E, L.d)).structure().odd_part();
  return base.direct_sum(twist);
}

struct GrowthReport {
  QuadraticField field;
  WeierstrassCurve twist;  // minimal model of E^d
  TorsionGroup base_torsion;
  TorsionGroup twist_torsion;
  AbelianGroup odd_L_torsion;
  ElementaryGroup two_torsion_L;
  int two_torsion_Q_rank = 0;
  std::vector<long> growth_primes;
  long quotient_odd_part = 1;
};

inline GrowthReport growth_report(const WeierstrassCurve& E, const Integer& d, std::size_t bound_primes = 8) {
  GrowthReport R;
  R.field = make_field(d);
  R.twist = minimal_model(quadratic_twist(E, R.field.d)).first;
  R.base_torsion = torsion_subgroup(E, bound_primes);
  R.twist_torsion = torsion_subgroup(R.twist, bound_primes);
  AbelianGroup base_odd = R.base_torsion.structure().odd_part();
  R.odd_L_torsion = base_odd.direct_sum(R.twist_torsion.structure().odd_part());
  R.two_torsion_L = two_torsion_over_L(E, R.field.d);
  long q2 = R.base_torsion.two_torsion_count();
  R.two_torsion_Q_rank = q2 == 0 ? 0 : q2 == 1 ? 1 : 2;
  R.quotient_odd_part = R.odd_L_torsion.order() / base_odd.order();

  std::set<long> primes;
  long big = R.odd_L_torsion.order(), small = base_odd.order();
  for (long p = 3; p <= big; p += 2) {
    if (!is_prime(Integer(p))) continue;
    long vb = 0, vs = 0, a = big, b = small;
    while (a % p == 0) {
      a /= p;
      ++vb;
    }
    while (b % p == 0) {
      b /= p;
      ++vs;
    }
    if (vb > vs) primes.insert(p);
  }
  if (R.two_torsion_L.rank > R.two_torsion_Q_rank) primes.insert(2);
  R.growth_primes.assign(primes.begin(), primes.end());
  return R;
}

}  // namespace twistlab
