#pragma once

// Division polynomials, point counts over F_p and the rational torsion
// subgroup with witness points.

#include <twistlab/curve.hpp>
#include <twistlab/group.hpp>
#include <twistlab/localdata.hpp>
#include <twistlab/point.hpp>
#include <twistlab/polynomial.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace twistlab {

TWISTLAB_DEFINE_ERROR(BadPrimeSupplied);

namespace detail {

// f_n = psi_n for odd n and psi_n / psi_2 for even n; all are polynomials
// in x. F = psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
class DivisionPolynomials {
 public:
  explicit DivisionPolynomials(const WeierstrassCurve& E) {
    auto I = invariants(E);
    const Rational &b2 = I.b2, &b4 = I.b4, &b6 = I.b6, &b8 = I.b8;
    F_ = Poly{b6, 2 * b4, b2, Rational(4)};
    F2_ = F_ * F_;
    memo_[0] = Poly();
    memo_[1] = Poly::constant(1);
    memo_[2] = Poly::constant(1);
    memo_[3] = Poly{b8, 3 * b6, 3 * b4, b2, Rational(3)};
    memo_[4] = Poly{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, Rational(2)};
  }

  const Poly& F() const { return F_; }

  const Poly& f(long n) {
    if (n < 0) throw std::invalid_argument("division polynomial index must be >= 0");
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    long m = n / 2;
    Poly r;
    if (n % 2 == 1) {
      Poly fm3 = f(m) * f(m) * f(m);
      Poly fp3 = f(m + 1) * f(m + 1) * f(m + 1);
      if (m % 2 == 0)
        r = F2_ * f(m + 2) * fm3 - f(m - 1) * fp3;
      else
        r = f(m + 2) * fm3 - F2_ * f(m - 1) * fp3;
    } else {
      r = f(m) * (f(m + 2) * f(m - 1) * f(m - 1) - f(m - 2) * f(m + 1) * f(m + 1));
    }
    return memo_[n] = std::move(r);
  }

  /// psi_n for odd n; F * f_n for even n. Roots: x-coordinates of the
  /// nonzero points killed by n.
  Poly psi(long n) {
    if (n < 1) throw std::invalid_argument("division_polynomial: n must be >= 1");
    return n % 2 == 1 ? f(n) : F_ * f(n);
  }

 private:
  Poly F_, F2_;
  std::map<long, Poly> memo_;
};

}  // namespace detail

/// psi_n for odd n; for even n the y-free form psi_2^2 * (psi_n / psi_2),
/// so n = 2 gives 4x^3 + b2 x^2 + 2 b4 x + b6.
inline Poly division_polynomial(const WeierstrassCurve& E, long n) {
  detail::DivisionPolynomials D(E);
  return D.psi(n);
}

/// psi_n / psi_2 for even n, psi_n for odd n.
inline Poly reduced_division_polynomial(const WeierstrassCurve& E, long n) {
  detail::DivisionPolynomials D(E);
  return D.f(n);
}

/// #E(F_p) for a model with good reduction at p (the model's discriminant
/// must be a p-unit).
inline Integer count_points_mod_p(const WeierstrassCurve& E, const Integer& p) {
  if (!is_prime(p)) throw NotPrime("count_points_mod_p: " + p.get_str() + " is not prime");
  if (mod_reduce(discriminant(E), p) == 0)
    throw BadPrimeSupplied("count_points_mod_p: model is singular mod " + p.get_str());
  if (!p.fits_slong_p() || p > 1000000) throw std::invalid_argument("count_points_mod_p: p too large");
  long P = p.get_si();
  auto C = reduce_curve(E, p);
  long a1 = C.a1.value().get_si(), a2 = C.a2.value().get_si(), a3 = C.a3.value().get_si(),
       a4 = C.a4.value().get_si(), a6 = C.a6.value().get_si();
  long count = 1;
  if (P == 2) {
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y)
        if (((y * y + a1 * x * y + a3 * y) - (x * x * x + a2 * x * x + a4 * x + a6)) % 2 == 0) ++count;
    return count;
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  std::vector<int> chi(static_cast<std::size_t>(P), -1);
  chi[0] = 0;
  for (long y = 1; y < P; ++y) chi[static_cast<std::size_t>(y * y % P)] = 1;
  long b2 = (a1 * a1 + 4 * a2) % P, b4 = (2 * a4 + a1 * a3) % P, b6 = (a3 * a3 + 4 * a6) % P;
  for (long x = 0; x < P; ++x) {
    long v = (((4 * x + b2) % P * x % P + 2 * b4) % P * x % P + b6) % P;
    count += 1 + chi[static_cast<std::size_t>(v)];
  }
  return count;
}

/// gcd of #E(F_p) over the given odd primes of good reduction. The torsion
/// subgroup injects into each E(F_p), so its order divides the result.
inline Integer torsion_bound_via_reduction(const WeierstrassCurve& E, const std::vector<Integer>& primes) {
  auto [M, T] = minimal_model(E);
  Integer disc = discriminant(M).get_num();
  Integer g = 0;
  for (const auto& p : primes) {
    if (p == 2 || !is_prime(p) || mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t()))
      throw BadPrimeSupplied("torsion_bound_via_reduction: " + p.get_str() + " is not an odd good prime");
    g = gcd(g, count_points_mod_p(M, p));
  }
  if (g == 0) throw std::invalid_argument("torsion_bound_via_reduction: no primes supplied");
  return g;
}

/// The first `count` odd primes of good reduction for E.
inline std::vector<Integer> odd_good_primes(const WeierstrassCurve& E, std::size_t count,
                                            long below = 1000000) {
  auto [M, T] = minimal_model(E);
  Integer disc = discriminant(M).get_num();
  std::vector<Integer> out;
  for (std::uint32_t p : detail::small_primes()) {
    if (out.size() >= count || p >= below) break;
    if (p == 2 || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    out.emplace_back(p);
  }
  return out;
}

struct TorsionPoint {
  RationalPoint point;
  long order = 1;

  const Rational& x() const { return point.x; }
  const Rational& y() const { return point.y; }
  bool is_identity() const { return point.infinity; }
};

struct TorsionGroup {
  std::vector<long> invariant_factors;  // a | b, empty when trivial
  long order = 1;
  std::vector<TorsionPoint> generators;
  std::vector<TorsionPoint> points;  // every non-identity torsion point

  AbelianGroup structure() const { return AbelianGroup::from_cyclic(invariant_factors); }
  std::string to_string() const { return structure().to_string(); }
  long two_torsion_count() const {
    long n = 0;
    for (const auto& P : points) n += P.order == 2;
    return n;
  }
};

/// Mazur's list: Z/n (n = 1..10, 12) and Z/2 x Z/2m (m = 1..4).
inline bool in_mazur_list(const std::vector<long>& inv) {
  if (inv.empty()) return true;
  if (inv.size() == 1) return (inv[0] >= 2 && inv[0] <= 10) || inv[0] == 12;
  if (inv.size() == 2) return inv[0] == 2 && (inv[1] == 2 || inv[1] == 4 || inv[1] == 6 || inv[1] == 8);
  return false;
}

namespace detail {

inline RationalPoint map_point(const RationalPoint& P, const ModelTransformation& T) {
  // x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t
  if (P.infinity) return P;
  Rational u2 = T.u * T.u;
  return RationalPoint::affine(u2 * P.x + T.r, u2 * T.u * P.y + T.s * u2 * P.x + T.t);
}

// Points with the given x on E over Q (0, 1 or 2 of them).
inline std::vector<RationalPoint> points_with_x(const WeierstrassCurve& E, const Rational& x) {
  // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
  Rational b = E.a1 * x + E.a3;
  Rational c = -(x * x * x + E.a2 * x * x + E.a4 * x + E.a6);
  Rational disc = b * b - 4 * c;
  std::vector<RationalPoint> out;
  auto s = rational_sqrt(disc);
  if (!s) return out;
  out.push_back(RationalPoint::affine(x, (-b + *s) / 2));
  if (*s != 0) out.push_back(RationalPoint::affine(x, (-b - *s) / 2));
  return out;
}

}  // namespace detail

/// E(Q)_tors. Points of each order n <= 12 dividing the reduction bound
/// (over `bound_primes` odd good primes) are found from rational roots of
/// psi_n on the minimal model; the result is checked for closure, against
/// the bound, and against Mazur's list.
inline TorsionGroup torsion_subgroup(const WeierstrassCurve& E, std::size_t bound_primes = 8) {
  if (bound_primes == 0) throw std::invalid_argument("torsion_subgroup: need at least one bound prime");
  auto [M, T] = minimal_model(E);
  Integer B = torsion_bound_via_reduction(M, odd_good_primes(M, bound_primes));
  auto CM = lift_curve<Rational>(M);
  detail::DivisionPolynomials D(M);

  std::vector<RationalPoint> found;  // on M
  auto known = [&](const RationalPoint& P) { return std::find(found.begin(), found.end(), P) != found.end(); };
  for (long n = 2; n <= 12; ++n) {
    if (!mpz_divisible_ui_p(B.get_mpz_t(), static_cast<unsigned long>(n))) continue;
    for (const auto& x : rational_roots(D.psi(n)))
      for (const auto& P : detail::points_with_x(M, x))
        if (!known(P)) found.push_back(P);
  }

  // closure: the found set plus O must be a group
  for (const auto& P : found)
    for (const auto& Q : found) {
      auto R = add(CM, P, Q);
      if (!R.infinity && !known(R)) throw std::logic_error("torsion_subgroup: point set not closed under addition");
    }

  TorsionGroup G;
  G.order = static_cast<long>(found.size()) + 1;
  if (!mpz_divisible_ui_p(B.get_mpz_t(), static_cast<unsigned long>(G.order)))
    throw std::logic_error("torsion_subgroup: order does not divide the reduction bound");
  // apply(E, T) = M, so the substitution T itself carries points of M to E
  auto CE = lift_curve<Rational>(E);
  for (const auto& P : found) {
    auto ord = point_order(CM, P, 12);
    if (!ord) throw std::logic_error("torsion_subgroup: found a point of order > 12");
    RationalPoint Q = detail::map_point(P, T);
    if (!on_curve(CE, Q)) throw std::logic_error("torsion_subgroup: model map failed");
    G.points.push_back({Q, *ord});
  }
  std::sort(G.points.begin(), G.points.end(), [](const TorsionPoint& a, const TorsionPoint& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.point.x != b.point.x) return a.point.x < b.point.x;
    return a.point.y < b.point.y;
  });

  long twos = G.two_torsion_count();
  auto first_of_order = [&](long n) -> const TorsionPoint* {
    for (const auto& P : G.points)
      if (P.order == n) return &P;
    return nullptr;
  };
  if (G.order == 1) {
    // trivial
  } else if (twos == 3) {
    long m = G.order / 2;
    G.invariant_factors = {2, m};
    const TorsionPoint* P2 = first_of_order(m);
    RationalPoint half = multiply(CE, P2->point, m / 2);
    for (const auto& P : G.points)
      if (P.order == 2 && P.point != half) {
        G.generators = {P, *P2};
        break;
      }
  } else {
    G.invariant_factors = {G.order};
    const TorsionPoint* P = first_of_order(G.order);
    if (!P) throw std::logic_error("torsion_subgroup: cyclic group without a generator");
    G.generators = {*P};
  }
  if (!in_mazur_list(G.invariant_factors))
    throw std::logic_error("torsion_subgroup: structure " + G.to_string() + " is not in Mazur's list");
  return G;
}

/// Number of rational points of order 2 (0, 1 or 3).
inline long rational_two_torsion_count(const WeierstrassCurve& E) {
  return static_cast<long>(rational_roots(division_polynomial(E, 2)).size());
}

}  // namespace twistlab
