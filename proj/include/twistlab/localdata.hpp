#pragma once

// Tate's algorithm at a single prime (all residue characteristics), and the
// global conductor, bad primes and Tamagawa product built on it.

#include <twistlab/arith.hpp>
#include <twistlab/curve.hpp>
#include <twistlab/polynomial.hpp>

#include <string>
#include <vector>

namespace twistlab {

struct KodairaType {
  enum class Tag { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };
  Tag tag = Tag::I0;
  long n = 0;  // only for In and Instar

  friend bool operator==(const KodairaType& a, const KodairaType& b) {
    return a.tag == b.tag && a.n == b.n;
  }
  friend bool operator!=(const KodairaType& a, const KodairaType& b) { return !(a == b); }

  std::string to_string() const {
    switch (tag) {
      case Tag::I0: return "I0";
      case Tag::In: return "I" + std::to_string(n);
      case Tag::II: return "II";
      case Tag::III: return "III";
      case Tag::IV: return "IV";
      case Tag::I0star: return "I0*";
      case Tag::Instar: return "I" + std::to_string(n) + "*";
      case Tag::IVstar: return "IV*";
      case Tag::IIIstar: return "III*";
      case Tag::IIstar: return "II*";
    }
    return "?";
  }
};

enum class ReductionClass { Good, MultiplicativeSplit, MultiplicativeNonsplit, Additive };

inline const char* to_string(ReductionClass c) {
  switch (c) {
    case ReductionClass::Good: return "good";
    case ReductionClass::MultiplicativeSplit: return "split multiplicative";
    case ReductionClass::MultiplicativeNonsplit: return "nonsplit multiplicative";
    case ReductionClass::Additive: return "additive";
  }
  return "?";
}

struct ReductionData {
  Integer p;
  KodairaType kodaira;
  long f_p = 0;
  long c_p = 1;
  ReductionClass reduction_class = ReductionClass::Good;
  long disc_valuation = 0;  // v_p of the minimal discriminant
};

namespace detail {

struct TateState {
  Integer p;
  Integer a1, a2, a3, a4, a6;

  void transform(const Integer& r, const Integer& s, const Integer& t) {
    WeierstrassCurve E{Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)};
    WeierstrassCurve F = apply(E, ModelTransformation{Rational(1), Rational(r), Rational(s), Rational(t)});
    a1 = F.a1.get_num();
    a2 = F.a2.get_num();
    a3 = F.a3.get_num();
    a4 = F.a4.get_num();
    a6 = F.a6.get_num();
  }
  long v(const Integer& x) const { return val_unchecked(x, p); }
  bool divisible(const Integer& x, unsigned long e) const { return v(x) >= static_cast<long>(e); }
  Integer pe(unsigned long e) const { return ipow(p, e); }
  Integer md(const Integer& x) const { return mod_floor(x, p); }
  Integer inv(const Integer& x) const {
    Integer r, m = md(x);
    if (!mpz_invert(r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()))
      throw std::logic_error("tate: non-invertible residue");
    return r;
  }
  // exact quotient, asserting divisibility
  Integer q(const Integer& x, unsigned long e) const {
    Integer d = pe(e);
    if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()))
      throw std::logic_error("tate: expected divisibility failed");
    return x / d;
  }
  // a X^2 + b X + c has a root in F_p
  bool quad_roots(const Integer& a, const Integer& b, const Integer& c) const {
    if (md(a) == 0 && md(b) == 0) return md(c) == 0;
    if (p == 2) {
      for (int X = 0; X < 2; ++X)
        if (md(Integer(a * X * X + b * X + c)) == 0) return true;
      return false;
    }
    if (md(a) == 0) return true;
    Integer disc = md(Integer(b * b - 4 * a * c));
    return disc == 0 || kronecker(disc, p) == 1;
  }
};

}  // namespace detail

/// Local reduction data of E at p. E need not be integral or minimal at p.
inline ReductionData tate_algorithm(const WeierstrassCurve& E, const Integer& p) {
  if (!is_prime(p)) throw NotPrime("tate_algorithm: " + p.get_str() + " is not prime");
  invariants(E);  // SingularCurve check
  Integer k = 1;
  for (const auto& a : E.ainvs()) k = lcm(k, Integer(a.get_den()));
  detail::TateState S{p, Rational(E.a1 * k).get_num(), Rational(E.a2 * ipow(k, 2)).get_num(),
                      Rational(E.a3 * ipow(k, 3)).get_num(), Rational(E.a4 * ipow(k, 4)).get_num(),
                      Rational(E.a6 * ipow(k, 6)).get_num()};
  auto& [P, a1, a2, a3, a4, a6] = S;
  (void)P;

  ReductionData out;
  out.p = p;
  using Tag = KodairaType::Tag;
  auto finish = [&](Tag tag, long n, long f, long c, ReductionClass cls, long vD) {
    out.kodaira = {tag, n};
    out.f_p = f;
    out.c_p = c;
    out.reduction_class = cls;
    out.disc_valuation = vD;
    return out;
  };

  while (true) {
    Integer b2 = a1 * a1 + 4 * a2;
    Integer b4 = 2 * a4 + a1 * a3;
    Integer b6 = a3 * a3 + 4 * a6;
    Integer b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    Integer c4 = b2 * b2 - 24 * b4;
    Integer c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    Integer disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    long vD = S.v(disc);
    if (vD == 0) return finish(Tag::I0, 0, 0, 1, ReductionClass::Good, 0);

    // Move the singular point of the reduction to (0, 0).
    Integer x0, y0;
    if (p <= 3) {
      bool found = false;
      for (long x = 0; x < p.get_si() && !found; ++x)
        for (long y = 0; y < p.get_si() && !found; ++y) {
          Integer X = x, Y = y;
          Integer f = Y * Y + a1 * X * Y + a3 * Y - X * X * X - a2 * X * X - a4 * X - a6;
          Integer fx = a1 * Y - 3 * X * X - 2 * a2 * X - a4;
          Integer fy = 2 * Y + a1 * X + a3;
          if (S.md(f) == 0 && S.md(fx) == 0 && S.md(fy) == 0) {
            x0 = X;
            y0 = Y;
            found = true;
          }
        }
      if (!found) throw std::logic_error("tate: singular point not found");
    } else {
      if (S.md(c4) == 0)
        x0 = S.md(Integer(-b2 * S.inv(Integer(12))));
      else
        x0 = S.md(Integer(-(c6 + b2 * c4) * S.inv(Integer(12 * c4))));
      y0 = S.md(Integer(-(a1 * x0 + a3) * S.inv(Integer(2))));
    }
    S.transform(x0, 0, y0);
    b2 = a1 * a1 + 4 * a2;

    if (S.md(b2) != 0) {
      // multiplicative: tangent slopes are the roots of T^2 + a1 T - a2
      bool split = S.quad_roots(Integer(1), a1, Integer(-a2));
      long c = split ? vD : (vD % 2 == 0 ? 2 : 1);
      return finish(Tag::In, vD, 1, c,
                    split ? ReductionClass::MultiplicativeSplit : ReductionClass::MultiplicativeNonsplit,
                    vD);
    }
    if (!S.divisible(a6, 2)) return finish(Tag::II, 0, vD, 1, ReductionClass::Additive, vD);
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    if (!S.divisible(b8, 3)) return finish(Tag::III, 0, vD - 1, 2, ReductionClass::Additive, vD);
    b6 = a3 * a3 + 4 * a6;
    if (!S.divisible(b6, 3)) {
      long c = S.quad_roots(Integer(1), S.q(a3, 1), Integer(-S.q(a6, 2))) ? 3 : 1;
      return finish(Tag::IV, 0, vD - 2, c, ReductionClass::Additive, vD);
    }

    // p | a1, a2;  p^2 | a3, a4;  p^3 | a6
    if (p == 2) {
      Integer s = S.md(a2);
      Integer t = 2 * S.md(S.q(a6, 2));
      S.transform(0, s, t);
    } else {
      Integer s = S.md(Integer(-a1 * S.inv(Integer(2))));
      S.transform(0, s, 0);
      Integer p2 = S.pe(2), inv2;
      Integer two = 2;
      mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p2.get_mpz_t());
      Integer t = mod_floor(Integer(-a3 * inv2), p2);
      S.transform(0, 0, t);
    }
    if (!S.divisible(a1, 1) || !S.divisible(a2, 1) || !S.divisible(a3, 2) || !S.divisible(a4, 2) ||
        !S.divisible(a6, 3))
      throw std::logic_error("tate: normalization before the cubic step failed");

    Integer b = S.q(a2, 1), c = S.q(a4, 2), d = S.q(a6, 3);
    FpPoly cubic(p, {d, c, b, Integer(1)});
    // A repeated root of a cubic over F_p is itself in F_p. Multiplicities
    // come from repeated division, which also works in characteristic 2, 3.
    auto roots = roots_mod_p(cubic);
    long mult = 1;
    Integer alpha = 0;
    for (const auto& r : roots) {
      long m = 0;
      FpPoly rest = cubic;
      while (rest.degree() >= 1) {
        auto [qt, rm] = rest.divmod(FpPoly(p, {Integer(-r), Integer(1)}));
        if (!rm.is_zero()) break;
        rest = qt;
        ++m;
      }
      if (m > mult) {
        mult = m;
        alpha = r;
      }
    }

    if (mult == 1) {
      long nroots = static_cast<long>(roots.size());
      return finish(Tag::I0star, 0, vD - 4, 1 + nroots, ReductionClass::Additive, vD);
    }

    if (mult == 2) {
      S.transform(p * alpha, 0, 0);
      long ix = 3, iy = 3;
      Integer mx = S.pe(2), my = S.pe(2);
      long cp = 0;
      while (true) {
        Integer a2t = a2 / p, a3t = a3 / my, a4t = a4 / (p * mx), a6t = a6 / (mx * my);
        if (S.md(Integer(a3t * a3t + 4 * a6t)) != 0) {
          cp = S.quad_roots(Integer(1), a3t, Integer(-a6t)) ? 4 : 2;
          break;
        }
        Integer t = p == 2 ? S.md(a6t) : S.md(Integer(-a3t * S.inv(Integer(2))));
        S.transform(0, 0, my * t);
        my *= p;
        ++iy;
        a2t = a2 / p;
        a3t = a3 / my;
        a4t = a4 / (p * mx);
        a6t = a6 / (mx * my);
        if (S.md(Integer(a4t * a4t - 4 * a2t * a6t)) != 0) {
          cp = S.quad_roots(a2t, a4t, a6t) ? 4 : 2;
          break;
        }
        Integer r = p == 2 ? S.md(Integer(a6t * S.inv(a2t)))
                           : S.md(Integer(-a4t * S.inv(Integer(2 * a2t))));
        S.transform(mx * r, 0, 0);
        mx *= p;
        ++ix;
      }
      long n = ix + iy - 5;
      return finish(Tag::Instar, n, vD - ix - iy + 1, cp, ReductionClass::Additive, vD);
    }

    // triple root
    S.transform(p * alpha, 0, 0);
    if (!S.divisible(a2, 2) || !S.divisible(a4, 3) || !S.divisible(a6, 4))
      throw std::logic_error("tate: triple-root translation failed");
    Integer x3 = S.q(a3, 2), x6 = S.q(a6, 4);
    if (S.md(Integer(x3 * x3 + 4 * x6)) != 0) {
      long cp = S.quad_roots(Integer(1), x3, Integer(-x6)) ? 3 : 1;
      return finish(Tag::IVstar, 0, vD - 6, cp, ReductionClass::Additive, vD);
    }
    Integer t = p == 2 ? S.md(x6) : S.md(Integer(-x3 * S.inv(Integer(2))));
    S.transform(0, 0, S.pe(2) * t);
    if (!S.divisible(a4, 4)) return finish(Tag::IIIstar, 0, vD - 7, 2, ReductionClass::Additive, vD);
    if (!S.divisible(a6, 6)) return finish(Tag::IIstar, 0, vD - 8, 1, ReductionClass::Additive, vD);

    // not minimal at p
    a1 = S.q(a1, 1);
    a2 = S.q(a2, 2);
    a3 = S.q(a3, 3);
    a4 = S.q(a4, 4);
    a6 = S.q(a6, 6);
  }
}

/// Primes dividing the minimal discriminant.
inline std::vector<Integer> bad_primes(const WeierstrassCurve& E) {
  auto [M, T] = minimal_model(E);
  return factorize(discriminant(M).get_num()).primes();
}

/// Reduction data at every bad prime, computed on the minimal model.
inline std::vector<ReductionData> local_data(const WeierstrassCurve& E) {
  auto [M, T] = minimal_model(E);
  std::vector<ReductionData> out;
  for (const auto& p : factorize(discriminant(M).get_num()).primes()) out.push_back(tate_algorithm(M, p));
  return out;
}

inline Integer conductor(const WeierstrassCurve& E) {
  Integer N = 1;
  for (const auto& rd : local_data(E)) N *= ipow(rd.p, static_cast<unsigned long>(rd.f_p));
  return N;
}

inline Integer tamagawa_product(const WeierstrassCurve& E) {
  Integer c = 1;
  for (const auto& rd : local_data(E)) c *= rd.c_p;
  return c;
}

}  // namespace twistlab
