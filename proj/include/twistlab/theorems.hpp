#pragma once

// Mechanical verdicts for the torsion-growth theorems: each checker
// evaluates the hypotheses and, when they hold, the conclusion from
// computed data. A true hypothesis with a false conclusion is a bug.

#include <twistlab/localdata.hpp>
#include <twistlab/quadfield.hpp>
#include <twistlab/quadtorsion.hpp>
#include <twistlab/torsion.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace twistlab {

using ordered_json = nlohmann::ordered_json;

enum class TheoremId {
  TwistNoLargeTorsion,
  RamifiedPrimesBad,
  TorsionGrowthPowerOf2,
  LocalTwist,
  Heegner,
};

inline const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::TwistNoLargeTorsion: return "Thm_TwistNoLargeTorsion";
    case TheoremId::RamifiedPrimesBad: return "Thm_RamifiedPrimesBad";
    case TheoremId::TorsionGrowthPowerOf2: return "Thm_TorsionGrowthPowerOf2";
    case TheoremId::LocalTwist: return "Cor_LocalTwist";
    case TheoremId::Heegner: return "Cor_Heegner";
  }
  return "?";
}

struct TheoremVerdict {
  TheoremId theorem_id;
  bool hypotheses_hold = false;
  std::optional<bool> conclusion_holds;  // present iff hypotheses_hold
  ordered_json evidence = ordered_json::object();

  bool violated() const { return hypotheses_hold && conclusion_holds == false; }
};

inline ordered_json to_json(const TheoremVerdict& v) {
  ordered_json j;
  j["theorem_id"] = to_string(v.theorem_id);
  j["hypotheses_hold"] = v.hypotheses_hold;
  j["conclusion_holds"] = v.conclusion_holds ? ordered_json(*v.conclusion_holds) : ordered_json(nullptr);
  j["evidence"] = v.evidence;
  return j;
}

/// A proven theorem failed on computed data: an implementation bug.
class Violation : public Error {
 public:
  Violation(const std::string& what, ordered_json evidence) : Error(what), evidence_(std::move(evidence)) {}
  const char* kind() const noexcept override { return "Violation"; }
  const ordered_json& evidence() const { return evidence_; }

 private:
  ordered_json evidence_;
};

/// Everything the checkers need about one (E, d) pair, computed once.
struct TheoremContext {
  WeierstrassCurve curve;
  Integer conductor;
  std::vector<ReductionData> local;
  std::vector<Integer> bad_primes;
  GrowthReport growth;
  std::vector<Integer> d_primes;  // primes dividing the squarefree d

  const QuadraticField& field() const { return growth.field; }
  bool is_bad(const Integer& p) const {
    return std::find(bad_primes.begin(), bad_primes.end(), p) != bad_primes.end();
  }
  bool ramifies(const Integer& p) const {
    const auto& r = field().ramified_primes;
    return std::find(r.begin(), r.end(), p) != r.end();
  }
};

namespace detail {

inline ordered_json int_list(const std::vector<Integer>& v) {
  ordered_json j = ordered_json::array();
  for (const auto& x : v) j.push_back(x.get_str());
  return j;
}

inline ordered_json long_list(const std::vector<long>& v) {
  ordered_json j = ordered_json::array();
  for (long x : v) j.push_back(x);
  return j;
}

// Largest prime dividing n (n >= 1), or 1.
inline long largest_prime_factor(long n) {
  long best = 1;
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      best = p;
      n /= p;
    }
  return n > 1 ? n : best;
}

}  // namespace detail

inline TheoremContext make_context(const WeierstrassCurve& E, const Integer& d, std::size_t bound_primes = 8) {
  TheoremContext C;
  C.curve = E;
  C.growth = growth_report(E, d, bound_primes);  // validates d
  C.local = local_data(E);
  C.conductor = 1;
  for (const auto& r : C.local) {
    C.bad_primes.push_back(r.p);
    C.conductor *= ipow(r.p, static_cast<unsigned long>(r.f_p));
  }
  C.d_primes = factorize(C.field().d).primes();
  return C;
}

/// A prime p | d with p > 3 and p not dividing N forbids points of prime
/// order > 3 on E^d.
inline TheoremVerdict check_twist_no_large_torsion(const TheoremContext& C) {
  TheoremVerdict v{TheoremId::TwistNoLargeTorsion, false, std::nullopt, ordered_json::object()};
  std::vector<Integer> witnesses;
  for (const auto& p : C.d_primes)
    if (p > 3 && !C.is_bad(p)) witnesses.push_back(p);
  v.hypotheses_hold = !witnesses.empty();
  v.evidence["d"] = C.field().d.get_str();
  v.evidence["conductor"] = C.conductor.get_str();
  v.evidence["primes_of_d"] = detail::int_list(C.d_primes);
  v.evidence["witness_primes"] = detail::int_list(witnesses);
  v.evidence["twist"] = C.growth.twist.to_string();
  v.evidence["twist_torsion"] = C.growth.twist_torsion.to_string();
  if (v.hypotheses_hold) {
    long largest = detail::largest_prime_factor(C.growth.twist_torsion.order);
    v.evidence["largest_prime_in_twist_torsion"] = largest;
    v.conclusion_holds = largest <= 3;
  }
  return v;
}

/// p | d ramified, p good for E, p > 3: E^d has no point of order p, nor of
/// any prime order > 3.
inline TheoremVerdict check_local_twist_corollary(const TheoremContext& C, const Integer& p) {
  if (!is_prime(p)) throw NotPrime("check_local_twist_corollary: " + p.get_str() + " is not prime");
  TheoremVerdict v{TheoremId::LocalTwist, false, std::nullopt, ordered_json::object()};
  bool divides = mpz_divisible_p(C.field().d.get_mpz_t(), p.get_mpz_t()) != 0;
  bool good = !C.is_bad(p);
  v.hypotheses_hold = divides && good && p > 3;
  v.evidence["p"] = p.get_str();
  v.evidence["p_divides_d"] = divides;
  v.evidence["p_good_for_E"] = good;
  v.evidence["p_gt_3"] = p > 3;
  v.evidence["twist_torsion"] = C.growth.twist_torsion.to_string();
  if (divides && good) {
    // E^d at p: the twist by a uniformizer of a good curve is I0* for p > 3
    auto rd = tate_algorithm(C.growth.twist, p);
    v.evidence["twist_kodaira_at_p"] = rd.kodaira.to_string();
    v.evidence["twist_f_p"] = rd.f_p;
    if (p > 3 && rd.kodaira.tag != KodairaType::Tag::I0star)
      v.evidence["kodaira_flag"] = "unexpected type " + rd.kodaira.to_string() + " at p > 3; flagged for review";
  }
  if (v.hypotheses_hold) {
    long order = C.growth.twist_torsion.order;
    bool no_p = !mpz_divisible_ui_p(Integer(order).get_mpz_t(), p.get_ui());
    long largest = detail::largest_prime_factor(order);
    v.evidence["no_point_of_order_p"] = no_p;
    v.evidence["largest_prime_in_twist_torsion"] = largest;
    v.conclusion_holds = no_p && largest <= 3;
  }
  return v;
}

/// Growth at a prime p >= 5 forces every ramified prime of L to be bad.
inline TheoremVerdict check_ramified_primes_bad(const TheoremContext& C) {
  TheoremVerdict v{TheoremId::RamifiedPrimesBad, false, std::nullopt, ordered_json::object()};
  std::vector<long> large;
  for (long p : C.growth.growth_primes)
    if (p >= 5) large.push_back(p);
  v.hypotheses_hold = !large.empty();
  v.evidence["growth_primes"] = detail::long_list(C.growth.growth_primes);
  v.evidence["growth_primes_ge_5"] = detail::long_list(large);
  v.evidence["ramified_primes"] = detail::int_list(C.field().ramified_primes);
  v.evidence["bad_primes"] = detail::int_list(C.bad_primes);
  if (v.hypotheses_hold) {
    bool all_bad = true;
    for (const auto& q : C.field().ramified_primes) all_bad = all_bad && C.is_bad(q);
    v.conclusion_holds = all_bad;
  }
  return v;
}

/// (i) bad primes unramified in L => no growth at primes > 3.
/// (ii) additionally some prime != 3 ramifies => no odd growth at all.
inline TheoremVerdict check_growth_power_of_2(const TheoremContext& C) {
  TheoremVerdict v{TheoremId::TorsionGrowthPowerOf2, false, std::nullopt, ordered_json::object()};
  bool bad_unramified = true;
  for (const auto& p : C.bad_primes) bad_unramified = bad_unramified && !C.ramifies(p);
  bool other_ramified = false;
  for (const auto& q : C.field().ramified_primes) other_ramified = other_ramified || q != 3;
  bool part2 = bad_unramified && other_ramified;
  v.hypotheses_hold = bad_unramified;
  v.evidence["bad_primes"] = detail::int_list(C.bad_primes);
  v.evidence["ramified_primes"] = detail::int_list(C.field().ramified_primes);
  v.evidence["growth_primes"] = detail::long_list(C.growth.growth_primes);
  v.evidence["quotient_odd_part"] = C.growth.quotient_odd_part;
  v.evidence["part_ii_hypotheses_hold"] = part2;
  if (v.hypotheses_hold) {
    bool c1 = true;
    for (long p : C.growth.growth_primes) c1 = c1 && p <= 3;
    v.evidence["part_i_conclusion_holds"] = c1;
    bool ok = c1;
    if (part2) {
      bool c2 = C.growth.quotient_odd_part == 1;
      v.evidence["part_ii_conclusion_holds"] = c2;
      ok = ok && c2;
    }
    v.conclusion_holds = ok;
  }
  return v;
}

/// Imaginary L != Q(sqrt -3) satisfying the Heegner hypothesis: no odd
/// growth; and if E(Q)[2] = 0, also E(L)[2] = 0.
inline TheoremVerdict check_heegner_corollary(const TheoremContext& C) {
  TheoremVerdict v{TheoremId::Heegner, false, std::nullopt, ordered_json::object()};
  const auto& L = C.field();
  auto H = heegner_hypothesis(L, C.conductor);
  v.hypotheses_hold = L.imaginary && L.d != -3 && H.holds;
  Integer tam = 1;
  for (const auto& r : C.local) tam *= r.c_p;
  v.evidence["field"] = L.name();
  v.evidence["heegner"] = H.holds;
  v.evidence["heegner_reason"] = H.reason;
  ordered_json split = ordered_json::object();
  for (const auto& [p, s] : H.primes) split[p.get_str()] = to_string(s);
  v.evidence["splitting"] = split;
  v.evidence["tamagawa_product"] = tam.get_str();
  v.evidence["u_L"] = L.u();
  v.evidence["note"] =
      "checked without the infinite-order Heegner point hypothesis; torsion verified as the exact odd part "
      "plus E(L)[2], not 2-primary torsion of order 4 or more";
  if (v.hypotheses_hold) {
    bool c1 = C.growth.quotient_odd_part == 1;
    v.evidence["quotient_odd_part"] = C.growth.quotient_odd_part;
    v.evidence["part_i_conclusion_holds"] = c1;
    bool ok = c1;
    if (C.growth.two_torsion_Q_rank == 0) {
      bool c2 = C.growth.two_torsion_L.rank == 0 && c1;
      v.evidence["two_torsion_L"] = C.growth.two_torsion_L.to_string();
      v.evidence["part_ii_conclusion_holds"] = c2;
      ok = ok && c2;
    }
    v.conclusion_holds = ok;
  }
  return v;
}

// Convenience overloads taking (E, d).
inline TheoremVerdict check_twist_no_large_torsion(const WeierstrassCurve& E, const Integer& d) {
  return check_twist_no_large_torsion(make_context(E, d));
}
inline TheoremVerdict check_local_twist_corollary(const WeierstrassCurve& E, const Integer& d, const Integer& p) {
  return check_local_twist_corollary(make_context(E, d), p);
}
inline TheoremVerdict check_ramified_primes_bad(const WeierstrassCurve& E, const Integer& d) {
  return check_ramified_primes_bad(make_context(E, d));
}
inline TheoremVerdict check_growth_power_of_2(const WeierstrassCurve& E, const Integer& d) {
  return check_growth_power_of_2(make_context(E, d));
}
inline TheoremVerdict check_heegner_corollary(const WeierstrassCurve& E, const Integer& d) {
  return check_heegner_corollary(make_context(E, d));
}

/// The prime used for the local corollary in a full run: the smallest
/// p | d with p > 3 and p good, else the largest prime dividing d, else 2.
inline Integer local_witness_prime(const TheoremContext& C) {
  for (const auto& p : C.d_primes)
    if (p > 3 && !C.is_bad(p)) return p;
  if (!C.d_primes.empty()) return C.d_primes.back();
  return 2;
}

/// Every checker on one pair, plus the structural cross-checks between them.
/// Throws Violation if any theorem fails.
inline std::vector<TheoremVerdict> run_all(const TheoremContext& C) {
  std::vector<TheoremVerdict> out;
  out.push_back(check_twist_no_large_torsion(C));
  out.push_back(check_ramified_primes_bad(C));
  out.push_back(check_growth_power_of_2(C));
  out.push_back(check_local_twist_corollary(C, local_witness_prime(C)));
  out.push_back(check_heegner_corollary(C));

  auto fail = [&](const std::string& what) {
    ordered_json ev;
    ev["curve"] = C.curve.to_string();
    ev["d"] = C.field().d.get_str();
    ev["verdicts"] = ordered_json::array();
    for (const auto& v : out) ev["verdicts"].push_back(to_json(v));
    throw Violation(what, ev);
  };
  for (const auto& v : out)
    if (v.violated()) fail(std::string(to_string(v.theorem_id)) + " violated");

  const auto& no_large = out[0];
  const auto& local = out[3];
  if (no_large.hypotheses_hold) {
    if (!local.hypotheses_hold) fail("structural: witness prime does not satisfy the local hypotheses");
    if (no_large.conclusion_holds != local.conclusion_holds) fail("structural: local and global conclusions disagree");
  }
  const auto& growth = out[2];
  if (out[4].hypotheses_hold && !(growth.hypotheses_hold && growth.evidence["part_ii_hypotheses_hold"].get<bool>()))
    fail("structural: Heegner hypotheses do not imply the power-of-2 hypotheses");
  for (const auto& v : out)
    if (v.hypotheses_hold != v.conclusion_holds.has_value()) fail("structural: verdict shape");
  return out;
}

inline std::vector<TheoremVerdict> run_all(const WeierstrassCurve& E, const Integer& d) {
  return run_all(make_context(E, d));
}

}  // namespace twistlab
