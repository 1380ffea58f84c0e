#pragma once

// JSON sections of the curve report. Exact numbers (which may not fit in a
// machine word) are serialized as decimal strings.

#include <twistlab/localdata.hpp>
#include <twistlab/quadtorsion.hpp>
#include <twistlab/theorems.hpp>
#include <twistlab/torsion.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace twistlab {

inline ordered_json json_point(const RationalPoint& P) {
  if (P.infinity) return "O";
  return ordered_json{{"x", P.x.get_str()}, {"y", P.y.get_str()}};
}

inline ordered_json json_point(const LPoint& P) {
  if (P.infinity) return "O";
  return ordered_json{{"x", P.x.to_string()}, {"y", P.y.to_string()}};
}

inline ordered_json json_invariants(const WeierstrassCurve& E) {
  auto I = invariants(E);
  auto [M, T] = minimal_model(E);
  ordered_json j;
  j["b2"] = I.b2.get_str();
  j["b4"] = I.b4.get_str();
  j["b6"] = I.b6.get_str();
  j["b8"] = I.b8.get_str();
  j["c4"] = I.c4.get_str();
  j["c6"] = I.c6.get_str();
  j["discriminant"] = I.disc.get_str();
  j["j"] = I.j.get_str();
  j["minimal_model"] = M.to_string();
  j["minimal_discriminant"] = discriminant(M).get_str();
  return j;
}

inline ordered_json json_reduction_data(const ReductionData& r) {
  ordered_json j;
  j["p"] = r.p.get_str();
  j["kodaira"] = r.kodaira.to_string();
  j["f_p"] = r.f_p;
  j["c_p"] = r.c_p;
  j["reduction"] = to_string(r.reduction_class);
  j["disc_valuation"] = r.disc_valuation;
  return j;
}

inline ordered_json json_reduction(const WeierstrassCurve& E) {
  auto local = local_data(E);
  Integer N = 1, c = 1;
  ordered_json primes = ordered_json::array();
  for (const auto& r : local) {
    N *= ipow(r.p, static_cast<unsigned long>(r.f_p));
    c *= r.c_p;
    primes.push_back(json_reduction_data(r));
  }
  ordered_json j;
  j["conductor"] = N.get_str();
  j["tamagawa_product"] = c.get_str();
  j["primes"] = primes;
  return j;
}

inline ordered_json json_torsion(const TorsionGroup& G) {
  ordered_json j;
  j["structure"] = G.to_string();
  j["order"] = G.order;
  j["invariant_factors"] = G.invariant_factors;
  ordered_json gens = ordered_json::array();
  for (const auto& g : G.generators) {
    ordered_json p = json_point(g.point);
    p["order"] = g.order;
    gens.push_back(p);
  }
  j["generators"] = gens;
  return j;
}

inline ordered_json json_growth(const GrowthReport& R) {
  ordered_json j;
  j["d"] = R.field.d.get_str();
  j["field"] = R.field.name();
  j["field_discriminant"] = R.field.discriminant.get_str();
  j["ramified_primes"] = detail::int_list(R.field.ramified_primes);
  j["twist"] = R.twist.to_string();
  j["base_torsion"] = R.base_torsion.to_string();
  j["twist_torsion"] = R.twist_torsion.to_string();
  j["odd_L_torsion"] = R.odd_L_torsion.to_string();
  j["two_torsion_L"] = R.two_torsion_L.to_string();
  ordered_json pts = ordered_json::array();
  for (const auto& P : R.two_torsion_L.points) pts.push_back(json_point(P));
  j["two_torsion_L_points"] = pts;
  j["growth_primes"] = R.growth_primes;
  j["quotient_odd_part"] = R.quotient_odd_part;
  j["two_primary_note"] = "2-primary torsion is reported only up to E(L)[2]";
  return j;
}

inline ordered_json json_verdicts(const std::vector<TheoremVerdict>& vs) {
  ordered_json j = ordered_json::array();
  for (const auto& v : vs) j.push_back(to_json(v));
  return j;
}

/// The full report: keys curve, invariants, reduction, torsion, growth,
/// verdicts (the last two null when no d is involved).
inline ordered_json curve_report(const WeierstrassCurve& E, const GrowthReport* growth = nullptr,
                                 const std::vector<TheoremVerdict>* verdicts = nullptr,
                                 const TorsionGroup* torsion = nullptr) {
  ordered_json j;
  j["curve"] = E.to_string();
  j["invariants"] = json_invariants(E);
  j["reduction"] = json_reduction(E);
  j["torsion"] = json_torsion(torsion ? *torsion : growth ? growth->base_torsion : torsion_subgroup(E));
  j["growth"] = growth ? json_growth(*growth) : ordered_json(nullptr);
  j["verdicts"] = verdicts ? json_verdicts(*verdicts) : ordered_json(nullptr);
  return j;
}

}  // namespace twistlab
