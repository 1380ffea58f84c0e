// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <twistlab/corpus.hpp>

#include "property_suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace twistlab;
namespace tt = twistlab::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// A criterion body appends "what went wrong" lines; an empty log is a pass.
class Log {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_.empty()) return {true, summary};
    std::string d = std::to_string(failures_.size()) + " of " + std::to_string(checks_) + " checks failed; first: ";
    return {false, d + failures_.front()};
  }
  long checks() const { return checks_; }

 private:
  long checks_ = 0;
  std::vector<std::string> failures_;
};

std::vector<long> squarefree_range(long lo, long hi) {
  SweepConfig cfg;
  cfg.d_min = lo;
  cfg.d_max = hi;
  return sweep_ds(cfg);
}

Outcome fixture_torsion() {
  Log log;
  for (const auto& [label, want] : std::vector<std::pair<std::string, std::string>>{
           {"50a2", "Z/3Z"}, {"50b3", "Z/5Z"}, {"171b2", "Z/3Z"}, {"50a4", "0"}}) {
    auto got = torsion_subgroup(tt::fixture(label)).to_string();
    log.expect(got == want, label + " gave " + got);
  }
  return log.outcome("4 fixture torsion groups exact");
}

Outcome fixture_conductors() {
  Log log;
  for (const auto& f : tt::fixtures()) {
    Integer N = conductor(tt::curve_of(f));
    log.expect(N == f.conductor, std::string(f.label) + " gave " + N.get_str());
  }
  return log.outcome("7 conductors exact");
}

Outcome twist_identities() {
  Log log;
  auto a = minimal_model(quadratic_twist(tt::fixture("19a2"), Integer(-3))).first;
  log.expect(is_isomorphic_over_Q(a, WeierstrassCurve(0, 0, 1, -84, 315)).has_value(), "19a2 by -3 gave " + a.to_string());
  auto b = minimal_model(quadratic_twist(tt::fixture("50a2"), Integer(5))).first;
  log.expect(is_isomorphic_over_Q(b, WeierstrassCurve(1, 1, 1, -3, 1)).has_value(), "50a2 by 5 gave " + b.to_string());
  return log.outcome("2 twist identities exact");
}

Outcome growth_fixtures() {
  Log log;
  auto a = odd_torsion_over_L(tt::fixture("50a2"), Integer(5)).to_string();
  log.expect(a == "Z/15Z", "50a2 over Q(sqrt 5) gave " + a);
  auto b = odd_torsion_over_L(tt::fixture("50a4"), Integer(-3)).to_string();
  log.expect(b == "Z/3Z", "50a4 over Q(sqrt -3) gave " + b);
  return log.outcome("odd torsion over L: Z/15Z and Z/3Z");
}

Outcome oracle_equivalence() {
  Log log;
  for (const auto& f : tt::fixtures()) {
    auto E = tt::curve_of(f);
    for (long d : squarefree_range(-20, 20)) {
      auto odd = odd_torsion_over_L(E, Integer(d));
      for (long ell : {3L, 5L, 7L}) {
        auto direct = direct_ell_torsion_over_L(E, Integer(d), ell).structure();
        log.expect(direct == odd.ell_part(ell), std::string(f.label) + " d=" + std::to_string(d) + " ell=" +
                                                    std::to_string(ell) + ": direct " + direct.to_string() +
                                                    " vs " + odd.ell_part(ell).to_string());
      }
    }
  }
  bool enough = log.checks() >= 400;
  auto o = log.outcome(std::to_string(log.checks()) + " (curve, d, ell) triples agree");
  if (!enough) return {false, "only " + std::to_string(log.checks()) + " triples"};
  return o;
}

Outcome soundness_sweep() {
  auto corpus = load_corpus(std::string(TWISTLAB_DATA_DIR) + "/fixtures.csv");
  SweepConfig cfg;
  cfg.d_min = -50;
  cfg.d_max = 50;
  cfg.parallelism = 1;
  auto S = run_sweep(corpus, cfg);
  Log log;
  log.expect(S.violations.empty(), std::to_string(S.violations.size()) + " violations: " + S.violations.dump());
  log.expect(S.errors.empty(), std::to_string(S.errors.size()) + " errors: " + S.errors.dump());
  log.expect(S.curves == 7, "corpus has " + std::to_string(S.curves) + " curves");
  return log.outcome(std::to_string(S.pairs_checked) + " pairs, 0 violations");
}

Outcome kodaira_property() {
  Log log;
  for (const auto& f : tt::fixtures()) {
    auto E = tt::curve_of(f);
    for (long p : tt::sieve(50)) {
      if (p <= 3 || f.conductor % p == 0) continue;
      for (long s : {1L, -1L}) {
        auto rd = tate_algorithm(quadratic_twist(E, Integer(s * p)), Integer(p));
        log.expect(rd.kodaira.tag == KodairaType::Tag::I0star && rd.f_p == 2,
                   std::string(f.label) + " d=" + std::to_string(s * p) + " gave " + rd.kodaira.to_string() +
                       " f=" + std::to_string(rd.f_p));
      }
    }
  }
  return log.outcome(std::to_string(log.checks()) + " twists are I0* with f_p = 2");
}

Outcome heegner_fixtures() {
  Log log;
  log.expect(heegner_hypothesis(make_field(Integer(-31)), Integer(50)).holds, "Q(sqrt -31), N=50 should hold");
  log.expect(!heegner_hypothesis(make_field(Integer(-3)), Integer(50)).holds, "Q(sqrt -3), N=50 should fail");
  auto C = make_context(tt::fixture("50a2"), Integer(-31));
  auto v = check_heegner_corollary(C);
  log.expect(v.hypotheses_hold && v.conclusion_holds == true, "verdict " + to_json(v).dump());
  log.expect(C.growth.quotient_odd_part == 1, "quotient_odd_part " + std::to_string(C.growth.quotient_odd_part));
  return log.outcome("Heegner hypothesis and corollary fixtures exact");
}

Outcome property_suites() {
  auto a = tt::discriminant_identity(10000, 20261016);
  auto b = tt::twist_invariance(1000, 20261017);
  auto c = tt::torsion_divides_point_counts();
  long fails = a.failures + b.failures + c.failures;
  std::ostringstream s;
  s << a.cases << " identity cases, " << b.cases << " twist cases, " << c.cases << " reduction checks, " << fails
    << " failures";
  return {fails == 0, s.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"fixture torsion", 1, fixture_torsion},
      {"fixture conductors", 1, fixture_conductors},
      {"twist identities", 1e9, twist_identities},
      {"growth fixtures", 1e9, growth_fixtures},
      {"oracle equivalence", 120, oracle_equivalence},
      {"theorem soundness sweep", 300, soundness_sweep},
      {"Kodaira property", 1e9, kodaira_property},
      {"Heegner fixtures", 1e9, heegner_fixtures},
      {"property suites", 1e9, property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += " (took longer than the " + std::to_string(static_cast<long>(c.budget_s)) + " s budget)";
    }
    failed += !o.pass;
    std::printf("%s  %zu  %-26s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
