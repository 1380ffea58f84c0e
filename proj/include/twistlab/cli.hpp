#pragma once

// The twistlab command line: info | twist | growth | heegner | verify.
// Exit codes: 0 success, 1 theorem violation, 2 input error.

#include <twistlab/corpus.hpp>
#include <twistlab/report.hpp>
#include <twistlab/theorems.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace twistlab {

namespace detail {

struct Printer {
  std::ostream& out;
  void row(const std::string& key, const std::string& value) const {
    out << std::left << std::setw(27) << key << value << "\n";
  }
};

inline std::string join(const std::vector<Integer>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].get_str();
  return s.empty() ? "-" : s;
}

inline std::string join(const std::vector<long>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

inline std::string verdict_line(const TheoremVerdict& v) {
  std::string c = v.conclusion_holds ? (*v.conclusion_holds ? "true" : "FALSE") : "n/a";
  return std::string("hypotheses=") + (v.hypotheses_hold ? "true" : "false") + " conclusion=" + c;
}

inline void print_curve_text(const Printer& P, const WeierstrassCurve& E, const TorsionGroup& G) {
  auto I = invariants(E);
  auto [M, T] = minimal_model(E);
  auto local = local_data(E);
  Integer N = 1, c = 1;
  for (const auto& r : local) {
    N *= ipow(r.p, static_cast<unsigned long>(r.f_p));
    c *= r.c_p;
  }
  P.row("curve", E.to_string());
  P.row("minimal model", M.to_string());
  P.row("c4", I.c4.get_str());
  P.row("c6", I.c6.get_str());
  P.row("discriminant", I.disc.get_str());
  P.row("minimal discriminant", discriminant(M).get_str());
  P.row("j-invariant", I.j.get_str());
  P.row("conductor", N.get_str());
  for (const auto& r : local) {
    std::ostringstream s;
    s << std::left << std::setw(6) << r.kodaira.to_string() << "f=" << r.f_p << "  c=" << r.c_p << "  "
      << to_string(r.reduction_class);
    P.row("  p=" + r.p.get_str(), s.str());
  }
  P.row("tamagawa product", c.get_str());
  std::string gens;
  for (const auto& g : G.generators) gens += " " + to_string(g.point) + " of order " + std::to_string(g.order);
  P.row("torsion", G.to_string() + (gens.empty() ? "" : "  generators:" + gens));
}

inline void print_growth_text(const Printer& P, const GrowthReport& R) {
  P.row("field", R.field.name() + "  (discriminant " + R.field.discriminant.get_str() + ")");
  P.row("twist (minimal)", R.twist.to_string());
  P.row("base torsion", R.base_torsion.to_string());
  P.row("twist torsion", R.twist_torsion.to_string());
  P.row("odd_L_torsion", R.odd_L_torsion.to_string());
  P.row("two_torsion_L", R.two_torsion_L.to_string() + "  (2-primary part reported only up to E(L)[2])");
  P.row("growth_primes", join(R.growth_primes));
  P.row("quotient_odd_part", std::to_string(R.quotient_odd_part));
}

}  // namespace detail

/// Runs the CLI with the given arguments; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"twistlab: quadratic twists, reduction data and torsion growth of elliptic curves over Q"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string curve_lit, corpus_path, output_path;
  long d = 0;
  bool json = false;
  SweepConfig cfg;
  unsigned hw = std::thread::hardware_concurrency();
  cfg.parallelism = hw == 0 ? 1 : hw;

  auto add_curve = [&](CLI::App* sub) {
    sub->add_option("curve", curve_lit, "Curve literal [a1,a2,a3,a4,a6] (entries may be p/q)")->required();
    sub->add_flag("--json", json, "Emit the JSON report");
  };
  auto add_d = [&](CLI::App* sub) { sub->add_option("-d", d, "Squarefree twisting parameter")->required(); };

  auto* info = app.add_subcommand("info", "Invariants, minimal model, reduction data and torsion");
  add_curve(info);
  auto* twist = app.add_subcommand("twist", "Quadratic twist by d");
  add_curve(twist);
  add_d(twist);
  auto* growth = app.add_subcommand("growth", "Torsion growth over Q(sqrt d) and all theorem verdicts");
  add_curve(growth);
  add_d(growth);
  growth->add_option("--primes-for-bounds", cfg.primes_for_bounds, "Odd good primes used for torsion bounds")
      ->envname("TWISTLAB_PRIMES_FOR_BOUNDS")
      ->check(CLI::PositiveNumber);
  auto* heegner = app.add_subcommand("heegner", "Heegner hypothesis and the Heegner corollary");
  add_curve(heegner);
  add_d(heegner);
  auto* verify = app.add_subcommand("verify", "Run every theorem check over a corpus and a range of d");
  verify->add_option("corpus", corpus_path, "CSV with header label,a1,a2,a3,a4,a6")->required();
  verify->add_option("--d-min", cfg.d_min, "Smallest d")->envname("TWISTLAB_D_MIN");
  verify->add_option("--d-max", cfg.d_max, "Largest d")->envname("TWISTLAB_D_MAX");
  verify->add_flag("--ell-oracle", cfg.ell_oracle, "Also run the direct ell-torsion oracle (ell = 3, 5, 7)")
      ->envname("TWISTLAB_ELL_ORACLE");
  verify->add_option("--primes-for-bounds", cfg.primes_for_bounds, "Odd good primes used for torsion bounds")
      ->envname("TWISTLAB_PRIMES_FOR_BOUNDS")
      ->check(CLI::PositiveNumber);
  verify->add_option("--parallelism", cfg.parallelism, "Worker threads")
      ->envname("TWISTLAB_PARALLELISM")
      ->check(CLI::PositiveNumber);
  verify->add_option("--output", output_path, "Also write the JSON report to this file");
  verify->add_flag("--json", json, "Emit the JSON report on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  detail::Printer P{out};
  try {
    if (*info) {
      auto E = parse_curve(curve_lit);
      auto G = torsion_subgroup(E);
      if (json)
        out << curve_report(E, nullptr, nullptr, &G).dump(2) << "\n";
      else
        detail::print_curve_text(P, E, G);
      return 0;
    }
    if (*twist) {
      auto E = parse_curve(curve_lit);
      auto L = make_field(Integer(d));
      auto Ed = quadratic_twist(E, L.d);
      auto G = torsion_subgroup(Ed);
      if (json) {
        ordered_json j = curve_report(Ed, nullptr, nullptr, &G);
        j["twist_of"] = {{"curve", E.to_string()}, {"d", L.d.get_str()}};
        out << j.dump(2) << "\n";
      } else {
        P.row("twist of", E.to_string() + " by d=" + L.d.get_str());
        detail::print_curve_text(P, Ed, G);
      }
      return 0;
    }
    if (*growth) {
      auto E = parse_curve(curve_lit);
      TheoremContext C = make_context(E, Integer(d), cfg.primes_for_bounds);
      std::vector<TheoremVerdict> verdicts;
      try {
        verdicts = run_all(C);
      } catch (const Violation& v) {
        err << "Violation: " << v.what() << "\n" << v.evidence().dump(2) << "\n";
        return 1;
      }
      if (json) {
        out << curve_report(E, &C.growth, &verdicts).dump(2) << "\n";
      } else {
        P.row("curve", E.to_string());
        P.row("conductor", C.conductor.get_str());
        detail::print_growth_text(P, C.growth);
        for (const auto& v : verdicts) P.row(to_string(v.theorem_id), detail::verdict_line(v));
      }
      return 0;
    }
    if (*heegner) {
      auto E = parse_curve(curve_lit);
      TheoremContext C = make_context(E, Integer(d));
      auto H = heegner_hypothesis(C.field(), C.conductor);
      TheoremVerdict v = check_heegner_corollary(C);
      if (v.violated()) {
        err << "Violation: Cor_Heegner\n" << to_json(v).dump(2) << "\n";
        return 1;
      }
      Integer tam = 1;
      for (const auto& r : C.local) tam *= r.c_p;
      if (json) {
        ordered_json j;
        j["curve"] = E.to_string();
        j["field"] = C.field().name();
        j["conductor"] = C.conductor.get_str();
        ordered_json split = ordered_json::object();
        for (const auto& [p, s] : H.primes) split[p.get_str()] = to_string(s);
        j["splitting"] = split;
        j["heegner"] = H.holds;
        j["reason"] = H.reason;
        j["u_L"] = C.field().u();
        j["tamagawa_product"] = tam.get_str();
        j["verdict"] = to_json(v);
        out << j.dump(2) << "\n";
      } else {
        P.row("curve", E.to_string());
        P.row("field", C.field().name());
        P.row("conductor", C.conductor.get_str());
        for (const auto& [p, s] : H.primes) P.row("  p=" + p.get_str(), to_string(s));
        P.row("heegner", std::string(H.holds ? "true" : "false") + "  (" + H.reason + ")");
        P.row("u_L", std::to_string(C.field().u()));
        P.row("c(E/Q)", tam.get_str());
        P.row(to_string(v.theorem_id), detail::verdict_line(v));
      }
      return 0;
    }
    if (*verify) {
      auto corpus = load_corpus(corpus_path);
      auto S = run_sweep(corpus, cfg);
      ordered_json j = S.to_json();
      if (!output_path.empty()) {
        std::ofstream f(output_path);
        if (!f) throw CorpusError("cannot write " + output_path);
        f << j.dump(2) << "\n";
      }
      if (json) {
        out << j.dump(2) << "\n";
      } else {
        P.row("curves", std::to_string(S.curves));
        P.row("pairs_checked", std::to_string(S.pairs_checked));
        for (const auto& [name, slot] : S.verdicts_by_theorem.items())
          P.row(name, "hypotheses_hold=" + slot["hypotheses_hold"].dump() + " conclusion_holds=" +
                          slot["conclusion_holds"].dump() + " of " + slot["evaluated"].dump());
        P.row("violations", std::to_string(S.violations.size()));
        P.row("errors", std::to_string(S.errors.size()));
      }
      if (!S.violations.empty()) {
        err << "Violations:\n" << S.violations.dump(2) << "\n";
        return 1;
      }
      if (!S.errors.empty()) {
        err << "Errors:\n" << S.errors.dump(2) << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const Violation& v) {
    err << "Violation: " << v.what() << "\n" << v.evidence().dump(2) << "\n";
    return 1;
  } catch (const Error& e) {
    // ParseError, SingularCurve, TrivialExtension, CorpusError, ...
    err << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace twistlab
