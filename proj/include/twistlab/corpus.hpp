#pragma once

// Curve corpora (CSV: label,a1,a2,a3,a4,a6) and the theorem sweep over
// (curve, d) pairs.

#include <twistlab/quadtorsion.hpp>
#include <twistlab/report.hpp>
#include <twistlab/theorems.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace twistlab {

TWISTLAB_DEFINE_ERROR(CorpusError);

struct CorpusEntry {
  std::string label;
  WeierstrassCurve curve;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

/// Parses a corpus. An empty input (or a header alone) is an empty corpus.
inline std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  bool header = false;
  std::set<std::string> labels;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cols = detail::split_csv_line(t);
    if (!header) {
      const std::vector<std::string> want{"label", "a1", "a2", "a3", "a4", "a6"};
      if (cols != want) throw CorpusError("corpus header must be label,a1,a2,a3,a4,a6");
      header = true;
      continue;
    }
    std::string where = "corpus line " + std::to_string(lineno);
    if (cols.size() != 6) throw CorpusError(where + ": expected 6 columns, got " + std::to_string(cols.size()));
    if (cols[0].empty()) throw CorpusError(where + ": empty label");
    if (!labels.insert(cols[0]).second) throw CorpusError(where + ": duplicate label " + cols[0]);
    std::vector<Rational> a;
    for (std::size_t i = 1; i < 6; ++i) {
      auto v = parse_rational(cols[i]);
      if (!v) throw CorpusError(where + ": bad coefficient '" + cols[i] + "'");
      a.push_back(*v);
    }
    WeierstrassCurve E{a[0], a[1], a[2], a[3], a[4]};
    try {
      invariants(E);
    } catch (const SingularCurve&) {
      throw CorpusError(where + ": singular curve " + E.to_string());
    }
    out.push_back({cols[0], E});
  }
  return out;
}

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus " + path);
  return parse_corpus(in);
}

struct SweepConfig {
  long d_min = -20;
  long d_max = 20;
  bool ell_oracle = false;
  std::size_t primes_for_bounds = 8;
  unsigned parallelism = 1;
};

/// Squarefree d in [d_min, d_max] other than 0 and 1.
inline std::vector<long> sweep_ds(const SweepConfig& cfg) {
  if (cfg.d_min > cfg.d_max) throw std::invalid_argument("empty d range");
  std::vector<long> out;
  for (long d = cfg.d_min; d <= cfg.d_max; ++d) {
    if (d == 0 || d == 1) continue;
    if (is_squarefree(Integer(d))) out.push_back(d);
  }
  return out;
}

struct PairResult {
  std::string label;
  long d = 0;
  std::vector<TheoremVerdict> verdicts;
  std::optional<ordered_json> violation;
  std::optional<std::string> error;
};

/// Runs every checker (and optionally the ell-torsion oracle) on one pair.
/// Never throws; failures are captured in the result.
inline PairResult sweep_pair(const CorpusEntry& e, long d, const SweepConfig& cfg) {
  PairResult r;
  r.label = e.label;
  r.d = d;
  try {
    TheoremContext C = make_context(e.curve, Integer(d), cfg.primes_for_bounds);
    r.verdicts = run_all(C);
    if (cfg.ell_oracle) {
      for (long ell : {3L, 5L, 7L}) {
        auto direct = direct_ell_torsion_over_L(e.curve, Integer(d), ell).structure();
        auto decomposed = C.growth.odd_L_torsion.ell_part(ell);
        if (direct != decomposed) {
          ordered_json ev;
          ev["curve"] = e.curve.to_string();
          ev["d"] = d;
          ev["ell"] = ell;
          ev["direct"] = direct.to_string();
          ev["decomposition"] = decomposed.to_string();
          throw Violation("ell-torsion oracle disagrees with the twist decomposition", ev);
        }
      }
    }
  } catch (const Violation& v) {
    ordered_json j;
    j["label"] = e.label;
    j["d"] = d;
    j["message"] = v.what();
    j["evidence"] = v.evidence();
    r.violation = j;
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  return r;
}

struct SweepSummary {
  std::size_t curves = 0;
  std::size_t pairs_checked = 0;
  ordered_json verdicts_by_theorem = ordered_json::object();
  ordered_json violations = ordered_json::array();
  ordered_json errors = ordered_json::array();

  ordered_json to_json() const {
    ordered_json j;
    j["curves"] = curves;
    j["pairs_checked"] = pairs_checked;
    j["verdicts_by_theorem"] = verdicts_by_theorem;
    j["violations"] = violations;
    j["errors"] = errors;
    return j;
  }
};

/// The sweep over corpus x d-range. Pairs run on `parallelism` threads; the
/// result is merged in (label, d) order so it does not depend on threading.
inline SweepSummary run_sweep(const std::vector<CorpusEntry>& corpus, const SweepConfig& cfg) {
  if (cfg.parallelism == 0) throw std::invalid_argument("parallelism must be positive");
  auto ds = sweep_ds(cfg);
  std::vector<const CorpusEntry*> sorted;
  for (const auto& e : corpus) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->label < b->label; });
  std::vector<std::pair<const CorpusEntry*, long>> jobs;
  for (auto* e : sorted)
    for (long d : ds) jobs.emplace_back(e, d);

  std::vector<PairResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++)
      results[i] = sweep_pair(*jobs[i].first, jobs[i].second, cfg);
  };
  unsigned n = std::min<std::size_t>(cfg.parallelism, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepSummary S;
  S.curves = corpus.size();
  S.pairs_checked = jobs.size();
  for (TheoremId id : {TheoremId::TwistNoLargeTorsion, TheoremId::RamifiedPrimesBad, TheoremId::TorsionGrowthPowerOf2,
                       TheoremId::LocalTwist, TheoremId::Heegner})
    S.verdicts_by_theorem[to_string(id)] = {{"evaluated", 0}, {"hypotheses_hold", 0}, {"conclusion_holds", 0}};
  for (const auto& r : results) {
    for (const auto& v : r.verdicts) {
      auto& slot = S.verdicts_by_theorem[to_string(v.theorem_id)];
      slot["evaluated"] = slot["evaluated"].get<long>() + 1;
      if (v.hypotheses_hold) slot["hypotheses_hold"] = slot["hypotheses_hold"].get<long>() + 1;
      if (v.conclusion_holds == true) slot["conclusion_holds"] = slot["conclusion_holds"].get<long>() + 1;
    }
    if (r.violation) S.violations.push_back(*r.violation);
    if (r.error) S.errors.push_back({{"label", r.label}, {"d", r.d}, {"message", *r.error}});
  }
  return S;
}

}  // namespace twistlab
