// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fail.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "../support/chain.hpp"
#include "../support/oracles.hpp"
#include "motifvar/cluster.hpp"
#include "motifvar/features.hpp"
#include "motifvar/ingest.hpp"
#include "motifvar/motif.hpp"
#include "motifvar/pipeline.hpp"
#include "motifvar/rng.hpp"
#include "motifvar/sax.hpp"
#include "motifvar/synth.hpp"
#include "motifvar/validity.hpp"

#ifndef MOTIFVAR_SCENARIO_DIR
#error "MOTIFVAR_SCENARIO_DIR must be defined"
#endif

using namespace motifvar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const fs::path kScenarios = MOTIFVAR_SCENARIO_DIR;

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

FeatureMatrix matrix_of(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> ids, cols;
  for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back("r" + std::to_string(i));
  for (std::size_t h = 0; h < rows.front().size(); ++h) cols.push_back("c" + std::to_string(h));
  return FeatureMatrix(ids, cols, rows);
}

FeatureMatrix single_column(const FeatureMatrix& m, std::size_t column) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back({m(i, column)});
  return FeatureMatrix(m.ids(), {m.columns()[column]}, rows);
}

std::vector<int> truth_labels(const SynthOutput& out, const std::vector<std::string>& ids) {
  std::map<std::string, std::string> archetype;
  for (const auto& t : out.truth) archetype[t.household_id] = t.archetype;
  std::map<std::string, int> code;
  std::vector<int> labels;
  for (const auto& id : ids) {
    const auto& a = archetype.at(id);
    const auto it = code.emplace(a, static_cast<int>(code.size()) + 1).first;
    labels.push_back(it->second);
  }
  return labels;
}

// 1 -----------------------------------------------------------------------

Outcome energy_conservation() {
  constexpr EpochSeconds kCell = 300;
  int spans = 0;
  double worst = 0.0;
  for (std::uint64_t stream = 0; stream < 100; ++stream) {
    Rng rng(mix_seed(1, stream));
    std::vector<RawReading> raw;
    std::vector<oracle::Reading> o;
    EpochSeconds t = 1'300'000'000 + static_cast<EpochSeconds>(rng.below(kCell));
    const int n = 200 + static_cast<int>(rng.below(300));
    for (int i = 0; i < n; ++i) {
      const double w = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0, 6000);
      raw.push_back({"h", t, w});
      o.push_back({t, w});
      // Mostly sub-gap intervals, with occasional outages longer than 15 min.
      t += rng.uniform() < 0.03 ? 900 + static_cast<EpochSeconds>(rng.below(3600))
                                : 1 + static_cast<EpochSeconds>(rng.below(600));
    }
    const auto s = align_to_grid(raw);
    const EpochSeconds covered_end = o.back().t + kCell;
    std::size_t cell = static_cast<std::size_t>((o.front().t - s.grid_start + kCell - 1) / kCell);
    while (cell < s.size() && s.slot_time(cell) + kCell <= covered_end) {
      if (s.is_gap(cell)) {
        ++cell;
        continue;
      }
      const std::size_t first = cell;
      double grid = 0.0;
      while (cell < s.size() && !s.is_gap(cell) && s.slot_time(cell) + kCell <= covered_end)
        grid += s.values[cell++] * static_cast<double>(kCell);
      const double truth = oracle::step_energy(o, s.slot_time(first), s.slot_time(cell), kCell);
      const double err = truth == 0.0 ? std::abs(grid) : std::abs(grid - truth) / truth;
      worst = std::max(worst, err);
      ++spans;
    }
  }
  return {worst < 1e-9 && spans > 100, std::to_string(spans) + " gap-free spans, worst relative error " + sci(worst)};
}

// 2 -----------------------------------------------------------------------

Outcome sax_oracle() {
  Rng rng(2);
  int agree = 0;
  for (int t = 0; t < 1000; ++t) {
    const int alphabet = 2 + static_cast<int>(rng.below(9));
    std::vector<double> x(6);
    const double scale = rng.uniform() < 0.25 ? 30.0 : 1500.0;
    for (auto& v : x) v = rng.uniform(-scale, scale);
    const auto w = symbolize_window(x, breakpoints(alphabet), 100.0);
    const auto expected = oracle::discretize(x, alphabet, 100.0);
    if (w.has_value() == expected.has_value() && (!w || w->str() == *expected)) ++agree;
  }
  return {agree == 1000, std::to_string(agree) + "/1000 windows agree"};
}

// 3 -----------------------------------------------------------------------

Outcome window_count_check() {
  std::vector<double> r(49);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (i % 2 ? 2000.0 : 150.0) + 10.0 * static_cast<double>(i);
  const PeakDayWindow day{"h", Date{std::chrono::year{2011}, std::chrono::month{3}, std::chrono::day{7}}, r, true};
  const auto deltas = difference(day);
  SaxParams params;
  const auto plain = window_words(*deltas, params);
  params.include_final_window = true;
  const auto with_final = window_words(*deltas, params);
  return {plain.size() == 42 && with_final.size() == 43 && window_count(48, SaxParams{}) == 42,
          std::to_string(plain.size()) + " windows, " + std::to_string(with_final.size()) + " with final window"};
}

// 4 -----------------------------------------------------------------------

Outcome noise_floor() {
  Rng rng(4);
  std::size_t occurrences = 0;
  int days = 0;
  for (; days < 500; ++days) {
    // Every delta in [-49, 49] keeps each 6-delta range below 100 W.
    std::vector<double> r(49);
    r[0] = rng.uniform(100, 3000);
    for (std::size_t i = 1; i < r.size(); ++i) r[i] = std::max(0.0, r[i - 1] + rng.uniform(-49, 49));
    const PeakDayWindow day{"h", Date{std::chrono::year{2011}, std::chrono::month{3}, std::chrono::day{7}}, r, true};
    SaxParams params;
    params.include_final_window = days % 2 == 1;
    occurrences += window_words(*difference(day), params).size();
  }
  return {occurrences == 0, std::to_string(days) + " quiet days, " + std::to_string(occurrences) + " occurrences"};
}

// 5 -----------------------------------------------------------------------

Outcome validity_hand_cases() {
  bool ok = true;
  const auto close = [&](double got, double want) { ok = ok && std::abs(got - want) <= 1e-9; };
  const std::vector<double> a{1, 1}, b{3, 3};
  close(record_distance(a, b), 2.0);
  close(within_set_distance(std::vector<Record>{{0.0}, {2.0}}), std::sqrt(2.0));

  Partition p;
  p.ids = {"x", "y", "z"};
  p.labels = {1, 1, 2};
  p.k = 2;
  close(mia(p, FeatureMatrix(p.ids, {"v"}, {{0.0}, {2.0}, {10.0}})), std::sqrt(0.5));

  Partition q;
  q.ids = {"x", "y"};
  q.labels = {1, 2};
  q.k = 2;
  const auto c = cdi(q, FeatureMatrix(q.ids, {"v"}, {{0.0}, {2.0}}));
  ok = ok && c.has_value();
  if (c) close(*c, 0.0);
  close(corrected_rand(std::vector<int>{1, 1, 2, 2}, std::vector<int>{1, 2, 1, 2}), -0.5);

  std::size_t pairs = 0;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const auto all = oracle::all_partitions(n);
    for (const auto& x : all)
      for (const auto& y : all) {
        worst = std::max(worst, std::abs(corrected_rand(x, y) - oracle::pair_count_ari(x, y)));
        ++pairs;
      }
  }
  return {ok && worst <= 1e-12, "hand cases " + std::string(ok ? "match" : "differ") + ", " + std::to_string(pairs) +
                                    " partition pairs, worst ARI difference " + sci(worst)};
}

// 6 -----------------------------------------------------------------------

Outcome optimizer_invariants() {
  int violations = 0;
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto n = 30 + rng.below(50);
    const auto dims = 2 + rng.below(8);
    std::vector<std::vector<double>> rows(n, std::vector<double>(dims));
    for (auto& r : rows)
      for (auto& v : r) v = rng.uniform();
    const auto m = matrix_of(rows);
    const auto seed = rng.next_u64();

    const auto km = kmeans(m, 8, seed);
    for (std::size_t i = 1; i < km.trace.size(); ++i)
      if (km.trace[i] > km.trace[i - 1]) ++violations;

    const auto fz = fuzzy_cmeans(m, 8, seed);
    for (double e : fz.trace)
      if (e > 1e-9) ++violations;

    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = oracle::record_distance(rows[i], rows[j]);
    const auto pm = pam(DissimilarityMatrix(m.ids(), d), 8, seed);
    for (std::size_t i = 1; i < pm.trace.size(); ++i)
      if (pm.trace[i] > pm.trace[i - 1]) ++violations;

    const auto merges = ward_merges(m);
    for (std::size_t i = 1; i < merges.size(); ++i)
      if (merges[i].height < merges[i - 1].height) ++violations;
  }
  return {violations == 0, "50 instances, " + std::to_string(violations) + " violations"};
}

// 7 -----------------------------------------------------------------------

Outcome ari_calibration() {
  double total = 0.0;
  bool identical = true;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(mix_seed(7, s));
    std::vector<int> x(204), y(204);
    for (auto& v : x) v = 1 + static_cast<int>(rng.below(8));
    for (auto& v : y) v = 1 + static_cast<int>(rng.below(8));
    total += std::abs(corrected_rand(x, y));
    identical = identical && corrected_rand(x, x) == 1.0;
  }
  const double mean = total / 100.0;
  return {mean < 0.05 && identical, "mean |ARI| " + fmt(mean) + ", identical pairs " + (identical ? "1" : "not 1")};
}

// 8 -----------------------------------------------------------------------

Outcome archetype_recovery() {
  const auto scenario = read_scenario_file(kScenarios / "three_archetypes.ini");
  const auto out = generate(scenario);
  const auto windows = testing_chain::retained_windows(out.readings);
  const auto raw = feature_matrix(windows, FeatureMode::motif, SaxParams{});
  const auto p = kmeans(minmax_normalize(raw), 3, 1);
  const double ari = corrected_rand(p.labels, truth_labels(out, raw.ids()));
  return {ari >= 0.8, std::to_string(raw.rows()) + " households, ARI " + fmt(ari)};
}

// 9 -----------------------------------------------------------------------

double suite_consistency(const WindowsByHousehold& windows, FeatureMode mode, std::uint64_t seed) {
  const auto m = minmax_normalize(feature_matrix(windows, mode, SaxParams{}));
  const auto result = run_suite(m, 8, seed);
  if (result.partitions.size() < 2) return -1.0;
  return consistency_report(result.partitions, m).mean_offdiagonal_rand;
}

Outcome directional_consistency() {
  auto scenario = read_scenario_file(kScenarios / "three_archetypes.ini");
  int wins = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    scenario.seed = seed;
    const auto windows = testing_chain::retained_windows(generate(scenario).readings);
    const double motif = suite_consistency(windows, FeatureMode::motif, seed);
    const double profile = suite_consistency(windows, FeatureMode::profile, seed);
    if (motif - profile >= 0.02) ++wins;
    detail += (seed > 1 ? "; " : "") + std::string("seed ") + std::to_string(seed) + " motif " + fmt(motif, 3) +
              " profile " + fmt(profile, 3);
  }
  return {wins >= 4, std::to_string(wins) + "/5 seeds (" + detail + ")"};
}

// 10 ----------------------------------------------------------------------

Outcome nonmotif_independence() {
  const auto scenario = read_scenario_file(kScenarios / "independent_variability.ini");
  const auto windows = testing_chain::retained_windows(generate(scenario).readings);
  const auto raw = feature_matrix(windows, FeatureMode::nonmotif, SaxParams{});
  const auto by_timing = kmeans(minmax_normalize(single_column(raw, 0)), 8, 1);
  const auto by_total = kmeans(minmax_normalize(single_column(raw, 1)), 8, 1);
  const double ari = corrected_rand(by_timing.labels, by_total.labels);
  return {ari < 0.15, std::to_string(raw.rows()) + " households, ARI " + fmt(ari)};
}

// 11 ----------------------------------------------------------------------

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name != artifacts::features && name != artifacts::validity && name != artifacts::table1 &&
        name != artifacts::table2 && name.rfind("partition_", 0) != 0)
      continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[name] = s.str();
  }
  return files;
}

Outcome determinism() {
  const fs::path work = fs::temp_directory_path() / "motifvar-acceptance-determinism";
  fs::remove_all(work);
  fs::create_directories(work);
  RunConfig c;
  c.scenario = kScenarios / "three_archetypes.ini";
  c.out_dir = work / "out";
  c.threads = 2;
  std::ofstream(work / "manifest.json") << to_json(c).dump(2);

  std::vector<std::map<std::string, std::string>> runs;
  for (int i = 0; i < 2; ++i) {
    fs::remove_all(c.out_dir);
    run_pipeline(read_manifest(work / "manifest.json"));
    runs.push_back(snapshot(c.out_dir));
  }
  fs::remove_all(work);
  const bool same = runs[0] == runs[1] && runs[0].size() == 9;
  return {same, std::to_string(runs[0].size()) + " artifacts compared, " + (same ? "identical" : "different")};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> check;
    double limit_seconds = 0.0;  // 0: no limit
  };
  const std::vector<Criterion> criteria{
      {"energy conservation", energy_conservation, 10.0},
      {"SAX oracle equivalence", sax_oracle, 5.0},
      {"window count", window_count_check},
      {"noise floor", noise_floor},
      {"validity hand cases", validity_hand_cases},
      {"optimizer invariants", optimizer_invariants},
      {"ARI calibration", ari_calibration},
      {"archetype recovery", archetype_recovery, 120.0},
      {"directional consistency", directional_consistency, 900.0},
      {"non-motif independence", nonmotif_independence},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit_seconds > 0.0 && secs > criteria[i].limit_seconds) {
      o.pass = false;
      o.detail += ", over the " + fmt(criteria[i].limit_seconds, 0) + "s limit";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s: %s [%s] (%.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
