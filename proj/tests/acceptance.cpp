// Acceptance gate. Each criterion prints diagnostic rows followed by exactly
// one verdict line "<name> PASS|FAIL". Exit status 0 iff everything passed.
// All tolerances are pinned here, not configurable.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "dws/apps.hpp"
#include "dws/oracle.hpp"
#include "dws/simnet.hpp"
#include "dws/swr.hpp"

using namespace dws;

namespace {

using ull = unsigned long long;

streams::Stream indexed_stream(const std::vector<double>& weights) {
  streams::Stream s;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    s.items.push_back(WeightedItem{static_cast<ItemId>(i), weights[i], 0,
                                   static_cast<std::uint64_t>(i + 1)});
  }
  return s;
}

std::vector<int> sorted_ids(const std::vector<SampleEntry>& sample) {
  std::vector<int> sel;
  sel.reserve(sample.size());
  for (const auto& e : sample) sel.push_back(static_cast<int>(e.id));
  std::sort(sel.begin(), sel.end());
  return sel;
}

using SelectionCounts = std::map<std::vector<int>, std::uint64_t>;

// Runs the distributed sampler over the fixed six-item validation stream and
// tallies the sampled index sets at each probe.
std::map<std::uint64_t, SelectionCounts> tally_distributed(
    const std::vector<double>& weights, int s, int k,
    const std::vector<std::uint64_t>& probes, std::uint64_t trials,
    std::uint64_t seed_tag) {
  auto params = ProtocolParams::make(s, k);
  std::map<std::uint64_t, SelectionCounts> counts;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SimConfig cfg;
    cfg.seed = derive_seed(seed_tag, trial + 1);
    SworSimulation sim(cfg, params, indexed_stream(weights));
    for (auto t : probes) counts[t][sorted_ids(sim.probe_at(t))] += 1;
  }
  return counts;
}

// Aligns observed selection counts with the enumerated support. Returns
// false if anything outside the support was observed.
bool align_with_support(const oracle::SelectionDist& exact,
                        const SelectionCounts& counts, std::uint64_t trials,
                        std::vector<std::uint64_t>& observed,
                        std::vector<double>& expected) {
  observed.clear();
  expected.clear();
  std::uint64_t seen = 0;
  for (const auto& [sel, p] : exact) {
    auto it = counts.find(sel);
    std::uint64_t c = it == counts.end() ? 0 : it->second;
    observed.push_back(c);
    expected.push_back(p);
    seen += c;
  }
  return seen == trials;
}

bool ledgers_equal(const MessageLedger& x, const MessageLedger& y) {
  return x.early == y.early && x.regular == y.regular &&
         x.saturated_events == y.saturated_events &&
         x.epoch_events == y.epoch_events &&
         x.slot_messages == y.slot_messages &&
         x.swr_round_events == y.swr_round_events && x.per_round == y.per_round;
}

bool queries_equal(const std::vector<SampleEntry>& a,
                   const std::vector<SampleEntry>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].id != b[i].id || a[i].weight != b[i].weight ||
        a[i].key != b[i].key || a[i].seq != b[i].seq) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- A1

bool criterion_a1() {
  const std::vector<double> weights{1, 2, 3, 4, 5, 100};
  const std::vector<std::uint64_t> probes{2, 4, 6};
  const int k = 3, s = 2;
  const std::uint64_t trials = 200000;
  const double alpha = 0.001 / static_cast<double>(probes.size());

  auto counts = tally_distributed(weights, s, k, probes, trials, 0xA1);
  bool all = true;
  for (auto t : probes) {
    auto exact = oracle::exact_swor_distribution(
        std::vector<double>(weights.begin(),
                            weights.begin() + static_cast<long>(t)),
        s);
    std::vector<std::uint64_t> observed;
    std::vector<double> expected;
    if (!align_with_support(exact, counts[t], trials, observed, expected)) {
      std::printf("A1 t=%llu: selection outside the exact support\n", (ull)t);
      all = false;
      continue;
    }
    auto res = oracle::chi_square_gof(observed, expected, alpha);
    std::printf("A1 t=%llu cells=%zu chi2=%.3f dof=%d crit=%.3f %s\n", (ull)t,
                observed.size(), res.statistic, res.dof, res.critical,
                res.pass ? "ok" : "reject");
    all = all && res.pass;
  }
  return all;
}

// ---------------------------------------------------------------- A2

bool criterion_a2() {
  const std::vector<double> weights{1, 2, 3, 4, 5, 100};
  const std::vector<std::uint64_t> probes{2, 4, 6};
  const int k = 3, s = 2;
  const std::uint64_t trials = 200000;
  const double alpha = 0.001 / static_cast<double>(probes.size());

  auto dist_counts = tally_distributed(weights, s, k, probes, trials, 0xA2);

  std::map<std::uint64_t, SelectionCounts> central_counts;
  BitSource central(derive_seed(0xA2C, 1));
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    for (auto t : probes) {
      std::vector<double> prefix(weights.begin(),
                                 weights.begin() + static_cast<long>(t));
      auto sel = oracle::centralized_key_sampler(prefix, s, central);
      std::sort(sel.begin(), sel.end());
      central_counts[t][sel] += 1;
    }
  }

  bool all = true;
  for (auto t : probes) {
    auto exact = oracle::exact_swor_distribution(
        std::vector<double>(weights.begin(),
                            weights.begin() + static_cast<long>(t)),
        s);
    std::vector<std::uint64_t> da, db;
    std::vector<double> unused;
    if (!align_with_support(exact, dist_counts[t], trials, da, unused) ||
        !align_with_support(exact, central_counts[t], trials, db, unused)) {
      std::printf("A2 t=%llu: selection outside the exact support\n", (ull)t);
      all = false;
      continue;
    }
    auto res = oracle::chi_square_homogeneity(da, db, alpha);
    std::printf("A2 t=%llu cells=%zu chi2=%.3f dof=%d crit=%.3f %s\n", (ull)t,
                da.size(), res.statistic, res.dof, res.critical,
                res.pass ? "ok" : "reject");
    all = all && res.pass;
  }
  return all;
}

// ---------------------------------------------------------------- A3

bool criterion_a3() {
  const std::array<int, 3> ks{4, 16, 64};
  const std::array<int, 2> ss{4, 16};
  const std::array<std::uint64_t, 3> ns{10000, 100000, 1000000};
  const int trials = 3;
  const double band_cap = 8.0;

  double min_ratio = 1e300, max_ratio = 0.0;
  bool sublinear_ok = true;
  std::uint64_t cell = 0;
  for (int k : ks) {
    for (int s : ss) {
      for (std::uint64_t n : ns) {
        ++cell;
        double mean = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
          SimConfig cfg;
          cfg.seed = derive_seed(0xA3, cell * 16 + static_cast<std::uint64_t>(trial) + 1);
          SworSimulation sim(cfg, ProtocolParams::make(s, k),
                             streams::gen_unit(n));
          sim.run_all();
          mean += static_cast<double>(sim.ledger().total());
        }
        mean /= trials;
        double bound = k * std::log(static_cast<double>(n) / s) /
                       std::log1p(static_cast<double>(k) / s);
        double ratio = mean / bound;
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
        std::printf("A3 k=%d s=%d n=%llu mean=%.1f bound=%.1f ratio=%.3f\n", k,
                    s, (ull)n, mean, bound, ratio);
        if (k == 16 && s == 16 && n == 1000000) {
          sublinear_ok = mean <= static_cast<double>(n) / 10.0;
          std::printf("A3 sublinear check at n=1e6: mean=%.1f cap=%.1f %s\n",
                      mean, static_cast<double>(n) / 10.0,
                      sublinear_ok ? "ok" : "exceeded");
        }
      }
    }
  }
  double spread = max_ratio / min_ratio;
  std::printf("A3 ratio band [%.3f, %.3f] spread=%.3f cap=%.1f\n", min_ratio,
              max_ratio, spread, band_cap);
  return spread <= band_cap && sublinear_ok;
}

// ---------------------------------------------------------------- A4

bool criterion_a4() {
  const double eps = 0.1, delta = 0.2;
  const int k = 4;
  const int trials = 300;
  const std::uint64_t giants = 2, mids = 100, n = 10102;
  const double giant_w = 1e6, mid_w = 100.0;
  ResidualHHConfig cfg{eps, delta};
  const int s = cfg.sample_size();
  const int cap = cfg.output_cap();
  const std::array<std::uint64_t, 3> probes{n / 4, n / 2, n};

  std::array<int, 3> full_recall{};
  bool cap_ok = true;
  auto params = ProtocolParams::make(s, k);
  for (int trial = 0; trial < trials; ++trial) {
    auto stream = streams::gen_skewed_giants(
        giants, giant_w, mids, mid_w, n,
        derive_seed(0xA4, static_cast<std::uint64_t>(trial) + 1));
    SimConfig sim_cfg;
    sim_cfg.seed = derive_seed(0xA4F, static_cast<std::uint64_t>(trial) + 1);
    SworSimulation sim(sim_cfg, params, stream);

    ResidualVector exact;
    std::size_t fed = 0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      auto sample = sim.probe_at(probes[p]);
      while (fed < probes[p]) {
        exact.push(stream.items[fed].id, stream.items[fed].weight);
        ++fed;
      }
      auto picked = hh_select(sample, cap);
      if (picked.size() > static_cast<std::size_t>(cap)) cap_ok = false;
      auto qualifying = exact.qualifying(eps);
      bool covered = true;
      for (ItemId q : qualifying) {
        bool found = false;
        for (const auto& e : picked) {
          if (e.id == q) { found = true; break; }
        }
        if (!found) { covered = false; break; }
      }
      if (covered) full_recall[p] += 1;
    }
  }

  const int needed = static_cast<int>(std::ceil((1.0 - delta) * trials));
  bool all = cap_ok;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    bool ok = full_recall[p] >= needed;
    std::printf("A4 probe t=%llu full-recall %d/%d (need %d) %s\n",
                (ull)probes[p], full_recall[p], trials, needed,
                ok ? "ok" : "short");
    all = all && ok;
  }
  std::printf("A4 output cap %d %s\n", cap,
              cap_ok ? "never exceeded" : "EXCEEDED");
  return all;
}

// ---------------------------------------------------------------- A5

bool criterion_a5() {
  const double eps = 0.2, delta = 0.2;
  const int k = 4;
  const int trials = 300;
  const std::uint64_t n = 10000;
  L1Config cfg{eps, delta};

  int within = 0;
  for (int trial = 0; trial < trials; ++trial) {
    L1Tracker tracker(cfg, k,
                      derive_seed(0xA5, static_cast<std::uint64_t>(trial) + 1));
    for (std::uint64_t i = 0; i < n; ++i) {
      tracker.add(i, 1.0, static_cast<std::uint32_t>(i % k));
    }
    double est = tracker.estimate();
    if (std::abs(est - static_cast<double>(n)) <=
        eps * static_cast<double>(n)) {
      ++within;
    }
    if ((trial + 1) % 100 == 0) {
      std::printf("A5 trial %d/%d within=%d\n", trial + 1, trials, within);
    }
  }
  const int needed = static_cast<int>(std::ceil((1.0 - delta) * trials));
  bool track_ok = within >= needed;
  std::printf("A5 relative error <= %.2f in %d/%d trials (need %d) %s\n", eps,
              within, trials, needed, track_ok ? "ok" : "short");

  bool tails_ok = true;
  BitSource src(derive_seed(0xA5, 0));
  const std::array<std::pair<int, double>, 3> cases{
      {{500, 0.1}, {500, 0.3}, {1000, 0.2}}};
  for (auto [s, e] : cases) {
    auto tc = oracle::exp_sum_tail_check(s, e, 50000, src);
    std::printf("A5 tail s=%d eps=%.1f rate=%.5f bound=%.5f %s\n", s, e,
                tc.empirical_rate, tc.bound, tc.within_bound ? "ok" : "over");
    tails_ok = tails_ok && tc.within_bound;
  }
  return track_ok && tails_ok;
}

// ---------------------------------------------------------------- A6

bool criterion_a6() {
  const std::vector<double> weights{1, 2, 3};
  const std::uint64_t trials = 200000;
  const double marginal_tol = 0.01;
  bool all = true;

  for (int s : {1, 4}) {
    std::vector<std::uint64_t> heavy(static_cast<std::size_t>(s), 0);
    std::vector<std::vector<std::uint64_t>> pair_heavy(
        static_cast<std::size_t>(s),
        std::vector<std::uint64_t>(static_cast<std::size_t>(s), 0));
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      SimConfig cfg;
      cfg.seed = derive_seed(0xA600 + static_cast<std::uint64_t>(s), trial + 1);
      Simulation<SwrProtocol> sim(cfg, SwrParams::make(s, 2),
                                  indexed_stream(weights));
      sim.run_all();
      auto top = sim.query();
      for (int a = 0; a < s; ++a) {
        if (top[static_cast<std::size_t>(a)].id != 2) continue;
        heavy[static_cast<std::size_t>(a)] += 1;
        for (int b = a + 1; b < s; ++b) {
          if (top[static_cast<std::size_t>(b)].id == 2) {
            pair_heavy[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += 1;
          }
        }
      }
    }
    for (int a = 0; a < s; ++a) {
      double p = static_cast<double>(heavy[static_cast<std::size_t>(a)]) /
                 static_cast<double>(trials);
      bool ok = std::abs(p - 0.5) <= marginal_tol;
      std::printf("A6 s=%d slot=%d P(heaviest)=%.4f %s\n", s, a, p,
                  ok ? "ok" : "off");
      all = all && ok;
    }
    // slot pairs: empirical covariance of the indicators within 3 sigma of 0
    double cov_tol =
        3.0 * std::sqrt(0.1875 / static_cast<double>(trials));
    for (int a = 0; a < s; ++a) {
      for (int b = a + 1; b < s; ++b) {
        double pa = static_cast<double>(heavy[static_cast<std::size_t>(a)]) /
                    static_cast<double>(trials);
        double pb = static_cast<double>(heavy[static_cast<std::size_t>(b)]) /
                    static_cast<double>(trials);
        double pab =
            static_cast<double>(
                pair_heavy[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) /
            static_cast<double>(trials);
        double cov = pab - pa * pb;
        bool ok = std::abs(cov) <= cov_tol;
        if (s > 1) {
          std::printf("A6 s=%d cov(%d,%d)=%.5f tol=%.5f %s\n", s, a, b, cov,
                      cov_tol, ok ? "ok" : "off");
        }
        all = all && ok;
      }
    }
  }
  return all;
}

// ---------------------------------------------------------------- A7

bool criterion_a7() {
  const int pairs = 100000;
  const double mean_bits_cap = 8.0;
  BitSource draw(derive_seed(0xA7, 1));
  std::uint64_t bits_total = 0;
  int mismatched_decisions = 0, mismatched_keys = 0;
  for (int i = 0; i < pairs; ++i) {
    double w = std::exp(uniform_from_prefix(draw.next_word()) * 20.0);
    double thr = std::exp(uniform_from_prefix(draw.next_word()) * 20.0);
    std::uint64_t seed = derive_seed(0xA7F, static_cast<std::uint64_t>(i) + 1);
    BitSource lazy_src(seed), full_src(seed);
    auto d = key_exceeds(w, thr, lazy_src);
    Key full = gen_key(w, full_src);
    if (d.exceeds != (full.value > thr)) ++mismatched_decisions;
    if (d.exceeds) {
      Key ext = extend_key(w, d.state, lazy_src);
      if (ext.value != full.value || ext.raw_t != full.raw_t) {
        ++mismatched_keys;
      }
    }
    bits_total += static_cast<std::uint64_t>(d.state.bits);
  }
  double mean_bits = static_cast<double>(bits_total) / pairs;
  std::printf(
      "A7 pairs=%d decision-mismatches=%d extension-mismatches=%d "
      "mean-bits=%.3f cap=%.1f\n",
      pairs, mismatched_decisions, mismatched_keys, mean_bits, mean_bits_cap);
  return mismatched_decisions == 0 && mismatched_keys == 0 &&
         mean_bits <= mean_bits_cap;
}

// ---------------------------------------------------------------- A8

struct MatrixCell {
  std::string name;
  ProtocolParams params;
  streams::Stream stream;
};

std::vector<MatrixCell> a8_matrix() {
  std::vector<MatrixCell> cells;
  cells.push_back({"validation-six",
                   ProtocolParams::make(2, 3),
                   indexed_stream({1, 2, 3, 4, 5, 100})});
  for (int k : {4, 16, 64}) {
    for (int s : {4, 16}) {
      for (std::uint64_t n : {std::uint64_t{10000}, std::uint64_t{100000},
                              std::uint64_t{1000000}}) {
        cells.push_back({"unit-k" + std::to_string(k) + "-s" +
                             std::to_string(s) + "-n" + std::to_string(n),
                         ProtocolParams::make(s, k), streams::gen_unit(n)});
      }
    }
  }
  return cells;
}

bool criterion_a8() {
  bool all = true;

  // byte-identical transcripts on replay, both variants
  {
    auto replay = [](bool space_opt, std::uint64_t n) {
      auto params = ProtocolParams::make(space_opt ? 2 : 16, space_opt ? 3 : 16);
      params.space_optimized = space_opt;
      SimConfig cfg;
      cfg.seed = 404;
      cfg.record_transcript = true;
      auto stream = space_opt
                        ? indexed_stream({1, 2, 3, 4, 5, 100})
                        : streams::gen_unit(n);
      SworSimulation sim(cfg, params, stream);
      sim.run_all();
      validate_transcript(sim.transcript().bytes());
      return sim.transcript().bytes();
    };
    bool small_ok = replay(true, 0) == replay(true, 0);
    bool big_ok = replay(false, 100000) == replay(false, 100000);
    std::printf("A8 transcript replay identical: six-item=%s unit-1e5=%s\n",
                small_ok ? "yes" : "NO", big_ok ? "yes" : "NO");
    all = all && small_ok && big_ok;
  }

  // trimmed coordinator must be observationally identical across the matrix
  for (auto& cell : a8_matrix()) {
    SimConfig cfg;
    cfg.seed = 808;
    auto full_params = cell.params;
    auto trim_params = cell.params;
    trim_params.space_optimized = true;
    SworSimulation full(cfg, full_params, cell.stream);
    SworSimulation trim(cfg, trim_params, cell.stream);
    full.run_all();
    trim.run_all();
    bool q_ok = queries_equal(full.query(), trim.query());
    bool l_ok = ledgers_equal(full.ledger(), trim.ledger());
    if (!q_ok || !l_ok) {
      std::printf("A8 cell %s: query=%s ledger=%s\n", cell.name.c_str(),
                  q_ok ? "ok" : "DIFFERS", l_ok ? "ok" : "DIFFERS");
    }
    all = all && q_ok && l_ok;
  }
  std::printf("A8 variant equivalence checked over %zu cells\n",
              a8_matrix().size());
  return all;
}

// ---------------------------------------------------------------- A9

bool criterion_a9() {
  const int runs = 1000;
  BitSource rng(derive_seed(0xA9, 1));
  auto pick = [&](std::uint64_t m) { return rng.next_word() % m; };

  int swor_runs = 0, swr_runs = 0;
  for (int run = 0; run < runs; ++run) {
    try {
      if (pick(4) == 0) {
        // with-replacement instance over small integral weights
        ++swr_runs;
        int s = 1 + static_cast<int>(pick(8));
        int k = 1 + static_cast<int>(pick(4));
        std::uint64_t n = pick(80);
        SimConfig cfg;
        cfg.seed = derive_seed(0xA9B, static_cast<std::uint64_t>(run) + 1);
        cfg.delivery = static_cast<int>(pick(3));
        Simulation<SwrProtocol> sim(cfg, SwrParams::make(s, k));
        int last_round = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
          sim.push_next(i, 1.0 + static_cast<double>(pick(20)));
          sim.step();
          int round = sim.coordinator().round();
          if (round < last_round) throw std::logic_error("round regressed");
          last_round = round;
        }
        if (!sim.ledger().consistent()) {
          throw std::logic_error("ledger inconsistent");
        }
        if (n > 0) {
          auto top = sim.query();
          if (top.size() != static_cast<std::size_t>(s)) {
            throw std::logic_error("slot count mismatch");
          }
          for (const auto& e : top) {
            if (!(e.key > 0.0 && e.key < 1.0)) {
              throw std::logic_error("slot minimum out of range");
            }
          }
        }
        continue;
      }

      ++swor_runs;
      int s = 1 + static_cast<int>(pick(8));
      int k = 1 + static_cast<int>(pick(8));
      SimConfig cfg;
      cfg.seed = derive_seed(0xA9C, static_cast<std::uint64_t>(run) + 1);
      cfg.delivery = static_cast<int>(pick(3));
      cfg.record_transcript = (run % 16) == 0;
      auto params = ProtocolParams::make(s, k);
      params.space_optimized = pick(2) == 0;

      streams::Stream stream;
      std::uint64_t n = pick(400);
      switch (pick(5)) {
        case 0: stream = streams::gen_unit(n); break;
        case 1:
          stream = streams::gen_zipf(n, 0.8 + 0.1 * static_cast<double>(pick(12)),
                                     50, rng.next_word());
          break;
        case 2:
          stream = streams::gen_skewed_giants(
              2, 1e5, 5, 50.0, 7 + pick(300), rng.next_word());
          break;
        case 3:
          stream = streams::gen_hh_lower(
              0.1 + 0.1 * static_cast<double>(pick(4)), pick(40));
          break;
        default: {
          int gk = 2 + static_cast<int>(pick(3));
          int eta = 1 + static_cast<int>(pick(gk == 2 ? 7 : 4));
          stream = streams::gen_epoch_lower(gk, eta, rng.next_word());
          k = std::max(k, gk);
          params = ProtocolParams::make(s, k);
          params.space_optimized = pick(2) == 0;
          cfg.partitioner = Partitioner::FileOrder;
          break;
        }
      }
      if (cfg.partitioner != Partitioner::FileOrder) {
        const std::array<Partitioner, 3> ps{
            Partitioner::RoundRobin, Partitioner::SingleSite,
            Partitioner::Random};
        cfg.partitioner = ps[pick(ps.size())];
      }

      SworSimulation sim(cfg, params, stream);
      double last_u = 0.0;
      int last_epoch = 0;
      while (sim.step()) {
        double u = sim.coordinator().u();
        int epoch = sim.coordinator().epoch();
        if (u < last_u) throw std::logic_error("threshold decreased");
        if (epoch < last_epoch) throw std::logic_error("epoch decreased");
        last_u = u;
        last_epoch = epoch;
      }
      if (!sim.ledger().consistent()) {
        throw std::logic_error("ledger inconsistent");
      }
      if (sim.coordinator().sample_size() > static_cast<std::uint64_t>(s)) {
        throw std::logic_error("sample exceeded s");
      }
      auto top = sim.query();
      if (top.size() > static_cast<std::size_t>(s)) {
        throw std::logic_error("query exceeded s");
      }
      for (std::size_t i = 0; i < top.size(); ++i) {
        if (top[i].key <= 0.0) throw std::logic_error("non-positive key");
        if (i > 0 && top[i - 1].key < top[i].key) {
          throw std::logic_error("query unsorted");
        }
      }
      const int sat_threshold = params.saturation_threshold();
      for (int j = 0; j <= params.max_level(); ++j) {
        auto c = sim.coordinator().level_count(j);
        bool saturated = sim.coordinator().level_saturated(j);
        if (saturated && c != static_cast<std::uint64_t>(sat_threshold)) {
          throw std::logic_error("saturated level off its arrival threshold");
        }
        if (!saturated && c >= static_cast<std::uint64_t>(sat_threshold)) {
          throw std::logic_error("open level past its arrival threshold");
        }
      }
      if (cfg.record_transcript) {
        validate_transcript(sim.transcript().bytes());
      }
    } catch (const std::exception& e) {
      std::printf("A9 run %d: %s\n", run, e.what());
      return false;
    }
  }
  std::printf("A9 fuzz runs clean: %d without-replacement, %d with-replacement\n",
              swor_runs, swr_runs);
  return true;
}

struct Criterion {
  const char* name;
  bool (*fn)();
};

constexpr std::array<Criterion, 9> kCriteria{{{"A1", criterion_a1},
                                              {"A2", criterion_a2},
                                              {"A3", criterion_a3},
                                              {"A4", criterion_a4},
                                              {"A5", criterion_a5},
                                              {"A6", criterion_a6},
                                              {"A7", criterion_a7},
                                              {"A8", criterion_a8},
                                              {"A9", criterion_a9}}};

}  // namespace

int main(int argc, char** argv) {
  std::vector<const Criterion*> chosen;
  if (argc < 2 || std::strcmp(argv[1], "all") == 0) {
    for (const auto& c : kCriteria) chosen.push_back(&c);
  } else {
    for (int i = 1; i < argc; ++i) {
      const Criterion* found = nullptr;
      for (const auto& c : kCriteria) {
        if (std::strcmp(argv[i], c.name) == 0) found = &c;
      }
      if (!found) {
        std::fprintf(stderr, "unknown criterion %s (A1..A9 or all)\n", argv[i]);
        return 2;
      }
      chosen.push_back(found);
    }
  }

  bool all_ok = true;
  for (const Criterion* c : chosen) {
    bool ok = false;
    try {
      ok = c->fn();
    } catch (const std::exception& e) {
      std::printf("%s aborted: %s\n", c->name, e.what());
      ok = false;
    }
    std::printf("%s %s\n", c->name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
