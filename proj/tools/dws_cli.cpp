#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dws/apps.hpp"
#include "dws/oracle.hpp"
#include "dws/simnet.hpp"
#include "dws/streams.hpp"
#include "dws/swr.hpp"

// Experiment harness. Exit codes: 0 success, 1 validation failed,
// 2 usage/config error, 3 protocol violation, 4 IO error.

namespace {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_d(double v) {
  std::string s;
  dws::detail::append_double(s, v);
  return s;
}

std::string fmt_u(std::uint64_t v) {
  std::string s;
  dws::detail::append_u64(s, v);
  return s;
}

// Buffered output file opened with the mandatory config header line.
class OutFile {
 public:
  OutFile(std::string path, const std::string& config)
      : path_(std::move(path)) {
    buf_ = "# config: " + config + "\n";
  }
  void line(const std::string& l) {
    buf_ += l;
    buf_ += '\n';
  }
  void raw(const std::string& bytes) { buf_ += bytes; }
  void close() {
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open " + path_ + " for writing");
    f.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!f) throw io_error("write failed: " + path_);
  }

 private:
  std::string path_;
  std::string buf_;
};

dws::Partitioner parse_partitioner(const std::string& name) {
  if (name == "round-robin") return dws::Partitioner::RoundRobin;
  if (name == "single-site") return dws::Partitioner::SingleSite;
  if (name == "random") return dws::Partitioner::Random;
  if (name == "adversarial-epoch") return dws::Partitioner::AdversarialEpoch;
  if (name == "file-order") return dws::Partitioner::FileOrder;
  throw std::domain_error("unknown partitioner: " + name);
}

dws::streams::StreamKind parse_kind(const std::string& name) {
  using dws::streams::StreamKind;
  if (name == "unit") return StreamKind::Unit;
  if (name == "zipf") return StreamKind::Zipf;
  if (name == "skewed-giants") return StreamKind::SkewedGiants;
  if (name == "hh-lower") return StreamKind::HhLower;
  if (name == "epoch-lower") return StreamKind::EpochLower;
  if (name == "file") return StreamKind::File;
  throw std::domain_error("unknown stream kind: " + name);
}

// Stream construction flags shared by simulate and gen-stream.
struct StreamFlags {
  std::string kind = "unit";
  std::uint64_t n = 1000;
  double alpha = 1.2;
  std::uint64_t universe = 10000;
  std::uint64_t giants = 0;
  double giant_weight = 1.0;
  std::uint64_t mids = 0;
  double mid_weight = 1.0;
  double eps = 0.1;
  std::uint64_t count = 0;
  int lb_k = 2;
  int eta = 1;
  std::string file;

  void attach(CLI::App* cmd, bool own_k) {
    cmd->add_option("--kind", kind,
                    "unit|zipf|skewed-giants|hh-lower|epoch-lower|file");
    cmd->add_option("--n", n, "stream length");
    cmd->add_option("--alpha", alpha, "zipf exponent");
    cmd->add_option("--universe", universe, "zipf id universe");
    cmd->add_option("--giants", giants, "skewed-giants heavy item count");
    cmd->add_option("--giant-weight", giant_weight,
                    "skewed-giants heavy item weight");
    cmd->add_option("--mids", mids, "skewed-giants mid item count");
    cmd->add_option("--mid-weight", mid_weight,
                    "skewed-giants mid item weight");
    cmd->add_option("--eps", eps, "hh-lower growth rate");
    cmd->add_option("--count", count, "hh-lower items beyond the first");
    cmd->add_option(own_k ? "--k" : "--lb-k", lb_k,
                    "epoch-lower site count");
    cmd->add_option("--eta", eta, "epoch-lower epoch count");
    cmd->add_option("--stream", file, "read the stream from this file");
  }

  dws::streams::StreamSpec spec(std::uint64_t seed) const {
    dws::streams::StreamSpec sp;
    sp.kind = file.empty() ? parse_kind(kind) : dws::streams::StreamKind::File;
    sp.n = n;
    sp.zipf_alpha = alpha;
    sp.zipf_universe = universe;
    sp.giants = giants;
    sp.giant_weight = giant_weight;
    sp.mids = mids;
    sp.mid_weight = mid_weight;
    sp.eps = eps;
    sp.count = count;
    sp.lb_k = lb_k;
    sp.lb_eta = eta;
    sp.seed = seed;
    sp.path = file;
    return sp;
  }

  std::string describe(std::uint64_t seed) const {
    return spec(seed).describe();
  }
};

constexpr char kLedgerHeader[] =
    "k,s,r,W,n,early,regular,saturated_bcast,epoch_bcast,total";

// ---- simulate ----

struct SimulateArgs {
  int k = 4;
  int s = 4;
  std::uint64_t seed = 1;
  int delivery = 1;
  std::string partitioner = "round-robin";
  bool space_optimized = false;
  StreamFlags stream;
  std::vector<std::uint64_t> probes;
  std::string transcript_path;
  std::string ledger_path;
  std::string samples_path;
};

int run_simulate(const SimulateArgs& a) {
  auto stream = dws::streams::generate(a.stream.spec(a.seed));

  dws::SimConfig cfg;
  cfg.seed = a.seed;
  cfg.delivery = a.delivery;
  cfg.partitioner = parse_partitioner(a.partitioner);
  cfg.record_transcript = !a.transcript_path.empty();

  auto params = dws::ProtocolParams::make(a.s, a.k);
  params.space_optimized = a.space_optimized;

  std::string config =
      "simulate k=" + fmt_u(static_cast<std::uint64_t>(a.k)) +
      " s=" + fmt_u(static_cast<std::uint64_t>(a.s)) +
      " r=" + fmt_u(static_cast<std::uint64_t>(params.r)) +
      " delivery=" + fmt_u(static_cast<std::uint64_t>(a.delivery)) +
      " partitioner=" + a.partitioner +
      " variant=" + (a.space_optimized ? "space-optimized" : "full") +
      " stream=" + a.stream.describe(a.seed) + " seed=" + fmt_u(a.seed);

  dws::SworSimulation sim(cfg, params, std::move(stream));

  auto probes = a.probes;
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  std::string samples_csv = "t,rank,id,weight,key\n";
  for (std::uint64_t t : probes) {
    auto sample = sim.probe_at(t);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      samples_csv += fmt_u(t) + ',' + fmt_u(i + 1) + ',' +
                     fmt_u(sample[i].id) + ',' + fmt_d(sample[i].weight) +
                     ',' + fmt_d(sample[i].key) + '\n';
    }
  }
  sim.run_all();

  if (!a.ledger_path.empty()) {
    OutFile out(a.ledger_path, config);
    out.line(kLedgerHeader);
    out.line(sim.ledger_csv_row());
    out.close();
  }
  if (!a.transcript_path.empty()) {
    OutFile out(a.transcript_path, config);
    out.raw(sim.transcript().bytes());
    out.close();
  }
  if (!a.samples_path.empty()) {
    OutFile out(a.samples_path, config);
    out.raw(samples_csv);
    out.close();
  }

  std::cout << "items=" << sim.items_done() << " rounds=" << sim.round()
            << " messages=" << sim.ledger().total()
            << " sample=" << sim.query().size() << "\n";
  return 0;
}

// ---- gen-stream ----

int run_gen_stream(const StreamFlags& sf, std::uint64_t seed,
                   const std::string& out_path) {
  auto stream = dws::streams::generate(sf.spec(seed));
  std::ostringstream body;
  dws::streams::write_csv(stream, body);
  OutFile out(out_path, "gen-stream " + sf.describe(seed));
  out.raw(body.str());
  out.close();
  std::cout << "items=" << stream.items.size() << " file=" << out_path
            << "\n";
  return 0;
}

// ---- validate-swor ----

// Runs the fixed validation stream (weights 1,2,3,4,5,100 over k=3 sites,
// s=2) many times and chi-square tests the probed samples against the
// exact selection distribution.
int run_validate_swor(std::uint64_t trials, std::uint64_t seed, double alpha,
                      const std::string& out_path) {
  const std::vector<double> weights = {1, 2, 3, 4, 5, 100};
  const std::vector<std::uint64_t> probes = {2, 4, 6};
  const int k = 3, s = 2;

  std::map<std::uint64_t, std::map<std::vector<int>, std::uint64_t>> counts;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    dws::SimConfig cfg;
    cfg.seed = dws::derive_seed(seed, trial + 1);
    dws::SworSimulation sim(cfg, dws::ProtocolParams::make(s, k));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      sim.push_next(i, weights[i]);
    }
    for (std::uint64_t t : probes) {
      auto sample = sim.probe_at(t);
      std::vector<int> sel;
      for (const auto& e : sample) sel.push_back(static_cast<int>(e.id));
      std::sort(sel.begin(), sel.end());
      counts[t][sel] += 1;
    }
  }

  double bonferroni = alpha / static_cast<double>(probes.size());
  bool all_pass = true;
  std::string csv = "t,support,statistic,dof,critical,pass\n";
  for (std::uint64_t t : probes) {
    std::vector<double> prefix(weights.begin(),
                               weights.begin() + static_cast<long>(t));
    auto exact = dws::oracle::exact_swor_distribution(
        prefix, std::min<std::size_t>(s, prefix.size()));
    std::vector<std::uint64_t> observed;
    std::vector<double> expected;
    for (const auto& [sel, p] : exact) {
      auto it = counts[t].find(sel);
      observed.push_back(it == counts[t].end() ? 0 : it->second);
      expected.push_back(p);
    }
    auto res = dws::oracle::chi_square_gof(observed, expected, bonferroni);
    all_pass = all_pass && res.pass;
    csv += fmt_u(t) + ',' + fmt_u(exact.size()) + ',' +
           fmt_d(res.statistic) + ',' + fmt_u(static_cast<std::uint64_t>(res.dof)) +
           ',' + fmt_d(res.critical) + ',' + (res.pass ? "1" : "0") + '\n';
    std::cout << "t=" << t << " chi2=" << fmt_d(res.statistic)
              << " critical=" << fmt_d(res.critical)
              << (res.pass ? " pass" : " FAIL") << "\n";
  }
  if (!out_path.empty()) {
    OutFile out(out_path, "validate-swor trials=" + fmt_u(trials) +
                              " alpha=" + fmt_d(alpha) +
                              " seed=" + fmt_u(seed));
    out.raw(csv);
    out.close();
  }
  std::cout << (all_pass ? "PASS" : "FAIL") << "\n";
  return all_pass ? 0 : 1;
}

// ---- validate-swr ----

int run_validate_swr(const std::vector<double>& weights, int s,
                     std::uint64_t trials, std::uint64_t seed, double alpha,
                     const std::string& out_path) {
  if (weights.empty()) throw std::domain_error("validate-swr: no weights");
  double total = 0;
  for (double w : weights) total += w;

  dws::SwrParams params = dws::SwrParams::make(s, 1);
  std::vector<std::map<dws::ItemId, std::uint64_t>> slot_counts(
      static_cast<std::size_t>(s));
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    dws::SimConfig cfg;
    cfg.seed = dws::derive_seed(seed, trial + 1);
    dws::Simulation<dws::SwrProtocol> sim(cfg, params);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      sim.push_next(i, weights[i]);
    }
    sim.run_all();
    auto sample = sim.query();
    for (std::size_t slot = 0; slot < sample.size(); ++slot) {
      slot_counts[slot][sample[slot].id] += 1;
    }
  }

  double bonferroni = alpha / static_cast<double>(s);
  bool all_pass = true;
  std::string csv = "slot,id,count,freq,expected\n";
  for (int slot = 0; slot < s; ++slot) {
    std::vector<std::uint64_t> observed;
    std::vector<double> expected;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      auto it = slot_counts[static_cast<std::size_t>(slot)].find(i);
      std::uint64_t c = it == slot_counts[static_cast<std::size_t>(slot)].end()
                            ? 0
                            : it->second;
      observed.push_back(c);
      expected.push_back(weights[i] / total);
      csv += fmt_u(static_cast<std::uint64_t>(slot)) + ',' + fmt_u(i) + ',' +
             fmt_u(c) + ',' +
             fmt_d(static_cast<double>(c) / static_cast<double>(trials)) +
             ',' + fmt_d(weights[i] / total) + '\n';
    }
    auto res = dws::oracle::chi_square_gof(observed, expected, bonferroni);
    all_pass = all_pass && res.pass;
    std::cout << "slot=" << slot << " chi2=" << fmt_d(res.statistic)
              << (res.pass ? " pass" : " FAIL") << "\n";
  }
  if (!out_path.empty()) {
    std::string ws;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (i) ws += '+';
      ws += fmt_d(weights[i]);
    }
    OutFile out(out_path, "validate-swr weights=" + ws +
                              " s=" + fmt_u(static_cast<std::uint64_t>(s)) +
                              " trials=" + fmt_u(trials) +
                              " alpha=" + fmt_d(alpha) +
                              " seed=" + fmt_u(seed));
    out.raw(csv);
    out.close();
  }
  std::cout << (all_pass ? "PASS" : "FAIL") << "\n";
  return all_pass ? 0 : 1;
}

// ---- track-hh ----

struct TrackHHArgs {
  double eps = 0.1;
  double delta = 0.2;
  int k = 4;
  std::uint64_t trials = 50;
  std::uint64_t seed = 1;
  std::uint64_t giants = 2;
  double giant_weight = 1e6;
  std::uint64_t mids = 100;
  double mid_weight = 100;
  std::uint64_t units = 10000;
  std::vector<std::uint64_t> probes;
  std::string out_path;
};

int run_track_hh(const TrackHHArgs& a) {
  dws::ResidualHHConfig cfg{a.eps, a.delta};
  cfg.validate();
  std::uint64_t n = a.giants + a.mids + a.units;
  auto probes = a.probes;
  if (probes.empty()) probes = {n / 4, n / 2, n};
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  for (std::uint64_t t : probes) {
    if (t < 1 || t > n) throw std::domain_error("track-hh: probe out of range");
  }

  std::string csv = "trial,t,qualifying,recovered,recall\n";
  std::map<std::uint64_t, std::uint64_t> full_recall;
  for (std::uint64_t trial = 0; trial < a.trials; ++trial) {
    std::uint64_t trial_seed = dws::derive_seed(a.seed, trial + 1);
    auto stream = dws::streams::gen_skewed_giants(
        a.giants, a.giant_weight, a.mids, a.mid_weight, n, trial_seed);

    dws::SimConfig sim_cfg;
    sim_cfg.seed = trial_seed;
    dws::SworSimulation sim(sim_cfg,
                            dws::ProtocolParams::make(cfg.sample_size(), a.k));
    dws::ResidualVector exact;
    std::size_t fed = 0;
    for (std::uint64_t t : probes) {
      while (fed < t) {
        const auto& it = stream.items[fed];
        sim.push_next(it.id, it.weight);
        sim.step();
        exact.push(it.id, it.weight);
        ++fed;
      }
      auto out = dws::hh_select(sim.query(), cfg.output_cap());
      if (out.size() > static_cast<std::size_t>(cfg.output_cap())) {
        throw std::logic_error("track-hh: output exceeded its cap");
      }
      auto qualifying = exact.qualifying(a.eps);
      std::uint64_t recovered = 0;
      for (dws::ItemId q : qualifying) {
        for (const auto& e : out) {
          if (e.id == q) {
            ++recovered;
            break;
          }
        }
      }
      double recall = qualifying.empty()
                          ? 1.0
                          : static_cast<double>(recovered) /
                                static_cast<double>(qualifying.size());
      if (recovered == qualifying.size()) full_recall[t] += 1;
      csv += fmt_u(trial) + ',' + fmt_u(t) + ',' + fmt_u(qualifying.size()) +
             ',' + fmt_u(recovered) + ',' + fmt_d(recall) + '\n';
    }
  }

  bool pass = true;
  for (std::uint64_t t : probes) {
    double frac = static_cast<double>(full_recall[t]) /
                  static_cast<double>(a.trials);
    bool ok = frac >= 1.0 - a.delta;
    pass = pass && ok;
    std::cout << "t=" << t << " full-recall=" << fmt_d(frac)
              << (ok ? " pass" : " FAIL") << "\n";
  }
  if (!a.out_path.empty()) {
    OutFile out(a.out_path,
                "track-hh eps=" + fmt_d(a.eps) + " delta=" + fmt_d(a.delta) +
                    " s=" + fmt_u(static_cast<std::uint64_t>(cfg.sample_size())) +
                    " cap=" + fmt_u(static_cast<std::uint64_t>(cfg.output_cap())) +
                    " k=" + fmt_u(static_cast<std::uint64_t>(a.k)) +
                    " giants=" + fmt_u(a.giants) + "x" + fmt_d(a.giant_weight) +
                    " mids=" + fmt_u(a.mids) + "x" + fmt_d(a.mid_weight) +
                    " units=" + fmt_u(a.units) + " trials=" + fmt_u(a.trials) +
                    " seed=" + fmt_u(a.seed));
    out.raw(csv);
    out.close();
  }
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// ---- track-l1 ----

int run_track_l1(double eps, double delta, int k, std::uint64_t n,
                 std::uint64_t trials, std::uint64_t seed,
                 const std::string& out_path) {
  dws::L1Config cfg{eps, delta};
  cfg.validate();
  if (cfg.dup_factor() > 10000) {
    std::cerr << "warning: duplication factor " << cfg.dup_factor()
              << " exceeds 10^4; runs will be slow\n";
  }

  std::string csv = "trial,t,W,West,relerr\n";
  std::uint64_t within = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    dws::L1Tracker tracker(cfg, k, dws::derive_seed(seed, trial + 1));
    for (std::uint64_t i = 0; i < n; ++i) {
      tracker.add(i, 1.0, static_cast<std::uint32_t>(i % k));
    }
    double west = tracker.estimate();
    double w = tracker.logical_weight();
    double relerr = std::abs(west - w) / w;
    if (relerr <= eps) ++within;
    csv += fmt_u(trial) + ',' + fmt_u(n) + ',' + fmt_d(w) + ',' +
           fmt_d(west) + ',' + fmt_d(relerr) + '\n';
  }
  double frac = static_cast<double>(within) / static_cast<double>(trials);
  bool pass = frac >= 1.0 - delta;
  if (!out_path.empty()) {
    OutFile out(out_path,
                "track-l1 eps=" + fmt_d(eps) + " delta=" + fmt_d(delta) +
                    " s=" + fmt_u(static_cast<std::uint64_t>(cfg.sample_size())) +
                    " dup=" + fmt_u(cfg.dup_factor()) +
                    " k=" + fmt_u(static_cast<std::uint64_t>(k)) +
                    " n=" + fmt_u(n) + " trials=" + fmt_u(trials) +
                    " seed=" + fmt_u(seed));
    out.raw(csv);
    out.close();
  }
  std::cout << "within-eps=" << fmt_d(frac) << (pass ? " PASS" : " FAIL")
            << "\n";
  return pass ? 0 : 1;
}

// ---- msg-scaling ----

int run_msg_scaling(const std::vector<int>& ks, const std::vector<int>& ss,
                    const std::vector<std::uint64_t>& ns,
                    std::uint64_t trials, std::uint64_t seed,
                    bool space_optimized, const std::string& out_path) {
  if (ks.empty() || ss.empty() || ns.empty() || trials == 0) {
    throw std::domain_error("msg-scaling: empty grid");
  }
  std::string csv = "k,s,n,W,mean_messages,bound,ratio\n";
  double lo = 0, hi = 0;
  bool first = true;
  for (int k : ks) {
    for (int s : ss) {
      for (std::uint64_t n : ns) {
        double sum = 0;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
          dws::SimConfig cfg;
          cfg.seed = dws::derive_seed(seed, trial * 7919 + 1);
          auto params = dws::ProtocolParams::make(s, k);
          params.space_optimized = space_optimized;
          dws::SworSimulation sim(cfg, params,
                                  dws::streams::gen_unit(n));
          sim.run_all();
          sum += static_cast<double>(sim.ledger().total());
        }
        double mean = sum / static_cast<double>(trials);
        double w = static_cast<double>(n);
        double bound = static_cast<double>(k) *
                       std::log(w / static_cast<double>(s)) /
                       std::log(1.0 + static_cast<double>(k) /
                                          static_cast<double>(s));
        double ratio = mean / bound;
        if (first || ratio < lo) lo = ratio;
        if (first || ratio > hi) hi = ratio;
        first = false;
        csv += fmt_u(static_cast<std::uint64_t>(k)) + ',' +
               fmt_u(static_cast<std::uint64_t>(s)) + ',' + fmt_u(n) + ',' +
               fmt_d(w) + ',' + fmt_d(mean) + ',' + fmt_d(bound) + ',' +
               fmt_d(ratio) + '\n';
      }
    }
  }
  if (!out_path.empty()) {
    std::string grid;
    auto join_i = [&](const std::vector<int>& v) {
      std::string r;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) r += '+';
        r += fmt_u(static_cast<std::uint64_t>(v[i]));
      }
      return r;
    };
    std::string nstr;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (i) nstr += '+';
      nstr += fmt_u(ns[i]);
    }
    OutFile out(out_path, "msg-scaling k=" + join_i(ks) + " s=" + join_i(ss) +
                              " n=" + nstr + " trials=" + fmt_u(trials) +
                              " variant=" +
                              (space_optimized ? "space-optimized" : "full") +
                              " seed=" + fmt_u(seed));
    out.raw(csv);
    out.close();
  }
  std::cout << "ratio-spread=" << fmt_d(hi / lo) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed weighted sampling harness"};
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "run one protocol instance");
  sim_cmd->add_option("--k", sim_args.k, "site count")->check(CLI::Range(1, 1 << 20));
  sim_cmd->add_option("--s", sim_args.s, "sample size")->check(CLI::Range(1, 1 << 20));
  sim_cmd->add_option("--seed", sim_args.seed);
  sim_cmd->add_option("--delivery", sim_args.delivery, "rounds per hop");
  sim_cmd->add_option("--partitioner", sim_args.partitioner,
                      "round-robin|single-site|random|adversarial-epoch|file-order");
  sim_cmd->add_flag("--space-optimized", sim_args.space_optimized,
                    "drop items that never enter a level's running top-s");
  sim_cmd->add_option("--probe", sim_args.probes,
                      "query after this many items (repeatable)");
  sim_cmd->add_option("--transcript", sim_args.transcript_path);
  sim_cmd->add_option("--ledger", sim_args.ledger_path);
  sim_cmd->add_option("--samples", sim_args.samples_path);
  StreamFlags sim_stream;
  sim_stream.attach(sim_cmd, false);

  // gen-stream
  StreamFlags gen_flags;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen-stream", "write a stream CSV");
  gen_flags.attach(gen_cmd, true);
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--out", gen_out, "output path")->required();

  // validate-swor
  std::uint64_t vswor_trials = 200000, vswor_seed = 1;
  double vswor_alpha = 0.001;
  std::string vswor_out;
  auto* vswor_cmd = app.add_subcommand(
      "validate-swor", "chi-square the sampler against exact enumeration");
  vswor_cmd->add_option("--trials", vswor_trials);
  vswor_cmd->add_option("--seed", vswor_seed);
  vswor_cmd->add_option("--alpha", vswor_alpha, "significance level");
  vswor_cmd->add_option("--out", vswor_out);

  // validate-swr
  std::vector<double> vswr_weights = {1, 2, 3};
  int vswr_s = 4;
  std::uint64_t vswr_trials = 200000, vswr_seed = 1;
  double vswr_alpha = 0.001;
  std::string vswr_out;
  auto* vswr_cmd = app.add_subcommand(
      "validate-swr", "chi-square the with-replacement slot marginals");
  vswr_cmd->add_option("--weights", vswr_weights, "item weights");
  vswr_cmd->add_option("--s", vswr_s, "slot count")->check(CLI::Range(1, 1 << 16));
  vswr_cmd->add_option("--trials", vswr_trials);
  vswr_cmd->add_option("--seed", vswr_seed);
  vswr_cmd->add_option("--alpha", vswr_alpha);
  vswr_cmd->add_option("--out", vswr_out);

  // track-hh
  TrackHHArgs hh_args;
  auto* hh_cmd = app.add_subcommand("track-hh",
                                    "residual heavy-hitter recall trials");
  hh_cmd->add_option("--eps", hh_args.eps);
  hh_cmd->add_option("--delta", hh_args.delta);
  hh_cmd->add_option("--k", hh_args.k)->check(CLI::Range(1, 1 << 20));
  hh_cmd->add_option("--trials", hh_args.trials);
  hh_cmd->add_option("--seed", hh_args.seed);
  hh_cmd->add_option("--giants", hh_args.giants);
  hh_cmd->add_option("--giant-weight", hh_args.giant_weight);
  hh_cmd->add_option("--mids", hh_args.mids);
  hh_cmd->add_option("--mid-weight", hh_args.mid_weight);
  hh_cmd->add_option("--units", hh_args.units);
  hh_cmd->add_option("--probe", hh_args.probes, "probe times (repeatable)");
  hh_cmd->add_option("--out", hh_args.out_path);

  // track-l1
  double l1_eps = 0.2, l1_delta = 0.2;
  int l1_k = 4;
  std::uint64_t l1_n = 10000, l1_trials = 20, l1_seed = 1;
  std::string l1_out;
  auto* l1_cmd = app.add_subcommand("track-l1", "total-weight tracking trials");
  l1_cmd->add_option("--eps", l1_eps);
  l1_cmd->add_option("--delta", l1_delta);
  l1_cmd->add_option("--k", l1_k)->check(CLI::Range(1, 1 << 20));
  l1_cmd->add_option("--n", l1_n, "logical items per trial");
  l1_cmd->add_option("--trials", l1_trials);
  l1_cmd->add_option("--seed", l1_seed);
  l1_cmd->add_option("--out", l1_out);

  // msg-scaling
  std::vector<int> ms_k = {4, 16, 64};
  std::vector<int> ms_s = {4, 16};
  std::vector<std::uint64_t> ms_n = {10000, 100000, 1000000};
  std::uint64_t ms_trials = 3, ms_seed = 1;
  bool ms_space = false;
  std::string ms_out;
  auto* ms_cmd = app.add_subcommand("msg-scaling",
                                    "message totals across a (k,s,n) grid");
  ms_cmd->add_option("--grid-k", ms_k);
  ms_cmd->add_option("--grid-s", ms_s);
  ms_cmd->add_option("--grid-n", ms_n);
  ms_cmd->add_option("--trials", ms_trials);
  ms_cmd->add_option("--seed", ms_seed);
  ms_cmd->add_flag("--space-optimized", ms_space);
  ms_cmd->add_option("--out", ms_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim_cmd->parsed()) {
      sim_args.stream = sim_stream;
      return run_simulate(sim_args);
    }
    if (gen_cmd->parsed()) return run_gen_stream(gen_flags, gen_seed, gen_out);
    if (vswor_cmd->parsed()) {
      return run_validate_swor(vswor_trials, vswor_seed, vswor_alpha, vswor_out);
    }
    if (vswr_cmd->parsed()) {
      return run_validate_swr(vswr_weights, vswr_s, vswr_trials, vswr_seed,
                              vswr_alpha, vswr_out);
    }
    if (hh_cmd->parsed()) return run_track_hh(hh_args);
    if (l1_cmd->parsed()) {
      return run_track_l1(l1_eps, l1_delta, l1_k, l1_n, l1_trials, l1_seed,
                          l1_out);
    }
    if (ms_cmd->parsed()) {
      return run_msg_scaling(ms_k, ms_s, ms_n, ms_trials, ms_seed, ms_space,
                             ms_out);
    }
  } catch (const dws::protocol_violation& e) {
    std::cerr << "protocol violation: " << e.what() << "\n";
    return 3;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
