#pragma once

#include <charconv>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "dws/protocol.hpp"
#include "dws/streams.hpp"

// Synchronous single-coordinator network simulator. Each stream item is
// observed by its site in a fresh round and every message it triggers,
// including coordinator broadcasts, is delivered before the next item is
// observed. Channels are FIFO; a broadcast costs one message per site.
// Identical (config, params, stream, seed) replays produce byte-identical
// transcripts.

namespace dws {

enum class Partitioner { RoundRobin, SingleSite, Random, AdversarialEpoch, FileOrder };

const char* partitioner_name(Partitioner p);

struct SimConfig {
  std::uint64_t seed = 1;
  int delivery = 1;  // rounds per hop; 0 delivers in the send round
  Partitioner partitioner = Partitioner::RoundRobin;
  bool record_transcript = false;

  void validate() const {
    if (delivery < 0) throw std::domain_error("sim: delivery must be >= 0");
  }
};

struct MessageLedger {
  int k = 1;
  std::uint64_t early = 0;
  std::uint64_t regular = 0;
  std::uint64_t saturated_events = 0;  // broadcast events, k messages each
  std::uint64_t epoch_events = 0;
  std::uint64_t slot_messages = 0;     // with-replacement slot deliveries
  std::uint64_t swr_round_events = 0;
  std::map<std::uint64_t, std::uint64_t> per_round;

  std::uint64_t total() const {
    return early + regular + slot_messages +
           static_cast<std::uint64_t>(k) *
               (saturated_events + epoch_events + swr_round_events);
  }
  std::uint64_t per_round_total() const {
    std::uint64_t t = 0;
    for (const auto& [r, c] : per_round) t += c;
    return t;
  }
  bool consistent() const { return total() == per_round_total(); }
};

namespace detail {

inline void append_double(std::string& out, double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

inline void append_u64(std::string& out, std::uint64_t v) {
  char buf[24];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

inline std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t double_bits(double v) {
  std::uint64_t b;
  static_assert(sizeof b == sizeof v);
  __builtin_memcpy(&b, &v, sizeof b);
  return b;
}

}  // namespace detail

// Append-only event log. Lines: round,kind,src,dst,id,w,v_or_level with
// src/dst rendered as s<i>, c (coordinator) or x (stream). The last field
// holds the key for regular messages, the level or round index for level
// and round messages, the threshold for epoch messages and the slot count
// for slot messages.
class Transcript {
 public:
  explicit Transcript(bool enabled) : enabled_(enabled) {}

  bool enabled() const { return enabled_; }
  const std::string& bytes() const { return buf_; }

  void item(std::uint64_t round, std::uint32_t site, const WeightedItem& it) {
    if (!enabled_) return;
    start(round, "item", "x", site_name(site));
    detail::append_u64(buf_, it.id);
    buf_ += ',';
    detail::append_double(buf_, it.weight);
    buf_ += ",\n";
  }

  void message(const Message& m, int explicit_dst) {
    if (!enabled_) return;
    start(m.round, msg_kind_name(m.kind), end_name(m.src),
          end_name(explicit_dst));
    switch (m.kind) {
      case MsgKind::Early:
      case MsgKind::Regular:
      case MsgKind::SwrSlot:
        detail::append_u64(buf_, m.id);
        buf_ += ',';
        detail::append_double(buf_, m.weight);
        buf_ += ',';
        if (m.kind == MsgKind::Regular) {
          detail::append_double(buf_, m.key);
        } else if (m.kind == MsgKind::Early) {
          detail::append_u64(buf_, static_cast<std::uint64_t>(m.level));
        } else {
          detail::append_u64(buf_, m.slots.size());
        }
        break;
      case MsgKind::LevelSaturated:
      case MsgKind::SwrRound:
        buf_ += ",,";
        detail::append_u64(buf_, static_cast<std::uint64_t>(m.level));
        break;
      case MsgKind::UpdateEpoch:
        buf_ += ",,";
        detail::append_double(buf_, m.threshold);
        break;
    }
    buf_ += '\n';
  }

  void digest(std::uint64_t round, std::uint64_t value) {
    if (!enabled_) return;
    start(round, "digest", "c", "x");
    buf_ += ",,";
    char hex[17];
    for (int i = 15; i >= 0; --i) {
      hex[i] = "0123456789abcdef"[value & 0xf];
      value >>= 4;
    }
    hex[16] = 0;
    buf_ += hex;
    buf_ += '\n';
  }

 private:
  static std::string site_name(std::uint32_t i) {
    return "s" + std::to_string(i);
  }
  static std::string end_name(int v) {
    if (v == -1) return "c";
    if (v < -1) return "x";
    return site_name(static_cast<std::uint32_t>(v));
  }
  void start(std::uint64_t round, const char* kind, const std::string& src,
             const std::string& dst) {
    detail::append_u64(buf_, round);
    buf_ += ',';
    buf_ += kind;
    buf_ += ',';
    buf_ += src;
    buf_ += ',';
    buf_ += dst;
    buf_ += ',';
  }

  bool enabled_;
  std::string buf_;
};

// Parses a transcript back and checks ordering invariants: rounds never
// decrease, per-channel send order is delivery order (FIFO holds trivially
// for a log ordered by send), epoch thresholds strictly increase and no
// level saturates twice. Throws protocol_violation on breach.
struct TranscriptStats {
  std::uint64_t lines = 0;
  std::uint64_t messages = 0;
};
TranscriptStats validate_transcript(const std::string& bytes);

template <class P>
class Simulation {
 public:
  using Params = typename P::Params;

  Simulation(const SimConfig& cfg, const Params& params,
             streams::Stream stream = {})
      : cfg_(cfg),
        params_(params),
        transcript_(cfg.record_transcript),
        coord_src_(derive_seed(cfg.seed, 0)),
        coordinator_(params) {
    cfg_.validate();
    params_.validate();
    ledger_.k = params_.k;
    sites_.reserve(static_cast<std::size_t>(params_.k));
    site_srcs_.reserve(static_cast<std::size_t>(params_.k));
    for (int i = 0; i < params_.k; ++i) {
      sites_.emplace_back(params_, i);
      site_srcs_.emplace_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(i) + 1));
    }
    for (auto& it : stream.items) push_item(it);
  }

  // Enqueues one item. Seq must continue the global order.
  void push_item(const WeightedItem& it) {
    validate_weight(it.weight);
    if (it.seq != next_seq_) {
      throw std::domain_error("sim: expected seq " + std::to_string(next_seq_) +
                              ", got " + std::to_string(it.seq));
    }
    ++next_seq_;
    pending_.push_back(it);
  }

  // Convenience for incremental feeding: assigns the next seq itself.
  void push_next(ItemId id, double weight, std::uint32_t site = 0) {
    push_item(WeightedItem{id, weight, site, next_seq_});
  }

  // Observes the next item and settles every message it causes.
  bool step() {
    if (pending_.empty()) return false;
    WeightedItem it = pending_.front();
    pending_.pop_front();
    it.site = assign_site(it);
    std::uint64_t observe_round = ++round_;
    transcript_.item(observe_round, it.site, it);
    total_weight_ += it.weight;
    ++items_done_;

    auto msg = sites_[it.site].on_item(it, site_srcs_[it.site]);
    if (msg) {
      msg->round = observe_round;
      count_site_message(*msg);
      transcript_.message(*msg, -1);
      std::uint64_t at_coord =
          observe_round + static_cast<std::uint64_t>(cfg_.delivery);
      auto bcasts = coordinator_.on_message(*msg, coord_src_);
      for (auto& b : bcasts) {
        b.round = at_coord;
        count_broadcast(b);
        for (int sdx = 0; sdx < params_.k; ++sdx) {
          transcript_.message(b, sdx);
          sites_[static_cast<std::size_t>(sdx)].on_broadcast(b);
        }
      }
      std::uint64_t settle =
          at_coord + (bcasts.empty()
                          ? 0
                          : static_cast<std::uint64_t>(cfg_.delivery));
      if (settle > round_) round_ = settle;
    }
    if (transcript_.enabled()) transcript_.digest(round_, state_digest());
    return true;
  }

  void run_all() {
    while (step()) {
    }
  }

  // Query right after the t-th item has settled. Forward-only.
  std::vector<SampleEntry> probe_at(std::uint64_t t) {
    if (t < 1 || t < items_done_) {
      throw std::domain_error("probe_at: probes must move forward");
    }
    while (items_done_ < t) {
      if (!step()) {
        throw std::domain_error("probe_at: stream exhausted before item " +
                                std::to_string(t));
      }
    }
    return coordinator_.query();
  }

  std::vector<SampleEntry> query() const { return coordinator_.query(); }

  const typename P::Coordinator& coordinator() const { return coordinator_; }
  const typename P::Site& site(int i) const {
    return sites_.at(static_cast<std::size_t>(i));
  }
  const MessageLedger& ledger() const { return ledger_; }
  const Transcript& transcript() const { return transcript_; }
  std::uint64_t items_done() const { return items_done_; }
  std::uint64_t round() const { return round_; }
  double total_weight() const { return total_weight_; }
  const Params& params() const { return params_; }

  std::string ledger_csv_row() const {
    std::string row;
    detail::append_u64(row, static_cast<std::uint64_t>(params_.k));
    row += ',';
    detail::append_u64(row, static_cast<std::uint64_t>(params_.s));
    row += ',';
    detail::append_u64(row, static_cast<std::uint64_t>(level_base()));
    row += ',';
    detail::append_double(row, total_weight_);
    row += ',';
    detail::append_u64(row, items_done_);
    row += ',';
    detail::append_u64(row, ledger_.early);
    row += ',';
    detail::append_u64(row, ledger_.regular + ledger_.slot_messages);
    row += ',';
    detail::append_u64(row, ledger_.saturated_events);
    row += ',';
    detail::append_u64(row, ledger_.epoch_events + ledger_.swr_round_events);
    row += ',';
    detail::append_u64(row, ledger_.total());
    return row;
  }

 private:
  int level_base() const {
    if constexpr (requires { params_.r; }) {
      return params_.r;
    } else {
      return 0;
    }
  }

  std::uint32_t assign_site(const WeightedItem& it) const {
    std::uint32_t k = static_cast<std::uint32_t>(params_.k);
    switch (cfg_.partitioner) {
      case Partitioner::RoundRobin:
        return static_cast<std::uint32_t>((it.seq - 1) % k);
      case Partitioner::SingleSite:
        return 0;
      case Partitioner::Random:
        return static_cast<std::uint32_t>(derive_seed(cfg_.seed ^ 0xd15cu, it.seq) % k);
      case Partitioner::AdversarialEpoch:
      case Partitioner::FileOrder:
        if (it.site >= k) {
          throw std::domain_error("sim: item site " + std::to_string(it.site) +
                                  " out of range for k=" + std::to_string(k));
        }
        return it.site;
    }
    throw std::domain_error("sim: unknown partitioner");
  }

  void count_site_message(const Message& m) {
    std::uint64_t units = 1;
    switch (m.kind) {
      case MsgKind::Early: ledger_.early += 1; break;
      case MsgKind::Regular: ledger_.regular += 1; break;
      case MsgKind::SwrSlot:
        units = m.slots.size();
        ledger_.slot_messages += units;
        break;
      default:
        throw protocol_violation("sim: site sent a broadcast kind");
    }
    ledger_.per_round[m.round] += units;
  }

  void count_broadcast(const Message& m) {
    switch (m.kind) {
      case MsgKind::LevelSaturated: ledger_.saturated_events += 1; break;
      case MsgKind::UpdateEpoch: ledger_.epoch_events += 1; break;
      case MsgKind::SwrRound: ledger_.swr_round_events += 1; break;
      default:
        throw protocol_violation("sim: coordinator sent a site kind");
    }
    ledger_.per_round[m.round] += static_cast<std::uint64_t>(params_.k);
  }

  std::uint64_t state_digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = detail::fnv1a(h, items_done_);
    h = detail::fnv1a(h, ledger_.total());
    if constexpr (requires { coordinator_.u(); }) {
      h = detail::fnv1a(h, detail::double_bits(coordinator_.u()));
      h = detail::fnv1a(h, static_cast<std::uint64_t>(coordinator_.epoch()));
      h = detail::fnv1a(h, coordinator_.sample_size());
    }
    for (const auto& e : coordinator_.query()) {
      h = detail::fnv1a(h, e.id);
      h = detail::fnv1a(h, detail::double_bits(e.weight));
      h = detail::fnv1a(h, detail::double_bits(e.key));
    }
    return h;
  }

  SimConfig cfg_;
  Params params_;
  Transcript transcript_;
  MessageLedger ledger_;
  BitSource coord_src_;
  typename P::Coordinator coordinator_;
  std::vector<typename P::Site> sites_;
  std::vector<BitSource> site_srcs_;
  std::deque<WeightedItem> pending_;
  std::uint64_t next_seq_ = 1;
  std::uint64_t items_done_ = 0;
  std::uint64_t round_ = 0;
  double total_weight_ = 0.0;
};

// Policy binding the without-replacement protocol to the simulator.
struct SworProtocol {
  using Params = ProtocolParams;
  using Site = dws::Site;
  using Coordinator = dws::Coordinator;
};

using SworSimulation = Simulation<SworProtocol>;

}  // namespace dws
