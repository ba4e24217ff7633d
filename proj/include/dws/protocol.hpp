#pragma once

#include <optional>
#include <set>
#include <vector>

#include "dws/core.hpp"

// Site and coordinator state machines. Sites classify each arriving item by
// weight level and either forward it unsampled (early, while the level's
// buffer at the coordinator is still filling) or filter it against the
// current epoch threshold and forward it with its key (regular). The
// coordinator buffers early items per level, flushes a level into the sample
// the moment it has seen 4*s*r arrivals for it, and maintains the running
// sample of the s largest keys.

namespace dws {

enum class MsgKind {
  Early,           // site -> coordinator: (id, w), key not yet drawn
  Regular,         // site -> coordinator: (id, w, key)
  LevelSaturated,  // coordinator -> all sites: level j closed
  UpdateEpoch,     // coordinator -> all sites: new filter threshold r^j
  SwrSlot,         // site -> coordinator: slot hits for the with-replacement sampler
  SwrRound,        // coordinator -> all sites: new filter round index
};

const char* msg_kind_name(MsgKind k);

struct Message {
  MsgKind kind = MsgKind::Early;
  int src = 0;   // site index, or -1 for the coordinator
  int dst = -1;  // site index, -1 for the coordinator, -2 for broadcast
  std::uint64_t round = 0;  // simulator round of send
  ItemId id = 0;
  double weight = 0.0;
  double key = 0.0;        // Regular
  int level = -1;          // Early/LevelSaturated level, SwrRound index
  double threshold = 0.0;  // UpdateEpoch payload r^j
  std::uint64_t seq = 0;
  std::vector<std::uint16_t> slots;  // SwrSlot
};

struct SampleEntry {
  ItemId id = 0;
  double weight = 0.0;
  double key = 0.0;
  std::uint64_t seq = 0;
};

class Site {
 public:
  Site(const ProtocolParams& params, int index);

  // Handles one stream arrival. Returns the message to send, if any.
  std::optional<Message> on_item(const WeightedItem& item, BitSource& src);

  void on_broadcast(const Message& m);

  double filter_threshold() const { return u_; }
  bool level_saturated(int j) const;

 private:
  ProtocolParams params_;
  int index_;
  double u_ = 0.0;  // epoch threshold announced by the coordinator
  std::vector<std::uint8_t> saturated_;
  // memo of exp(-w/u) for the common repeated-weight case
  double tau_w_ = -1.0, tau_u_ = -1.0, tau_ = 0.0;
};

class Coordinator {
 public:
  explicit Coordinator(const ProtocolParams& params);

  // Handles an Early or Regular message. Returns broadcasts to fan out, in
  // causal order (epoch updates raised during a flush precede the
  // level-saturated announcement).
  std::vector<Message> on_message(const Message& m, BitSource& src);

  // Items holding the s largest keys across the sample and the still-open
  // level buffers, ordered by descending key.
  std::vector<SampleEntry> query() const;

  double u() const { return u_; }
  int epoch() const { return epoch_; }
  double epoch_threshold() const { return epoch_threshold_; }
  std::uint64_t level_count(int j) const;
  bool level_saturated(int j) const;
  std::uint64_t sample_size() const { return sample_.size(); }

  // Order (by seq) in which items entered the sample, when recording is on.
  const std::vector<std::uint64_t>& releases() const { return releases_; }

 private:
  struct Triple {
    ItemId id;
    double weight;
    double key;
    std::uint64_t seq;
  };
  struct KeyOrder {
    bool operator()(const Triple& a, const Triple& b) const {
      if (a.key != b.key) return a.key < b.key;
      return a.seq < b.seq;
    }
  };
  struct LevelSet {
    std::uint64_t count = 0;  // arrivals while open
    bool saturated = false;
    std::vector<Triple> buffer;
    // space-optimized mode: keys currently in this level's running top s
    std::set<std::pair<double, std::uint64_t>> top;
  };

  std::optional<Message> add_to_sample(const Triple& t);

  ProtocolParams params_;
  std::set<Triple, KeyOrder> sample_;
  std::vector<LevelSet> levels_;
  double u_ = 0.0;
  int epoch_ = 0;
  double epoch_threshold_ = 0.0;
  std::vector<std::uint64_t> releases_;
};

}  // namespace dws
