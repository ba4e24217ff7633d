#pragma once

#include <optional>
#include <vector>

#include "dws/protocol.hpp"

// Distributed weighted sampling with replacement. Each of the s slots runs
// an independent minimum race: conceptually every unit of an item's weight
// draws a uniform and the slot reports the item owning the smallest one.
// Rounds coarsen that race. In round j an item hits a slot with probability
// alpha(w, j) = 1 - (1 - 2^-j)^w, the chance its minimum lies below 2^-j.
// Sites send only hits; the coordinator resolves each hit to the exact
// conditional minimum and advances the round once every slot's champion
// sits below the next threshold, so later misses can no longer matter.

namespace dws {

struct SwrParams {
  int s = 1;
  int k = 1;

  static SwrParams make(int s, int k) { return SwrParams{s, k}; }

  void validate() const {
    if (s < 1) throw std::domain_error("swr: s must be >= 1");
    if (k < 1) throw std::domain_error("swr: k must be >= 1");
    if (s > 0xffff) throw std::domain_error("swr: s exceeds slot index range");
  }
};

// P(at least one of w unit uniforms < 2^-j). Weights must be integral here;
// the unit race is only defined for whole units.
double swr_alpha(double weight, int round);

// Portable Bin(n, p) sampler by CDF inversion, independent of any library
// distribution implementation.
int binomial_sample(int n, double p, BitSource& src);

// Uniform integer in [0, range) by rejection, bias free.
std::uint64_t uniform_index(std::uint64_t range, BitSource& src);

class SwrSite {
 public:
  SwrSite(const SwrParams& params, int index);

  std::optional<Message> on_item(const WeightedItem& item, BitSource& src);
  void on_broadcast(const Message& m);

  int round() const { return round_; }

 private:
  SwrParams params_;
  int index_;
  int round_ = 0;
};

class SwrCoordinator {
 public:
  explicit SwrCoordinator(const SwrParams& params);

  std::vector<Message> on_message(const Message& m, BitSource& src);

  // One entry per slot, ordered by slot index. key carries the winning
  // minimum and seq the slot index. Errors until every slot has a champion.
  std::vector<SampleEntry> query() const;

  int round() const { return round_; }
  bool slot_filled(int slot) const;
  ItemId slot_item(int slot) const;

 private:
  struct Champion {
    bool filled = false;
    ItemId id = 0;
    double weight = 0.0;
    double min_u = 2.0;
  };

  SwrParams params_;
  std::vector<Champion> slots_;
  int round_ = 0;
};

struct SwrProtocol {
  using Params = SwrParams;
  using Site = SwrSite;
  using Coordinator = SwrCoordinator;
};

}  // namespace dws
