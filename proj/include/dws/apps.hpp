#pragma once

#include <cmath>
#include <unordered_map>
#include <vector>

#include "dws/simnet.hpp"

// Two consumers of the without-replacement sampler. Residual heavy-hitter
// tracking reads the running sample and reports the heaviest ids; L1
// tracking duplicates every arrival and reads the total weight off the
// sample's smallest key.

namespace dws {

struct ResidualHHConfig {
  double epsilon = 0.1;
  double delta = 0.1;

  void validate() const {
    if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
      throw std::domain_error("hh: epsilon must lie in (0, 1/2)");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
      throw std::domain_error("hh: delta must lie in (0, 1)");
    }
  }
  int sample_size() const {
    validate();
    return static_cast<int>(std::ceil(6.0 * std::log(1.0 / (delta * epsilon)) / epsilon));
  }
  int output_cap() const {
    validate();
    return static_cast<int>(std::ceil(2.0 / epsilon));
  }
};

// Heaviest ids in the current sample, weight descending, at most cap many.
std::vector<SampleEntry> hh_select(std::vector<SampleEntry> sample, int cap);

// Exact aggregate vector kept by tests to grade heavy-hitter output.
class ResidualVector {
 public:
  void push(ItemId id, double weight);

  double l1() const { return total_; }
  std::size_t coordinates() const { return x_.size(); }

  // L1 mass left after zeroing the m heaviest coordinates. Weight ties at
  // the boundary keep the smaller id in the tail.
  double residual_l1(std::size_t m) const;

  // Ids with x_i >= eps * residual_l1(ceil(1/eps)), ascending.
  std::vector<ItemId> qualifying(double eps) const;

 private:
  std::unordered_map<ItemId, double> x_;
  double total_ = 0.0;
};

struct L1Config {
  double epsilon = 0.2;
  double delta = 0.2;

  void validate() const {
    if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
      throw std::domain_error("l1: epsilon must lie in (0, 1/2)");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
      throw std::domain_error("l1: delta must lie in (0, 1)");
    }
    if (dup_factor() <= static_cast<std::uint64_t>(sample_size())) {
      throw std::domain_error("l1: duplication factor must exceed sample size");
    }
  }
  int sample_size() const {
    return static_cast<int>(
        std::ceil(10.0 * std::log(1.0 / delta) / (epsilon * epsilon)));
  }
  std::uint64_t dup_factor() const {
    return static_cast<std::uint64_t>(
        std::ceil(sample_size() / (2.0 * epsilon)));
  }
};

// Runs the without-replacement protocol over a duplicated stream: each
// logical arrival (id, w) becomes dup_factor() physical arrivals with
// derived ids, all at the arrival site. The total weight estimate divides
// the sample's smallest key back by the duplication factor.
class L1Tracker {
 public:
  L1Tracker(const L1Config& cfg, int k, std::uint64_t seed);

  void add(ItemId id, double weight, std::uint32_t site = 0);

  // s * u / dup_factor with u the s-th largest key so far (0 while the
  // sample is still filling). Errors before the first add.
  double estimate() const;

  double logical_weight() const { return logical_weight_; }
  std::uint64_t logical_items() const { return logical_items_; }
  const L1Config& config() const { return cfg_; }
  const SworSimulation& sim() const { return sim_; }

 private:
  L1Config cfg_;
  SworSimulation sim_;
  double logical_weight_ = 0.0;
  std::uint64_t logical_items_ = 0;
};

}  // namespace dws
