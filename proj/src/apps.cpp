#include "dws/apps.hpp"

#include <algorithm>
#include <limits>

namespace dws {

std::vector<SampleEntry> hh_select(std::vector<SampleEntry> sample, int cap) {
  if (cap < 1) throw std::domain_error("hh: output cap must be >= 1");
  std::sort(sample.begin(), sample.end(),
            [](const SampleEntry& a, const SampleEntry& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.id < b.id;
            });
  if (sample.size() > static_cast<std::size_t>(cap)) {
    sample.resize(static_cast<std::size_t>(cap));
  }
  return sample;
}

void ResidualVector::push(ItemId id, double weight) {
  validate_weight(weight);
  x_[id] += weight;
  total_ += weight;
}

double ResidualVector::residual_l1(std::size_t m) const {
  if (m >= x_.size()) return 0.0;
  std::vector<std::pair<double, ItemId>> coords;
  coords.reserve(x_.size());
  for (const auto& [id, w] : x_) coords.emplace_back(w, id);
  // heaviest first; on a weight tie the larger id ranks as top so the
  // smaller id stays in the tail
  std::sort(coords.begin(), coords.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second > b.second;
            });
  double tail = 0.0;
  for (std::size_t i = m; i < coords.size(); ++i) tail += coords[i].first;
  return tail;
}

std::vector<ItemId> ResidualVector::qualifying(double eps) const {
  if (!(eps > 0.0) || !(eps < 0.5)) {
    throw std::domain_error("qualifying: epsilon must lie in (0, 1/2)");
  }
  auto m = static_cast<std::size_t>(std::ceil(1.0 / eps));
  double threshold = eps * residual_l1(m);
  std::vector<ItemId> out;
  for (const auto& [id, w] : x_) {
    if (w >= threshold) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SworSimulation make_l1_sim(const L1Config& cfg, int k, std::uint64_t seed) {
  cfg.validate();
  SimConfig sim_cfg;
  sim_cfg.seed = seed;
  sim_cfg.partitioner = Partitioner::FileOrder;
  return SworSimulation(sim_cfg, ProtocolParams::make(cfg.sample_size(), k));
}

}  // namespace

L1Tracker::L1Tracker(const L1Config& cfg, int k, std::uint64_t seed)
    : cfg_(cfg), sim_(make_l1_sim(cfg, k, seed)) {}

void L1Tracker::add(ItemId id, double weight, std::uint32_t site) {
  std::uint64_t ell = cfg_.dup_factor();
  if (id > (std::numeric_limits<std::uint64_t>::max() - (ell - 1)) / ell) {
    throw std::domain_error("l1: id too large to derive duplicate ids");
  }
  for (std::uint64_t dup = 0; dup < ell; ++dup) {
    sim_.push_next(id * ell + dup, weight, site);
    sim_.step();
  }
  logical_weight_ += weight;
  ++logical_items_;
}

double L1Tracker::estimate() const {
  if (logical_items_ == 0) {
    throw std::logic_error("l1: estimate before any item was added");
  }
  auto top = sim_.query();
  auto s = static_cast<std::size_t>(cfg_.sample_size());
  double u = top.size() == s ? top.back().key : 0.0;
  return static_cast<double>(s) * u / static_cast<double>(cfg_.dup_factor());
}

}  // namespace dws
