#include "dws/swr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dws {

double swr_alpha(double weight, int round) {
  validate_weight(weight);
  if (weight != std::floor(weight)) {
    throw std::domain_error("swr: weight must be an integer");
  }
  if (round < 0) throw std::domain_error("swr: round must be >= 0");
  if (round == 0) return 1.0;
  double p = std::ldexp(1.0, -round);
  return -std::expm1(weight * std::log1p(-p));
}

std::uint64_t uniform_index(std::uint64_t range, BitSource& src) {
  if (range == 0) throw std::domain_error("uniform_index: empty range");
  if ((range & (range - 1)) == 0) {
    return src.next_word() & (range - 1);
  }
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
  for (;;) {
    std::uint64_t w = src.next_word();
    if (w <= limit) return w % range;
  }
}

int binomial_sample(int n, double p, BitSource& src) {
  if (n < 0) throw std::domain_error("binomial: n must be >= 0");
  if (!(p >= 0.0) || p > 1.0) throw std::domain_error("binomial: bad p");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial_sample(n, 1.0 - p, src);

  double q = std::exp(n * std::log1p(-p));
  if (q == 0.0) {
    // pmf at 0 underflowed; fall back to explicit trials
    int x = 0;
    for (int i = 0; i < n; ++i) {
      if (uniform_from_prefix(src.next_word()) < p) ++x;
    }
    return x;
  }
  double v = uniform_from_prefix(src.next_word());
  double pmf = q;
  double cdf = q;
  int x = 0;
  double odds = p / (1.0 - p);
  while (v >= cdf && x < n) {
    pmf *= odds * (n - x) / (x + 1);
    cdf += pmf;
    ++x;
  }
  return x;
}

SwrSite::SwrSite(const SwrParams& params, int index)
    : params_(params), index_(index) {
  params_.validate();
}

std::optional<Message> SwrSite::on_item(const WeightedItem& item,
                                        BitSource& src) {
  double a = swr_alpha(item.weight, round_);
  int hits = binomial_sample(params_.s, a, src);
  if (hits == 0) return std::nullopt;

  // uniform subset of the slots, reported in ascending order
  std::vector<std::uint16_t> pool(static_cast<std::size_t>(params_.s));
  std::iota(pool.begin(), pool.end(), std::uint16_t{0});
  for (int i = 0; i < hits; ++i) {
    std::uint64_t j =
        static_cast<std::uint64_t>(i) +
        uniform_index(static_cast<std::uint64_t>(params_.s - i), src);
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(hits));
  std::sort(pool.begin(), pool.end());

  Message m;
  m.kind = MsgKind::SwrSlot;
  m.src = index_;
  m.dst = -1;
  m.id = item.id;
  m.weight = item.weight;
  m.level = round_;
  m.seq = item.seq;
  m.slots = std::move(pool);
  return m;
}

void SwrSite::on_broadcast(const Message& m) {
  if (m.kind != MsgKind::SwrRound) {
    throw protocol_violation("swr site: unexpected broadcast kind");
  }
  if (m.level <= round_) {
    throw protocol_violation("swr site: round did not advance");
  }
  round_ = m.level;
}

SwrCoordinator::SwrCoordinator(const SwrParams& params) : params_(params) {
  params_.validate();
  slots_.resize(static_cast<std::size_t>(params_.s));
}

std::vector<Message> SwrCoordinator::on_message(const Message& m,
                                                BitSource& src) {
  if (m.kind != MsgKind::SwrSlot) {
    throw protocol_violation("swr coordinator: unexpected message kind");
  }
  if (m.level != round_) {
    throw protocol_violation("swr coordinator: hit from a stale round");
  }
  for (std::uint16_t slot : m.slots) {
    if (slot >= slots_.size()) {
      throw protocol_violation("swr coordinator: slot index out of range");
    }
    // Exact minimum of the item's unit uniforms given at least one fell
    // below the cutoff: invert P(min <= u | min < c) = (1-(1-u)^w) / alpha.
    double a = swr_alpha(m.weight, round_);
    double v = uniform_from_prefix(src.next_word());
    double u = -std::expm1(std::log1p(-v * a) / m.weight);
    Champion& ch = slots_[slot];
    if (!ch.filled || u < ch.min_u) {
      ch.filled = true;
      ch.id = m.id;
      ch.weight = m.weight;
      ch.min_u = u;
    }
  }

  std::vector<Message> out;
  for (;;) {
    double next = std::ldexp(1.0, -(round_ + 1));
    bool can_advance = round_ < 1070;
    for (const Champion& ch : slots_) {
      if (!ch.filled || ch.min_u >= next) {
        can_advance = false;
        break;
      }
    }
    if (!can_advance) break;
    ++round_;
    Message b;
    b.kind = MsgKind::SwrRound;
    b.src = -1;
    b.dst = -2;
    b.level = round_;
    out.push_back(b);
  }
  return out;
}

std::vector<SampleEntry> SwrCoordinator::query() const {
  std::vector<SampleEntry> out;
  out.reserve(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Champion& ch = slots_[i];
    if (!ch.filled) {
      throw std::logic_error("swr: query before any item was observed");
    }
    out.push_back(SampleEntry{ch.id, ch.weight, ch.min_u, i});
  }
  return out;
}

bool SwrCoordinator::slot_filled(int slot) const {
  return slots_.at(static_cast<std::size_t>(slot)).filled;
}

ItemId SwrCoordinator::slot_item(int slot) const {
  const Champion& ch = slots_.at(static_cast<std::size_t>(slot));
  if (!ch.filled) throw std::logic_error("swr: empty slot");
  return ch.id;
}

}  // namespace dws
