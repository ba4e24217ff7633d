#include "dws/core.hpp"

#include <cmath>
#include <limits>

namespace dws {

void validate_weight(double w) {
  if (!std::isfinite(w) || w < 1.0) {
    throw std::domain_error("item weight must be finite and >= 1, got " +
                            std::to_string(w));
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t role) {
  // splitmix64 finalizer over the (master, role) pair
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (role + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform_from_prefix(std::uint64_t prefix) {
  double hi = static_cast<double>(prefix >> 11) * 0x1p-53;
  double lo = static_cast<double>(((prefix & 0x7ffULL) << 1) | 1ULL) * 0x1p-65;
  return hi + lo;
}

Key gen_key(double weight, BitSource& src) {
  std::uint64_t prefix = src.next_word();
  double u = uniform_from_prefix(prefix);
  double t = -std::log(u);
  return Key{weight / t, t, 64};
}

LazyDecision key_exceeds(double weight, double threshold, BitSource& src) {
  if (!(weight > 0) || !std::isfinite(weight)) {
    throw std::domain_error("key_exceeds: weight must be positive and finite");
  }
  if (!(threshold > 0)) {
    // u = 0 phase: every key is positive, so every key passes
    return LazyDecision{true, {}};
  }
  // v > threshold  iff  t < w/threshold  iff  U > exp(-w/threshold)
  return key_exceeds_given_tau(std::exp(-weight / threshold), src);
}

LazyDecision key_exceeds_given_tau(double tau, BitSource& src) {
  if (tau <= 0.0) return LazyDecision{true, {}};
  if (tau >= 1.0) return LazyDecision{false, {}};
  KeyGenState st;
  double frac = tau;  // remaining binary expansion of tau, shifted left st.bits
  for (int i = 0; i < 128; ++i) {
    bool ub = src.next_bit();
    if (st.bits < 64) st.prefix = (st.prefix << 1) | (ub ? 1u : 0u);
    ++st.bits;
    frac *= 2.0;
    bool tb = frac >= 1.0;
    if (tb) frac -= 1.0;
    if (ub != tb) {
      // first differing bit settles U vs tau
      return LazyDecision{ub, st};
    }
  }
  // 128 bits match tau exactly; resolve as if U were the interval midpoint
  return LazyDecision{frac < 0.5, st};
}

Key extend_key(double weight, const KeyGenState& state, BitSource& src) {
  std::uint64_t prefix = state.prefix;
  int bits = state.bits;
  if (bits > 64) {
    // decision ran past word precision; the stored 64-bit prefix already
    // pins the value
    bits = 64;
  }
  while (bits < 64) {
    prefix = (prefix << 1) | (src.next_bit() ? 1u : 0u);
    ++bits;
  }
  double u = uniform_from_prefix(prefix);
  double t = -std::log(u);
  return Key{weight / t, t, state.bits > 64 ? state.bits : 64};
}

int level_of(double weight, int r) {
  if (!(weight > 0) || !std::isfinite(weight)) {
    throw std::domain_error("level_of: weight must be positive and finite");
  }
  if (r < 2) throw std::domain_error("level_of: base must be >= 2");
  double rd = static_cast<double>(r);
  if (weight < rd) return 0;
  int j = 0;
  double p = 1.0;
  while (p * rd <= weight) {
    p *= rd;
    ++j;
  }
  return j;
}

double level_boundary(int r, int j) {
  double p = 1.0;
  for (int i = 0; i < j; ++i) p *= static_cast<double>(r);
  return p;
}

ProtocolParams ProtocolParams::make(int s, int k) {
  if (s < 1) throw std::domain_error("params: sample size must be >= 1");
  if (k < 1) throw std::domain_error("params: need at least one site");
  ProtocolParams p;
  p.s = s;
  p.k = k;
  p.r = std::max(2, (k + s - 1) / s);
  p.validate();
  return p;
}

int ProtocolParams::max_level() const { return level_of(w_max, r); }

void ProtocolParams::validate() const {
  if (s < 1) throw std::domain_error("params: sample size must be >= 1");
  if (k < 1) throw std::domain_error("params: need at least one site");
  if (r < 2) throw std::domain_error("params: level base must be >= 2");
  if (!(w_max >= 1) || !std::isfinite(w_max)) {
    throw std::domain_error("params: w_max must be finite and >= 1");
  }
}

}  // namespace dws
