#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

// Core types for weighted sampling without replacement over distributed
// streams. Every stream item receives a key w/t with t standard exponential;
// the items holding the s largest keys form a weighted sample. Keys can be
// decided lazily against a threshold, one uniform bit at a time, so that a
// filtered-out item costs only a couple of random bits.

namespace dws {

using ItemId = std::uint64_t;

class protocol_violation : public std::runtime_error {
 public:
  explicit protocol_violation(const std::string& what)
      : std::runtime_error(what) {}
};

struct WeightedItem {
  ItemId id = 0;
  double weight = 1.0;
  std::uint32_t site = 0;   // origin site, 0-based
  std::uint64_t seq = 0;    // global arrival index, 1-based
};

// Validates a stream weight at an ingestion boundary.
void validate_weight(double w);

struct Key {
  double value = 0.0;     // w / t
  double raw_t = 0.0;     // the exponential draw
  int bits_consumed = 0;  // uniform bits drawn for this key
};

// Deterministic stream of fair bits. Bits are served MSB-first out of
// 64-bit engine words, so word draws and bit draws interleave consistently.
class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : eng_(seed) {}

  bool next_bit() {
    if (avail_ == 0) {
      buf_ = eng_();
      avail_ = 64;
    }
    bool b = (buf_ >> 63) != 0;
    buf_ <<= 1;
    --avail_;
    return b;
  }

  std::uint64_t next_word() {
    if (avail_ == 0) return eng_();
    std::uint64_t hi = buf_ >> (64 - avail_);
    int need = 64 - avail_;
    std::uint64_t fresh = eng_();
    std::uint64_t out = (hi << need) | (fresh >> avail_);
    buf_ = fresh << need;
    // avail_ unchanged: we kept the low avail_ bits of the fresh word
    return out;
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t buf_ = 0;
  int avail_ = 0;
};

// Derives an independent per-role seed from a master seed. Role 0 is the
// coordinator, role i >= 1 is site i-1.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t role);

// Uniform in (0,1) from a 64-bit prefix: the midpoint of the dyadic
// interval the prefix pins down. Never 0, never 1.
double uniform_from_prefix(std::uint64_t prefix);

// Full-precision key draw. Consumes exactly 64 bits.
Key gen_key(double weight, BitSource& src);

// Partial state of a lazily decided key: the first min(bits,64) bits of the
// underlying uniform, left-aligned.
struct KeyGenState {
  std::uint64_t prefix = 0;
  int bits = 0;
};

struct LazyDecision {
  bool exceeds = false;
  KeyGenState state;
};

// Decides whether a fresh key w/t would exceed `threshold` while drawing as
// few bits as possible. The underlying uniform U is built as a lazy binary
// expansion, open at dyadic endpoints; the decision falls out as soon as the
// interval of possible U clears exp(-w/threshold). After 128 bits the
// comparison resolves toward the midpoint of the remaining interval.
LazyDecision key_exceeds(double weight, double threshold, BitSource& src);

// Same decision with tau = exp(-w/threshold) precomputed, for callers that
// can reuse it across items. Requires tau in (0,1).
LazyDecision key_exceeds_given_tau(double tau, BitSource& src);

// Extends a partial decision to a full key, drawing the remaining bits.
// On a replayed bit stream the result is bit-identical to gen_key.
Key extend_key(double weight, const KeyGenState& state, BitSource& src);

// Level index of a weight: the unique j >= 0 with w in [r^j, r^(j+1)),
// where all of [0, r) maps to level 0. Exact at integer-power boundaries.
int level_of(double weight, int r);

// r^j computed the same way level_of computes its boundaries.
double level_boundary(int r, int j);

struct ProtocolParams {
  int s = 1;                 // sample size
  int k = 1;                 // number of sites
  int r = 2;                 // level base, max(2, ceil(k/s))
  double w_max = 1e18;       // largest admissible item weight
  bool space_optimized = false;  // coordinator keeps trimmed level buffers
  bool record_releases = false;  // log the order items enter the sample

  static ProtocolParams make(int s, int k);
  int saturation_threshold() const { return 4 * s * r; }
  int max_level() const;
  void validate() const;
};

}  // namespace dws
