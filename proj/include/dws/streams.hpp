#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dws/core.hpp"

// Stream construction: synthetic workloads for the samplers and the trackers,
// plus CSV ingestion. Items carry a site assignment that the simulator may
// honor or override depending on its partitioner.

namespace dws::streams {

struct Stream {
  std::vector<WeightedItem> items;
  // present when ingested from a file: original identifier tokens, by id
  std::vector<std::string> labels;
};

enum class StreamKind { Unit, Zipf, SkewedGiants, HhLower, EpochLower, File };

const char* stream_kind_name(StreamKind k);

struct StreamSpec {
  StreamKind kind = StreamKind::Unit;
  std::uint64_t n = 0;          // total items (Unit, Zipf, SkewedGiants)
  double zipf_alpha = 1.2;
  std::uint64_t zipf_universe = 10000;
  std::uint64_t giants = 0;     // SkewedGiants
  double giant_weight = 1.0;
  std::uint64_t mids = 0;
  double mid_weight = 1.0;
  double eps = 0.1;             // HhLower
  std::uint64_t count = 0;      // HhLower items beyond the first
  int lb_k = 2;                 // EpochLower
  int lb_eta = 1;
  std::uint64_t seed = 0;       // shuffle/draw seed where applicable
  std::string path;             // File

  std::string describe() const;
};

Stream generate(const StreamSpec& spec);

// n items of weight 1, ids 0..n-1.
Stream gen_unit(std::uint64_t n);

// Unit-weight items whose ids follow a Zipf(alpha) law over a fixed universe.
Stream gen_zipf(std::uint64_t n, double alpha, std::uint64_t universe,
                std::uint64_t seed);

// giants items of giant_weight, mids of mid_weight, the rest weight 1,
// deterministically shuffled.
Stream gen_skewed_giants(std::uint64_t giants, double giant_weight,
                         std::uint64_t mids, double mid_weight,
                         std::uint64_t n, std::uint64_t seed);

// Worst-case heavy-hitter stream: geometric weights (1+eps)^i, scaled so the
// smallest weight is 1; item i is always an eps-fraction of the prefix total.
Stream gen_hh_lower(double eps, std::uint64_t count);

// Worst-case epoch stream for k sites: k^eta unit items where the i-th epoch
// block has k^(i+1) - k^i items, one contiguous run per site, site order
// permuted by seed. Items carry their site assignments.
Stream gen_epoch_lower(int k, int eta, std::uint64_t seed);

// Reads "site,id,weight" lines (LF, no header). Identifier tokens are
// interned in first-appearance order; weights must be finite and >= 1.
// When k > 0, site indices are validated against it.
Stream ingest(const std::string& path, int k = 0);

void write_csv(const Stream& s, std::ostream& out);

// In-place Fisher-Yates with explicit draws, stable across platforms.
void deterministic_shuffle(std::vector<WeightedItem>& items,
                           std::uint64_t seed);

}  // namespace dws::streams
