#include "dws/streams.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace dws::streams {

namespace {

void finalize_seqs(Stream& s) {
  std::uint64_t seq = 1;
  for (auto& it : s.items) it.seq = seq++;
}

std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t n) {
  // modulo draw; bias is immaterial at 64-bit range for desk-scale n
  return eng() % n;
}

void append_double(std::string& out, double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

}  // namespace

const char* stream_kind_name(StreamKind k) {
  switch (k) {
    case StreamKind::Unit: return "unit";
    case StreamKind::Zipf: return "zipf";
    case StreamKind::SkewedGiants: return "skewed-giants";
    case StreamKind::HhLower: return "hh-lower";
    case StreamKind::EpochLower: return "epoch-lower";
    case StreamKind::File: return "file";
  }
  return "?";
}

std::string StreamSpec::describe() const {
  std::ostringstream os;
  os << stream_kind_name(kind);
  switch (kind) {
    case StreamKind::Unit: os << " n=" << n; break;
    case StreamKind::Zipf:
      os << " n=" << n << " alpha=" << zipf_alpha
         << " universe=" << zipf_universe << " seed=" << seed;
      break;
    case StreamKind::SkewedGiants:
      os << " n=" << n << " giants=" << giants << "x" << giant_weight
         << " mids=" << mids << "x" << mid_weight << " seed=" << seed;
      break;
    case StreamKind::HhLower: os << " eps=" << eps << " count=" << count; break;
    case StreamKind::EpochLower:
      os << " k=" << lb_k << " eta=" << lb_eta << " seed=" << seed;
      break;
    case StreamKind::File: os << " path=" << path; break;
  }
  return os.str();
}

Stream generate(const StreamSpec& spec) {
  switch (spec.kind) {
    case StreamKind::Unit: return gen_unit(spec.n);
    case StreamKind::Zipf:
      return gen_zipf(spec.n, spec.zipf_alpha, spec.zipf_universe, spec.seed);
    case StreamKind::SkewedGiants:
      return gen_skewed_giants(spec.giants, spec.giant_weight, spec.mids,
                               spec.mid_weight, spec.n, spec.seed);
    case StreamKind::HhLower: return gen_hh_lower(spec.eps, spec.count);
    case StreamKind::EpochLower:
      return gen_epoch_lower(spec.lb_k, spec.lb_eta, spec.seed);
    case StreamKind::File: return ingest(spec.path);
  }
  throw std::domain_error("generate: unknown stream kind");
}

Stream gen_unit(std::uint64_t n) {
  Stream s;
  s.items.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    s.items.push_back(WeightedItem{i, 1.0, 0, 0});
  }
  finalize_seqs(s);
  return s;
}

Stream gen_zipf(std::uint64_t n, double alpha, std::uint64_t universe,
                std::uint64_t seed) {
  if (universe < 1) throw std::domain_error("zipf: empty universe");
  if (!(alpha > 0)) throw std::domain_error("zipf: alpha must be positive");
  std::vector<double> cum(universe);
  double acc = 0.0;
  for (std::uint64_t r = 0; r < universe; ++r) {
    acc += std::pow(static_cast<double>(r + 1), -alpha);
    cum[r] = acc;
  }
  BitSource src(derive_seed(seed, 0x5a69u));
  Stream s;
  s.items.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    double u = uniform_from_prefix(src.next_word()) * acc;
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    auto rank = static_cast<ItemId>(it - cum.begin());
    s.items.push_back(WeightedItem{rank, 1.0, 0, 0});
  }
  finalize_seqs(s);
  return s;
}

Stream gen_skewed_giants(std::uint64_t giants, double giant_weight,
                         std::uint64_t mids, double mid_weight,
                         std::uint64_t n, std::uint64_t seed) {
  if (giants + mids > n) {
    throw std::domain_error("skewed-giants: more heavy items than the length");
  }
  if (giants > 0) validate_weight(giant_weight);
  if (mids > 0) validate_weight(mid_weight);
  Stream s;
  s.items.reserve(n);
  ItemId id = 0;
  for (std::uint64_t i = 0; i < giants; ++i) {
    s.items.push_back(WeightedItem{id++, giant_weight, 0, 0});
  }
  for (std::uint64_t i = 0; i < mids; ++i) {
    s.items.push_back(WeightedItem{id++, mid_weight, 0, 0});
  }
  while (s.items.size() < n) s.items.push_back(WeightedItem{id++, 1.0, 0, 0});
  deterministic_shuffle(s.items, derive_seed(seed, 0x5b1fu));
  finalize_seqs(s);
  return s;
}

Stream gen_hh_lower(double eps, std::uint64_t count) {
  if (!(eps > 0.0) || !(eps < 0.5)) {
    throw std::domain_error("hh-lower: eps must lie in (0, 1/2)");
  }
  // raw weights 1, eps(1+eps)^i; emitted scaled by 1/eps so every weight
  // clears the floor of 1
  Stream s;
  s.items.reserve(count + 1);
  s.items.push_back(WeightedItem{0, 1.0 / eps, 0, 0});
  double w = 1.0;
  for (std::uint64_t i = 1; i <= count; ++i) {
    w *= (1.0 + eps);
    validate_weight(w);
    s.items.push_back(WeightedItem{i, w, 0, 0});
  }
  finalize_seqs(s);
  return s;
}

Stream gen_epoch_lower(int k, int eta, std::uint64_t seed) {
  if (k < 2) throw std::domain_error("epoch-lower: need k >= 2");
  if (eta < 1) throw std::domain_error("epoch-lower: need eta >= 1");
  double total = std::pow(static_cast<double>(k), eta);
  if (total > 16777216.0) {
    throw std::domain_error("epoch-lower: k^eta too large to materialize");
  }
  std::mt19937_64 eng(derive_seed(seed, 0xE70Cu));
  Stream s;
  s.items.reserve(static_cast<std::size_t>(total));
  ItemId id = 0;
  s.items.push_back(WeightedItem{id++, 1.0, 0, 0});
  std::uint64_t pow_i = 1;  // k^i
  for (int i = 0; i < eta; ++i) {
    std::uint64_t block = pow_i * static_cast<std::uint64_t>(k) - pow_i;
    std::vector<std::uint32_t> order(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) order[static_cast<std::size_t>(j)] = j;
    for (std::size_t j = order.size(); j > 1; --j) {
      std::swap(order[j - 1], order[bounded(eng, j)]);
    }
    // one contiguous run per site, lengths as equal as the block allows
    std::uint64_t base = block / static_cast<std::uint64_t>(k);
    std::uint64_t extra = block % static_cast<std::uint64_t>(k);
    for (int j = 0; j < k; ++j) {
      std::uint64_t run = base + (static_cast<std::uint64_t>(j) < extra ? 1 : 0);
      for (std::uint64_t t = 0; t < run; ++t) {
        s.items.push_back(WeightedItem{id++, 1.0, order[static_cast<std::size_t>(j)], 0});
      }
    }
    pow_i *= static_cast<std::uint64_t>(k);
  }
  finalize_seqs(s);
  return s;
}

Stream ingest(const std::string& path, int k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ingest: cannot open " + path);
  Stream s;
  std::unordered_map<std::string, ItemId> interned;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;  // config header comments
    if (line.empty()) {
      throw std::runtime_error("ingest: " + path + ":" +
                               std::to_string(lineno) + ": empty line");
    }
    auto c1 = line.find(',');
    auto c2 = c1 == std::string::npos ? std::string::npos
                                      : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::runtime_error("ingest: " + path + ":" +
                               std::to_string(lineno) +
                               ": expected site,id,weight");
    }
    std::string site_tok = line.substr(0, c1);
    std::string id_tok = line.substr(c1 + 1, c2 - c1 - 1);
    std::string w_tok = line.substr(c2 + 1);

    std::uint32_t site = 0;
    auto sr = std::from_chars(site_tok.data(), site_tok.data() + site_tok.size(), site);
    if (sr.ec != std::errc{} || sr.ptr != site_tok.data() + site_tok.size()) {
      throw std::runtime_error("ingest: " + path + ":" +
                               std::to_string(lineno) + ": bad site index");
    }
    if (k > 0 && site >= static_cast<std::uint32_t>(k)) {
      throw std::runtime_error("ingest: " + path + ":" +
                               std::to_string(lineno) +
                               ": site out of range for k=" + std::to_string(k));
    }
    if (id_tok.empty()) {
      throw std::runtime_error("ingest: " + path + ":" +
                               std::to_string(lineno) + ": empty id");
    }
    double w = 0.0;
    auto wr = std::from_chars(w_tok.data(), w_tok.data() + w_tok.size(), w);
    if (wr.ec != std::errc{} || wr.ptr != w_tok.data() + w_tok.size()) {
      throw std::runtime_error("ingest: " + path + ":" +
                               std::to_string(lineno) + ": bad weight");
    }
    try {
      validate_weight(w);
    } catch (const std::domain_error& e) {
      throw std::runtime_error("ingest: " + path + ":" +
                               std::to_string(lineno) + ": " + e.what());
    }
    auto [it, fresh] =
        interned.try_emplace(id_tok, static_cast<ItemId>(s.labels.size()));
    if (fresh) s.labels.push_back(id_tok);
    s.items.push_back(WeightedItem{it->second, w, site, 0});
  }
  finalize_seqs(s);
  return s;
}

void write_csv(const Stream& s, std::ostream& out) {
  std::string buf;
  for (const auto& it : s.items) {
    buf.clear();
    buf += std::to_string(it.site);
    buf += ',';
    if (!s.labels.empty()) {
      buf += s.labels.at(static_cast<std::size_t>(it.id));
    } else {
      buf += std::to_string(it.id);
    }
    buf += ',';
    append_double(buf, it.weight);
    buf += '\n';
    out << buf;
  }
}

void deterministic_shuffle(std::vector<WeightedItem>& items,
                           std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  for (std::size_t j = items.size(); j > 1; --j) {
    std::swap(items[j - 1], items[bounded(eng, j)]);
  }
}

}  // namespace dws::streams
