#include "dws/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace dws {

const char* msg_kind_name(MsgKind k) {
  switch (k) {
    case MsgKind::Early: return "early";
    case MsgKind::Regular: return "regular";
    case MsgKind::LevelSaturated: return "level-saturated";
    case MsgKind::UpdateEpoch: return "update-epoch";
    case MsgKind::SwrSlot: return "swr-slot";
    case MsgKind::SwrRound: return "swr-round";
  }
  return "?";
}

Site::Site(const ProtocolParams& params, int index)
    : params_(params), index_(index),
      saturated_(static_cast<std::size_t>(params.max_level()) + 1, 0) {}

bool Site::level_saturated(int j) const {
  return j >= 0 && j < static_cast<int>(saturated_.size()) && saturated_[j];
}

std::optional<Message> Site::on_item(const WeightedItem& item,
                                     BitSource& src) {
  int j = level_of(item.weight, params_.r);
  if (j >= static_cast<int>(saturated_.size())) {
    throw protocol_violation("site: weight " + std::to_string(item.weight) +
                             " above configured maximum");
  }
  Message m;
  m.src = index_;
  m.dst = -1;
  m.id = item.id;
  m.weight = item.weight;
  m.seq = item.seq;
  if (!saturated_[j]) {
    m.kind = MsgKind::Early;
    m.level = j;
    return m;
  }
  m.kind = MsgKind::Regular;
  if (u_ <= 0.0) {
    // no epoch announced yet: every key passes
    m.key = gen_key(item.weight, src).value;
    return m;
  }
  if (item.weight != tau_w_ || u_ != tau_u_) {
    tau_w_ = item.weight;
    tau_u_ = u_;
    tau_ = std::exp(-item.weight / u_);
  }
  LazyDecision d = key_exceeds_given_tau(tau_, src);
  if (!d.exceeds) return std::nullopt;
  m.key = extend_key(item.weight, d.state, src).value;
  return m;
}

void Site::on_broadcast(const Message& m) {
  switch (m.kind) {
    case MsgKind::LevelSaturated: {
      if (m.level < 0 || m.level >= static_cast<int>(saturated_.size())) {
        throw protocol_violation("site: saturation for level out of range");
      }
      if (saturated_[m.level]) {
        throw protocol_violation("site: level " + std::to_string(m.level) +
                                 " saturated twice");
      }
      saturated_[m.level] = 1;
      break;
    }
    case MsgKind::UpdateEpoch: {
      if (m.threshold < u_) {
        throw protocol_violation("site: epoch threshold regressed from " +
                                 std::to_string(u_) + " to " +
                                 std::to_string(m.threshold));
      }
      u_ = m.threshold;
      break;
    }
    default:
      throw protocol_violation("site: unexpected broadcast kind");
  }
}

Coordinator::Coordinator(const ProtocolParams& params)
    : params_(params),
      levels_(static_cast<std::size_t>(params.max_level()) + 1) {}

std::uint64_t Coordinator::level_count(int j) const {
  return levels_.at(static_cast<std::size_t>(j)).count;
}

bool Coordinator::level_saturated(int j) const {
  return levels_.at(static_cast<std::size_t>(j)).saturated;
}

std::optional<Message> Coordinator::add_to_sample(const Triple& t) {
  if (params_.record_releases) releases_.push_back(t.seq);
  sample_.insert(t);
  if (sample_.size() > static_cast<std::size_t>(params_.s)) {
    sample_.erase(sample_.begin());
  }
  double nu = sample_.size() == static_cast<std::size_t>(params_.s)
                  ? sample_.begin()->key
                  : 0.0;
  if (nu < u_) {
    throw protocol_violation("coordinator: sample threshold regressed");
  }
  u_ = nu;
  int ep = u_ > 0.0 ? level_of(u_, params_.r) : 0;
  if (ep > epoch_) {
    epoch_ = ep;
    epoch_threshold_ = level_boundary(params_.r, ep);
    Message b;
    b.kind = MsgKind::UpdateEpoch;
    b.src = -1;
    b.dst = -2;
    b.threshold = epoch_threshold_;
    return b;
  }
  return std::nullopt;
}

std::vector<Message> Coordinator::on_message(const Message& m,
                                             BitSource& src) {
  std::vector<Message> out;
  switch (m.kind) {
    case MsgKind::Early: {
      int j = level_of(m.weight, params_.r);
      if (j >= static_cast<int>(levels_.size())) {
        throw protocol_violation("coordinator: weight above configured maximum");
      }
      LevelSet& L = levels_[static_cast<std::size_t>(j)];
      if (L.saturated) {
        throw protocol_violation("coordinator: early item for saturated level " +
                                 std::to_string(j));
      }
      Triple t{m.id, m.weight, gen_key(m.weight, src).value, m.seq};
      L.count += 1;
      if (!params_.space_optimized) {
        L.buffer.push_back(t);
      } else {
        // keep an item only if it enters this level's running top-s; items
        // that never do provably cannot influence the sample or the queries
        auto rank = std::make_pair(t.key, t.seq);
        if (L.top.size() < static_cast<std::size_t>(params_.s)) {
          L.top.insert(rank);
          L.buffer.push_back(t);
        } else if (rank > *L.top.begin()) {
          L.top.erase(L.top.begin());
          L.top.insert(rank);
          L.buffer.push_back(t);
        }
      }
      if (L.count > static_cast<std::uint64_t>(params_.saturation_threshold())) {
        throw protocol_violation("coordinator: level buffer overran its bound");
      }
      if (L.count ==
          static_cast<std::uint64_t>(params_.saturation_threshold())) {
        for (const Triple& b : L.buffer) {
          if (auto upd = add_to_sample(b)) out.push_back(*upd);
        }
        L.buffer.clear();
        L.buffer.shrink_to_fit();
        L.top.clear();
        L.saturated = true;
        Message sat;
        sat.kind = MsgKind::LevelSaturated;
        sat.src = -1;
        sat.dst = -2;
        sat.level = j;
        out.push_back(sat);
      }
      break;
    }
    case MsgKind::Regular: {
      if (m.key <= u_) break;  // filtered against a smaller site threshold
      if (auto upd = add_to_sample(Triple{m.id, m.weight, m.key, m.seq})) {
        out.push_back(*upd);
      }
      break;
    }
    default:
      throw protocol_violation("coordinator: unexpected message kind");
  }
  return out;
}

std::vector<SampleEntry> Coordinator::query() const {
  std::vector<Triple> pool(sample_.begin(), sample_.end());
  for (const LevelSet& L : levels_) {
    if (!L.saturated) {
      pool.insert(pool.end(), L.buffer.begin(), L.buffer.end());
    }
  }
  std::sort(pool.begin(), pool.end(), [](const Triple& a, const Triple& b) {
    if (a.key != b.key) return a.key > b.key;
    return a.seq > b.seq;
  });
  if (pool.size() > static_cast<std::size_t>(params_.s)) {
    pool.resize(static_cast<std::size_t>(params_.s));
  }
  std::vector<SampleEntry> out;
  out.reserve(pool.size());
  for (const Triple& t : pool) {
    out.push_back(SampleEntry{t.id, t.weight, t.key, t.seq});
  }
  return out;
}

}  // namespace dws
