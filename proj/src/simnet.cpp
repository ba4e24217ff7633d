#include "dws/simnet.hpp"

#include <charconv>
#include <set>
#include <string_view>

namespace dws {

const char* partitioner_name(Partitioner p) {
  switch (p) {
    case Partitioner::RoundRobin: return "round-robin";
    case Partitioner::SingleSite: return "single-site";
    case Partitioner::Random: return "random";
    case Partitioner::AdversarialEpoch: return "adversarial-epoch";
    case Partitioner::FileOrder: return "file-order";
  }
  return "?";
}

namespace {

std::string_view next_field(std::string_view& rest) {
  auto pos = rest.find(',');
  std::string_view f = rest.substr(0, pos);
  rest = pos == std::string_view::npos ? std::string_view{} : rest.substr(pos + 1);
  return f;
}

std::uint64_t parse_u64(std::string_view f, std::uint64_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc{} || p != f.data() + f.size()) {
    throw protocol_violation("transcript line " + std::to_string(line) +
                             ": bad integer field");
  }
  return v;
}

double parse_double(std::string_view f, std::uint64_t line) {
  double v = 0;
  auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc{} || p != f.data() + f.size()) {
    throw protocol_violation("transcript line " + std::to_string(line) +
                             ": bad numeric field");
  }
  return v;
}

}  // namespace

TranscriptStats validate_transcript(const std::string& bytes) {
  TranscriptStats st;
  std::string_view rest(bytes);
  std::uint64_t line_no = 0;
  std::uint64_t last_round = 0;
  double last_epoch_threshold = 0.0;
  std::set<std::uint64_t> saturated_levels;

  while (!rest.empty()) {
    auto eol = rest.find('\n');
    if (eol == std::string_view::npos) {
      throw protocol_violation("transcript: missing trailing newline");
    }
    std::string_view line = rest.substr(0, eol);
    rest = rest.substr(eol + 1);
    ++line_no;
    if (line.empty()) {
      throw protocol_violation("transcript line " + std::to_string(line_no) +
                               ": empty");
    }
    if (line[0] == '#') continue;  // config header comments
    std::string_view cur = line;
    std::uint64_t round = parse_u64(next_field(cur), line_no);
    if (round < last_round) {
      throw protocol_violation("transcript line " + std::to_string(line_no) +
                               ": round moved backwards");
    }
    last_round = round;
    std::string_view kind = next_field(cur);
    std::string_view src = next_field(cur);
    std::string_view dst = next_field(cur);
    next_field(cur);  // id
    next_field(cur);  // weight
    std::string_view tail = cur;

    auto is_site = [](std::string_view v) {
      return v.size() >= 2 && v[0] == 's';
    };

    if (kind == "item") {
      if (src != "x" || !is_site(dst)) {
        throw protocol_violation("transcript line " + std::to_string(line_no) +
                                 ": item must flow from stream to a site");
      }
      continue;
    }
    if (kind == "digest") {
      if (tail.size() != 16) {
        throw protocol_violation("transcript line " + std::to_string(line_no) +
                                 ": digest must be 16 hex chars");
      }
      continue;
    }
    ++st.messages;
    bool upstream = kind == "early" || kind == "regular" || kind == "swr-slot";
    if (upstream) {
      if (!is_site(src) || dst != "c") {
        throw protocol_violation("transcript line " + std::to_string(line_no) +
                                 ": site message must target the coordinator");
      }
    } else if (kind == "level-saturated" || kind == "update-epoch" ||
               kind == "swr-round") {
      if (src != "c" || !is_site(dst)) {
        throw protocol_violation("transcript line " + std::to_string(line_no) +
                                 ": broadcast must flow coordinator to site");
      }
      if (kind == "update-epoch" && dst == "s0") {
        double thr = parse_double(tail, line_no);
        if (thr <= last_epoch_threshold) {
          throw protocol_violation("transcript line " + std::to_string(line_no) +
                                   ": epoch threshold did not increase");
        }
        last_epoch_threshold = thr;
      }
      if (kind == "level-saturated" && dst == "s0") {
        std::uint64_t lvl = parse_u64(tail, line_no);
        if (!saturated_levels.insert(lvl).second) {
          throw protocol_violation("transcript line " + std::to_string(line_no) +
                                   ": level saturated twice");
        }
      }
    } else {
      throw protocol_violation("transcript line " + std::to_string(line_no) +
                               ": unknown kind '" + std::string(kind) + "'");
    }
  }
  st.lines = line_no;
  return st;
}

}  // namespace dws
