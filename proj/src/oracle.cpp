#include "olt/oracle.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace olt {

namespace {

constexpr uint8_t kQueried = 1;
constexpr uint8_t kBot = 2;

std::string format_value(uint8_t v) { return v ? "1" : "0"; }
std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool parse_value(const std::string& s, uint8_t* out) {
  if (s == "0") {
    *out = 0;
    return true;
  }
  if (s == "1") {
    *out = 1;
    return true;
  }
  return false;
}
bool parse_value(const std::string& s, double* out) {
  try {
    size_t used = 0;
    *out = std::stod(s, &used);
    return used == s.size();
  } catch (...) {
    return false;
  }
}

template <class V>
std::string transcript_to_string_impl(const Transcript<V>& t) {
  std::ostringstream out;
  const OracleConfig& c = t.config;
  out << "H v=1 size=" << t.domain_size
      << " kind=" << (c.kind == ManipulationKind::kErasure ? "erasure" : "corruption")
      << " sched=" << (c.scheduling == Scheduling::kFixedRate ? "fixed" : "budget")
      << " t=" << c.t.str() << " b=" << c.batch << " pregame=" << (c.pre_game_manipulation ? 1 : 0)
      << " seed=" << t.seed << "\n";
  for (const auto& ev : t.events) {
    switch (ev.kind) {
      case TranscriptEvent<V>::kQuery:
        out << "Q " << ev.point << " " << (ev.bot ? std::string("!") : format_value(ev.value)) << "\n";
        break;
      case TranscriptEvent<V>::kBatchBoundary:
        out << "B\n";
        break;
      case TranscriptEvent<V>::kManipulate:
        if (ev.manip_kind == ManipulationKind::kErasure)
          out << "M erase " << ev.point << "\n";
        else
          out << "M corrupt " << ev.point << " " << format_value(ev.value) << "\n";
        break;
    }
  }
  return out.str();
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

template <class V>
Transcript<V> parse_transcript_impl(const std::string& text) {
  Transcript<V> t;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw MalformedTranscriptError("line " + std::to_string(lineno) + ": " + why);
    };
    if (!have_header) {
      if (toks[0] != "H") fail("expected header line");
      for (size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos) fail("bad header field " + toks[i]);
        std::string key = toks[i].substr(0, eq);
        std::string val = toks[i].substr(eq + 1);
        if (key == "size")
          t.domain_size = std::stoull(val);
        else if (key == "kind")
          t.config.kind = val == "corruption" ? ManipulationKind::kCorruption : ManipulationKind::kErasure;
        else if (key == "sched")
          t.config.scheduling = val == "fixed" ? Scheduling::kFixedRate : Scheduling::kBudgetManaging;
        else if (key == "t")
          t.config.t = Rational::parse(val);
        else if (key == "b")
          t.config.batch = static_cast<uint32_t>(std::stoul(val));
        else if (key == "pregame")
          t.config.pre_game_manipulation = val == "1";
        else if (key == "seed")
          t.seed = std::stoull(val);
        else if (key != "v")
          fail("unknown header field " + key);
      }
      have_header = true;
      continue;
    }
    TranscriptEvent<V> ev;
    if (toks[0] == "Q") {
      if (toks.size() != 3) fail("Q expects <point> <answer>");
      ev.kind = TranscriptEvent<V>::kQuery;
      ev.point = std::stoull(toks[1]);
      if (toks[2] == "!") {
        ev.bot = true;
      } else if (!parse_value(toks[2], &ev.value)) {
        fail("bad answer " + toks[2]);
      }
    } else if (toks[0] == "B") {
      ev.kind = TranscriptEvent<V>::kBatchBoundary;
    } else if (toks[0] == "M") {
      if (toks.size() < 3) fail("M expects <kind> <point>");
      ev.kind = TranscriptEvent<V>::kManipulate;
      ev.point = std::stoull(toks[2]);
      if (toks[1] == "erase") {
        ev.manip_kind = ManipulationKind::kErasure;
      } else if (toks[1] == "corrupt") {
        ev.manip_kind = ManipulationKind::kCorruption;
        if (toks.size() != 4 || !parse_value(toks[3], &ev.value)) fail("bad corruption value");
      } else {
        fail("unknown manipulation kind " + toks[1]);
      }
    } else {
      fail("unknown event " + toks[0]);
    }
    t.events.push_back(ev);
  }
  if (!have_header) throw MalformedTranscriptError("missing header line");
  return t;
}

}  // namespace

std::string transcript_to_string(const Transcript<uint8_t>& t) { return transcript_to_string_impl(t); }
std::string transcript_to_string(const Transcript<double>& t) { return transcript_to_string_impl(t); }
Transcript<uint8_t> parse_bit_transcript(const std::string& text) {
  return parse_transcript_impl<uint8_t>(text);
}
Transcript<double> parse_real_transcript(const std::string& text) {
  return parse_transcript_impl<double>(text);
}

template <class V>
ReplayResult replay(const Transcript<V>& t, const std::function<V(uint64_t)>* base) {
  const OracleConfig& cfg = t.config;
  std::unordered_map<uint64_t, uint8_t> flags;
  std::unordered_map<uint64_t, V> first_values;
  std::unordered_map<uint64_t, bool> erased;
  std::unordered_map<uint64_t, V> corrupted;
  uint64_t clock = 0;
  int64_t spent = 0;
  int64_t window_spent = 0;
  uint32_t queries_in_batch = 0;
  int64_t pregame_allowance = cfg.pre_game_manipulation ? cfg.t.floor() : 0;

  auto violation = [](size_t idx, const std::string& why) {
    ReplayResult r;
    r.consistent = false;
    r.violation_event = idx;
    r.reason = why;
    return r;
  };

  for (size_t idx = 0; idx < t.events.size(); ++idx) {
    const TranscriptEvent<V>& ev = t.events[idx];
    switch (ev.kind) {
      case TranscriptEvent<V>::kQuery: {
        if (ev.point >= t.domain_size) return violation(idx, "query out of domain");
        if (queries_in_batch >= cfg.batch) return violation(idx, "batch exceeds b");
        uint8_t& f = flags[ev.point];
        if (f & kQueried) {
          // First-answer semantics: repeats must echo the stored answer.
          bool was_bot = (f & kBot) != 0;
          if (was_bot != ev.bot) return violation(idx, "repeated query answer changed");
          if (!ev.bot && !(first_values[ev.point] == ev.value))
            return violation(idx, "repeated query answer changed");
        } else {
          bool is_erased = erased.count(ev.point) > 0;
          if (ev.bot && !is_erased) return violation(idx, "bot answer from a non-erased point");
          if (!ev.bot && is_erased) return violation(idx, "erased point answered a value");
          if (!ev.bot) {
            auto c = corrupted.find(ev.point);
            if (c != corrupted.end()) {
              if (!(c->second == ev.value)) return violation(idx, "answer differs from corrupted value");
            } else if (base != nullptr && !((*base)(ev.point) == ev.value)) {
              return violation(idx, "answer differs from the base function");
            }
            first_values[ev.point] = ev.value;
          }
          f |= kQueried | (ev.bot ? kBot : 0);
        }
        ++queries_in_batch;
        break;
      }
      case TranscriptEvent<V>::kBatchBoundary: {
        if (queries_in_batch == 0) return violation(idx, "empty batch");
        ++clock;
        queries_in_batch = 0;
        window_spent = 0;
        break;
      }
      case TranscriptEvent<V>::kManipulate: {
        if (queries_in_batch != 0) return violation(idx, "manipulation inside a batch");
        if (clock == 0 && !cfg.pre_game_manipulation)
          return violation(idx, "manipulation before the first batch");
        if (ev.manip_kind != cfg.kind) return violation(idx, "manipulation kind mismatch");
        if (ev.point >= t.domain_size) return violation(idx, "manipulation out of domain");
        int cost = 1;
        if (ev.manip_kind == ManipulationKind::kErasure) {
          if (erased.count(ev.point)) cost = 0;
        } else {
          auto c = corrupted.find(ev.point);
          if (c != corrupted.end() && c->second == ev.value) cost = 0;
          if (c == corrupted.end() && base != nullptr && (*base)(ev.point) == ev.value) cost = 0;
        }
        if (cost == 1) {
          if (cfg.scheduling == Scheduling::kFixedRate) {
            int64_t allowance = clock == 0 ? pregame_allowance : allotment(clock, cfg.t);
            if (window_spent + 1 > allowance) return violation(idx, "fixed-rate window budget exceeded");
          } else {
            Rational cap = Rational(static_cast<int64_t>(clock)) * cfg.t;
            if (spent + 1 > cap.floor() + pregame_allowance)
              return violation(idx, "budget-managing cap exceeded");
          }
          ++spent;
          ++window_spent;
        }
        if (ev.manip_kind == ManipulationKind::kErasure)
          erased[ev.point] = true;
        else
          corrupted[ev.point] = ev.value;
        break;
      }
    }
  }
  return ReplayResult{};
}

template ReplayResult replay<uint8_t>(const Transcript<uint8_t>&,
                                      const std::function<uint8_t(uint64_t)>*);
template ReplayResult replay<double>(const Transcript<double>&,
                                     const std::function<double(uint64_t)>*);

}  // namespace olt
