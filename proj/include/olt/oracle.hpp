#ifndef OLT_ORACLE_HPP_
#define OLT_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "olt/errors.hpp"
#include "olt/rational.hpp"
#include "olt/rng.hpp"

namespace olt {

enum class ManipulationKind : uint8_t { kErasure, kCorruption };
enum class Scheduling : uint8_t { kFixedRate, kBudgetManaging };

struct OracleConfig {
  Rational t{0};  // manipulations per batch; rational so floor accounting is exact
  uint32_t batch = 1;
  Scheduling scheduling = Scheduling::kBudgetManaging;
  ManipulationKind kind = ManipulationKind::kErasure;
  // Whether the adversary may act before the very first batch. The model text
  // starts its accounting at the first answered batch; this stays off unless
  // an experiment explicitly probes the ambiguity.
  bool pre_game_manipulation = false;
  bool record_transcript = false;
};

// Manipulations the adversary may allot between batch i and i+1 of a
// fixed-rate schedule: floor((i+1)t) - floor(it). Exact rational arithmetic.
inline int64_t allotment(uint64_t i, const Rational& t) {
  Rational hi = Rational(static_cast<int64_t>(i) + 1) * t;
  Rational lo = Rational(static_cast<int64_t>(i)) * t;
  return hi.floor() - lo.floor();
}

template <class V>
struct QueryRecord {
  uint64_t point = 0;
  std::optional<V> answer;  // nullopt is the erasure marker
};

template <class V>
struct ManipulationRequest {
  ManipulationKind kind = ManipulationKind::kErasure;
  uint64_t point = 0;
  V value{};  // corruption replacement; ignored for erasures
};

template <class V>
struct TranscriptEvent {
  enum Kind : uint8_t { kQuery, kBatchBoundary, kManipulate } kind = kQuery;
  uint64_t point = 0;
  bool bot = false;
  V value{};
  ManipulationKind manip_kind = ManipulationKind::kErasure;
};

template <class V>
struct Transcript {
  OracleConfig config;
  uint64_t domain_size = 0;
  uint64_t seed = 0;
  std::vector<TranscriptEvent<V>> events;
};

// What a strategy is allowed to see when it moves: the clock, its remaining
// budget, and which points have been queried or erased. Input-aware
// strategies additionally hold the instance they were constructed with and
// must say so via input_aware().
template <class V>
struct AdversaryView {
  uint64_t clock = 0;
  uint64_t domain_size = 0;
  int64_t remaining_budget = 0;
  ManipulationKind kind = ManipulationKind::kErasure;
  std::function<bool(uint64_t)> is_queried;
  std::function<bool(uint64_t)> is_erased;
};

template <class V>
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual bool input_aware() const { return false; }
  // Invoked once per answered batch. The returned request list is validated
  // against the remaining budget as a whole: an over-budget list is rejected
  // atomically and the oracle state stays unchanged.
  virtual std::vector<ManipulationRequest<V>> on_batch(const std::vector<QueryRecord<V>>& batch,
                                                       const AdversaryView<V>& view) = 0;
};

// ---------------------------------------------------------------------------

// Mediates queries between a tester and an adversary. Enforces the
// fixed-rate/budget-managing accounting, answers repeated queries with the
// stored first answer, and (optionally) records a replayable transcript.
//
// One oracle per game; not thread-safe. Concurrent games own separate
// oracles.
template <class V>
class AdversarialOracle {
 public:
  AdversarialOracle(uint64_t domain_size, std::function<V(uint64_t)> base, OracleConfig config,
                    Adversary<V>* adversary = nullptr)
      : domain_size_(domain_size),
        base_(std::move(base)),
        config_(config),
        adversary_(adversary),
        flags_(domain_size) {
    if (config_.t < Rational(0)) throw ConfigError("oracle: t must be >= 0");
    if (config_.batch < 1) throw ConfigError("oracle: batch size must be >= 1");
    transcript_.config = config_;
    transcript_.domain_size = domain_size;
  }

  const OracleConfig& config() const { return config_; }
  uint64_t domain_size() const { return domain_size_; }
  uint64_t clock() const { return clock_; }
  uint64_t queries_made() const { return queries_; }
  int64_t spent() const { return spent_; }
  bool saw_manipulation() const { return saw_manipulation_; }
  uint64_t manipulations_applied() const { return static_cast<uint64_t>(spent_); }
  uint64_t rejected_request_lists() const { return rejected_lists_; }

  bool is_queried(uint64_t p) const { return flags_.get(p) & kQueried; }
  bool is_erased(uint64_t p) const { return flags_.get(p) & kErased; }
  bool is_corrupted(uint64_t p) const { return flags_.get(p) & kCorrupted; }
  V base_value(uint64_t p) const { return base_(p); }

  std::optional<V> first_answer(uint64_t p) const {
    uint8_t f = flags_.get(p);
    if (!(f & kQueried)) return std::nullopt;
    return stored_answer(p, f);
  }

  // Answers one batch of at most `batch` points from the current oracle view,
  // advances the clock, then lets the adversary move.
  const std::vector<QueryRecord<V>>& batch_query(std::span<const uint64_t> points) {
    if (points.size() > config_.batch)
      throw BatchTooLargeError("batch_query: " + std::to_string(points.size()) + " > b=" +
                               std::to_string(config_.batch));
    if (points.empty()) throw std::invalid_argument("batch_query: empty batch");
    last_batch_.clear();
    for (uint64_t p : points) {
      QueryRecord<V> rec;
      rec.point = p;
      rec.answer = answer_point(p);
      last_batch_.push_back(rec);
    }
    ++clock_;
    if (config_.record_transcript) {
      TranscriptEvent<V> ev;
      ev.kind = TranscriptEvent<V>::kBatchBoundary;
      transcript_.events.push_back(ev);
    }
    window_spent_ = 0;
    if (adversary_ != nullptr) run_adversary();
    return last_batch_;
  }

  std::optional<V> query(uint64_t point) {
    uint64_t pts[1] = {point};
    return batch_query(std::span<const uint64_t>(pts, 1))[0].answer;
  }

  // Manipulation budget still available in the current post-batch window.
  int64_t remaining_budget() const {
    int64_t pre = config_.pre_game_manipulation ? config_.t.floor() : 0;
    if (config_.scheduling == Scheduling::kFixedRate) {
      int64_t allowance = clock_ == 0 ? pre : allotment(clock_, config_.t);
      return allowance - window_spent_;
    }
    Rational cap = Rational(static_cast<int64_t>(clock_)) * config_.t;
    return cap.floor() + pre - spent_;
  }

  // Applies requests in order until the budget runs out; later requests are
  // rejected. Re-erasing an erased point (or re-writing the value already
  // visible) is a no-op that consumes nothing. Only legal between batches.
  size_t apply_manipulations(const std::vector<ManipulationRequest<V>>& requests) {
    require_window_open();
    size_t applied = 0;
    for (const auto& req : requests) {
      int cost = request_cost(req);
      if (cost == 0) {
        ++applied;  // no-op
        continue;
      }
      if (remaining_budget() < 1) break;
      commit(req);
      ++applied;
    }
    return applied;
  }

  const Transcript<V>& transcript() const { return transcript_; }
  void set_seed_note(uint64_t seed) { transcript_.seed = seed; }

 private:
  static constexpr uint8_t kQueried = 1;
  static constexpr uint8_t kBot = 2;
  static constexpr uint8_t kErased = 4;
  static constexpr uint8_t kCorrupted = 8;
  static constexpr uint8_t kBitValue = 16;
  static constexpr uint64_t kFlatLimit = uint64_t{1} << 24;

  // Per-point flag bytes; flat array for small domains, hash map for huge
  // (function-backed) ones.
  class FlagStore {
   public:
    explicit FlagStore(uint64_t domain) : flat_(domain <= kFlatLimit) {
      if (flat_) bytes_.assign(domain, 0);
    }
    uint8_t get(uint64_t p) const {
      if (flat_) return bytes_[p];
      auto it = map_.find(p);
      return it == map_.end() ? 0 : it->second;
    }
    void merge(uint64_t p, uint8_t bits) {
      if (flat_)
        bytes_[p] |= bits;
      else
        map_[p] |= bits;
    }

   private:
    bool flat_;
    std::vector<uint8_t> bytes_;
    std::unordered_map<uint64_t, uint8_t> map_;
  };

  std::optional<V> stored_answer(uint64_t p, uint8_t f) const {
    if (f & kBot) return std::nullopt;
    if constexpr (std::is_same_v<V, uint8_t>) {
      return static_cast<uint8_t>((f & kBitValue) ? 1 : 0);
    } else {
      return first_values_.at(p);
    }
  }

  std::optional<V> answer_point(uint64_t p) {
    if (p >= domain_size_) throw OutOfDomainError("query: point out of domain");
    ++queries_;
    uint8_t f = flags_.get(p);
    std::optional<V> ans;
    if (f & kQueried) {
      ans = stored_answer(p, f);  // repeated query: first recorded answer
    } else {
      if (f & kErased) {
        ans = std::nullopt;
      } else if (f & kCorrupted) {
        ans = corrupted_.at(p);
      } else {
        ans = base_(p);
      }
      uint8_t bits = kQueried;
      if (!ans.has_value()) {
        bits |= kBot;
      } else if constexpr (std::is_same_v<V, uint8_t>) {
        if (*ans) bits |= kBitValue;
      } else {
        first_values_.emplace(p, *ans);
      }
      flags_.merge(p, bits);
      if (!ans.has_value() || (f & kCorrupted)) saw_manipulation_ = true;
    }
    if (config_.record_transcript) {
      TranscriptEvent<V> ev;
      ev.kind = TranscriptEvent<V>::kQuery;
      ev.point = p;
      ev.bot = !ans.has_value();
      if (ans.has_value()) ev.value = *ans;
      transcript_.events.push_back(ev);
    }
    return ans;
  }

  void require_window_open() const {
    if (clock_ == 0 && !config_.pre_game_manipulation)
      throw MalformedTranscriptError("manipulation before the first batch");
  }

  // 1 if the request would change the oracle view, 0 for a no-op.
  int request_cost(const ManipulationRequest<V>& req) const {
    if (req.kind != config_.kind) throw WrongKindError("manipulation kind does not match oracle");
    if (req.point >= domain_size_) throw OutOfDomainError("manipulation: point out of domain");
    uint8_t f = flags_.get(req.point);
    if (req.kind == ManipulationKind::kErasure) return (f & kErased) ? 0 : 1;
    if (f & kCorrupted) return corrupted_.at(req.point) == req.value ? 0 : 1;
    return base_(req.point) == req.value ? 0 : 1;
  }

  void commit(const ManipulationRequest<V>& req) {
    if (req.kind == ManipulationKind::kErasure) {
      flags_.merge(req.point, kErased);
    } else {
      flags_.merge(req.point, kCorrupted);
      corrupted_[req.point] = req.value;
    }
    ++spent_;
    ++window_spent_;
    if (config_.record_transcript) {
      TranscriptEvent<V> ev;
      ev.kind = TranscriptEvent<V>::kManipulate;
      ev.point = req.point;
      ev.manip_kind = req.kind;
      if (req.kind == ManipulationKind::kCorruption) ev.value = req.value;
      transcript_.events.push_back(ev);
    }
  }

  void run_adversary() {
    AdversaryView<V> view;
    view.clock = clock_;
    view.domain_size = domain_size_;
    view.remaining_budget = remaining_budget();
    view.kind = config_.kind;
    view.is_queried = [this](uint64_t p) { return is_queried(p); };
    view.is_erased = [this](uint64_t p) { return is_erased(p); };
    std::vector<ManipulationRequest<V>> requests = adversary_->on_batch(last_batch_, view);
    if (requests.empty()) return;
    // Atomic validation: cost the list as a whole (duplicates inside the list
    // are no-ops after the first occurrence).
    int64_t cost = 0;
    for (size_t i = 0; i < requests.size(); ++i) {
      int c = request_cost(requests[i]);
      if (c == 1) {
        for (size_t j = 0; j < i && c == 1; ++j) {
          if (requests[j].point == requests[i].point && requests[j].kind == requests[i].kind &&
              (requests[i].kind == ManipulationKind::kErasure ||
               requests[j].value == requests[i].value))
            c = 0;
        }
      }
      cost += c;
    }
    if (cost > remaining_budget()) {
      ++rejected_lists_;
      return;  // rejected atomically; state unchanged
    }
    for (const auto& req : requests) {
      if (request_cost(req) == 1) commit(req);
    }
  }

  uint64_t domain_size_;
  std::function<V(uint64_t)> base_;
  OracleConfig config_;
  Adversary<V>* adversary_;

  FlagStore flags_;
  std::unordered_map<uint64_t, V> first_values_;  // unused for bit oracles
  std::unordered_map<uint64_t, V> corrupted_;
  std::vector<QueryRecord<V>> last_batch_;

  uint64_t clock_ = 0;
  uint64_t queries_ = 0;
  int64_t spent_ = 0;
  int64_t window_spent_ = 0;
  bool saw_manipulation_ = false;
  uint64_t rejected_lists_ = 0;
  Transcript<V> transcript_;
};

using BitOracle = AdversarialOracle<uint8_t>;
using RealOracle = AdversarialOracle<double>;
using BitAdversary = Adversary<uint8_t>;
using RealAdversary = Adversary<double>;

// ---------------------------------------------------------------------------
// Transcript audit.

struct ReplayResult {
  bool consistent = true;
  size_t violation_event = 0;  // index into events when !consistent
  std::string reason;
};

// Re-simulates a transcript and checks every oracle invariant: batch sizes,
// manipulation windows and budgets, erasure monotonicity, first-answer
// semantics, and (when a base function is supplied) answer fidelity. This
// audit is the ground truth the acceptance checks trust.
template <class V>
ReplayResult replay(const Transcript<V>& transcript,
                    const std::function<V(uint64_t)>* base = nullptr);

// Line format: one event per line after a header carrying config and seed.
std::string transcript_to_string(const Transcript<uint8_t>& t);
std::string transcript_to_string(const Transcript<double>& t);
Transcript<uint8_t> parse_bit_transcript(const std::string& text);
Transcript<double> parse_real_transcript(const std::string& text);

extern template ReplayResult replay<uint8_t>(const Transcript<uint8_t>&,
                                             const std::function<uint8_t(uint64_t)>*);
extern template ReplayResult replay<double>(const Transcript<double>&,
                                            const std::function<double(uint64_t)>*);

}  // namespace olt

#endif  // OLT_ORACLE_HPP_
