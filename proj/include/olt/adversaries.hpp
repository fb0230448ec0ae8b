#ifndef OLT_ADVERSARIES_HPP_
#define OLT_ADVERSARIES_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "olt/boolfun.hpp"
#include "olt/f2vec.hpp"
#include "olt/oracle.hpp"
#include "olt/rng.hpp"
#include "olt/sequence.hpp"

namespace olt {

// ---------------------------------------------------------------------------
// Baselines.

template <class V>
class IdentityAdversary : public Adversary<V> {
 public:
  std::vector<ManipulationRequest<V>> on_batch(const std::vector<QueryRecord<V>>&,
                                               const AdversaryView<V>&) override {
    return {};
  }
};

// Spends the full allotment erasing uniform fresh points.
template <class V>
class UniformEraser : public Adversary<V> {
 public:
  explicit UniformEraser(uint64_t seed) : rng_(seed) {}

  std::vector<ManipulationRequest<V>> on_batch(const std::vector<QueryRecord<V>>&,
                                               const AdversaryView<V>& view) override {
    std::vector<ManipulationRequest<V>> reqs;
    for (int64_t i = 0; i < view.remaining_budget; ++i) {
      for (int attempt = 0; attempt < 64; ++attempt) {
        uint64_t p = rng_.below(view.domain_size);
        if (!view.is_queried(p) && !view.is_erased(p)) {
          reqs.push_back({ManipulationKind::kErasure, p, V{}});
          break;
        }
      }
    }
    return reqs;
  }

 private:
  Rng rng_;
};

// Corruption baseline: flips the base value at uniform fresh points, one per
// budget unit. Needs the pristine table, hence input-aware.
class BitFlipper : public BitAdversary {
 public:
  BitFlipper(const BooleanFunctionTable* base, uint64_t seed) : base_(base), rng_(seed) {}
  bool input_aware() const override { return true; }

  std::vector<ManipulationRequest<uint8_t>> on_batch(const std::vector<QueryRecord<uint8_t>>&,
                                                     const AdversaryView<uint8_t>& view) override;

 private:
  const BooleanFunctionTable* base_;
  Rng rng_;
};

// Erases XORs of random subsets of the last `window` queries: the natural
// greedy heuristic against reserve-and-XOR testers.
class GreedyXorEraser : public BitAdversary {
 public:
  GreedyXorEraser(uint64_t seed, size_t window = 20) : rng_(seed), window_(window) {}

  std::vector<ManipulationRequest<uint8_t>> on_batch(const std::vector<QueryRecord<uint8_t>>& batch,
                                                     const AdversaryView<uint8_t>& view) override;

 private:
  Rng rng_;
  size_t window_;
  std::deque<uint64_t> recent_;
};

// ---------------------------------------------------------------------------
// Span eraser: after each successfully answered query y, inserts the
// monomial extension ext(y) into a running basis and tries to erase every
// fresh projection of the span. Budget shortfalls queue to later windows.
// Input-oblivious: everything it does is a function of the query sequence.

struct SpanEraserConfig {
  int n = 0;
  int d = 1;
  uint64_t span_cap = uint64_t{1} << 20;  // degrade to sampling beyond this
};

class SpanEraser : public BitAdversary {
 public:
  SpanEraser(const SpanEraserConfig& cfg, uint64_t seed);

  std::vector<ManipulationRequest<uint8_t>> on_batch(const std::vector<QueryRecord<uint8_t>>& batch,
                                                     const AdversaryView<uint8_t>& view) override;

  // Claim-style accounting for tests: |Z| (distinct span projections) and the
  // number of distinct answered queries folded into the basis.
  uint64_t z_size() const { return z_size_; }
  uint64_t answered_count() const { return answered_count_; }
  bool degraded() const { return tracker_.overflowed(); }
  size_t basis_rank() const { return tracker_.rank(); }

 private:
  void note_projection(uint64_t p, const AdversaryView<uint8_t>& view);

  SpanEraserConfig cfg_;
  SubsetIndexer indexer_;
  SpanTracker tracker_;
  Rng rng_;
  std::vector<uint64_t> seen_bits_;  // projections already in Z (bitset over the cube)
  std::vector<uint64_t> inserted_bits_;
  std::deque<uint64_t> pending_;
  uint64_t z_size_ = 0;
  uint64_t answered_count_ = 0;
};

// ---------------------------------------------------------------------------
// Paired-sequence instances and the sortedness impossibility strategy.

enum class PairKind : uint8_t { kIncreasing, kLow, kHigh, kViolating };
enum class PairDistribution : uint8_t { kPlus, kMinus };

// A sequence built from independent pair types on positions (2i-1, 2i):
//   increasing -> (2i-1, 2i);  low -> (2i-1, 2i-1);  high -> (2i, 2i);
//   violating  -> (2i, 2i-1).
// The plus distribution draws low/high/increasing with weights
// (eps, eps, 1-2eps); the minus distribution draws violating/increasing with
// weights (eps, 1-eps).
class PairedSequenceInstance {
 public:
  static PairedSequenceInstance sample_plus(uint64_t n, double eps, Rng& rng);
  static PairedSequenceInstance sample_minus(uint64_t n, double eps, Rng& rng);
  // The identity sequence as an implicit all-increasing instance; usable at
  // sizes where materializing pair types is out of the question.
  static PairedSequenceInstance all_increasing(uint64_t n, double eps);

  uint64_t n() const { return n_; }
  double eps() const { return eps_; }
  PairDistribution source() const { return source_; }

  PairKind pair_type(uint64_t pair_index) const {  // pair_index in [1, n/2]
    if (types_.empty()) return PairKind::kIncreasing;
    return types_[pair_index - 1];
  }

  double value(uint64_t pos) const;  // pos in [1, n]
  RealSequence materialize() const;

 private:
  PairedSequenceInstance(uint64_t n, double eps, PairDistribution src)
      : n_(n), eps_(eps), source_(src) {}

  uint64_t n_ = 0;
  double eps_ = 0;
  PairDistribution source_ = PairDistribution::kPlus;
  std::vector<PairKind> types_;
};

// The partner of a 1-based position under the fixed (2i-1, 2i) pairing.
inline uint64_t pair_partner(uint64_t pos) { return (pos % 2 == 1) ? pos + 1 : pos - 1; }

// The indistinguishability strategy: on a fresh query into a non-increasing
// pair, erase the partner; on a fresh query into an increasing pair, erase
// the partner with probability eps/(1-eps) when the instance came from the
// minus distribution (and never otherwise, matching the plus protocol).
// Budget shortfalls queue and retry. Input-aware via the pair types.
class SortednessAdversary : public RealAdversary {
 public:
  SortednessAdversary(const PairedSequenceInstance* instance, uint64_t seed)
      : instance_(instance), rng_(seed) {}
  bool input_aware() const override { return true; }

  std::vector<ManipulationRequest<double>> on_batch(const std::vector<QueryRecord<double>>& batch,
                                                    const AdversaryView<double>& view) override;

  bool ever_deferred() const { return ever_deferred_; }
  uint64_t erasures_requested() const { return requested_; }

 private:
  const PairedSequenceInstance* instance_;
  Rng rng_;
  std::deque<uint64_t> pending_;
  bool ever_deferred_ = false;
  uint64_t requested_ = 0;
};

// Erases the partner of every freshly queried position, unconditionally.
// Input-oblivious (the pairing is positional).
class PartnerEraser : public RealAdversary {
 public:
  std::vector<ManipulationRequest<double>> on_batch(const std::vector<QueryRecord<double>>& batch,
                                                    const AdversaryView<double>& view) override;

 private:
  std::deque<uint64_t> pending_;
};

}  // namespace olt

#endif  // OLT_ADVERSARIES_HPP_
