#ifndef OLT_SEQ_TESTERS_HPP_
#define OLT_SEQ_TESTERS_HPP_

#include <cstdint>
#include <vector>

#include "olt/bool_testers.hpp"
#include "olt/oracle.hpp"
#include "olt/rational.hpp"
#include "olt/rng.hpp"
#include "olt/sequence.hpp"

namespace olt {

// Number of gap levels for the pair sampler: floor(log2(eps n / 4)).
// Errors out when eps*n < 4.
int pair_levels(uint64_t n, double eps);

struct SampledPair {
  int level = 0;
  uint64_t x = 0;
  uint64_t y = 0;
};

// Level i uniform on [0:ell], then a uniform pair at cyclic gap 2^i: the n
// ordered pairs (x, y) with y - x = 2^i (mod n), 1-based positions.
SampledPair sample_pair(uint64_t n, int ell, Rng& rng);

// The pair tester. Runs ceil(200 log(eps n) / eps) rounds; each samples a
// gap-2^i pair, queries it (one batch of two, or two batches of one,
// following the oracle's batch size), and rejects iff both answers are
// present and the pair is unrepairable. One-sided under erasures. Requires
// eps*n >= 8.
RealVerdict pair_tester(RealOracle& oracle, const LocalPropertySpec& prop, double eps, Rng& rng);

// ---------------------------------------------------------------------------
// Shifted hierarchical partition.

struct Interval {
  uint64_t lo = 0;
  uint64_t hi = 0;
  enum Extremal : uint8_t { kInner, kLeft, kRight } extremal = kInner;

  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

// Layers T_0..T_ell over [n]: layer i covers [a, a+w] with intervals of
// length 2^i + 1 that overlap at endpoints, extended by a left-extremal
// interval starting at 1 and a right-extremal one ending at n.
struct ShiftedPartition {
  uint64_t a = 0;
  uint64_t w = 0;
  int ell = 0;
  uint64_t n = 0;
  std::vector<std::vector<Interval>> layers;
};

ShiftedPartition shifted_partition(uint64_t a, uint64_t w, int ell, uint64_t n);

// The two positions an interval contributes when sampled at layer i:
// its endpoints, except that extremal intervals query the boundary-aligned
// pair {a, a+2^i} resp. {a+w-2^i, a+w}.
std::pair<uint64_t, uint64_t> query_pair(const ShiftedPartition& t, int layer, const Interval& iv);

// Offline structured tester: ceil(20 log(eps n)/eps) rounds of (random shift,
// random layer, random interval), rejecting on an unrepairable query pair.
RealVerdict hierarchical_tester(const RealSequence& f, const LocalPropertySpec& prop, double eps,
                                Rng& rng);

// Witness intervals whose ancestors are all non-witnesses.
struct LayeredInterval {
  int layer = 0;
  Interval interval;
};
std::vector<LayeredInterval> enumerate_maximal_witnesses(const RealSequence& f,
                                                         const LocalPropertySpec& prop,
                                                         const ShiftedPartition& t);

// sum_i |T_i cap U| / |T_i| as an exact rational.
Rational witness_layer_ratio_sum(const RealSequence& f, const LocalPropertySpec& prop,
                                 const ShiftedPartition& t);

// ---------------------------------------------------------------------------
// Fixed-rate scheduling wrapper, t < 1.

// Runs each pair-tester round at a timestamp i with floor((i+1)t) = floor(it),
// so no erasure can land between the round's two queries; the slots in
// between are spent on dummy queries at uniform positions. Requires a
// fixed-rate batch-1 erasure oracle.
RealVerdict fixed_rate_pair_tester(RealOracle& oracle, const LocalPropertySpec& prop, double eps,
                                   const Rational& t, Rng& rng);

}  // namespace olt

#endif  // OLT_SEQ_TESTERS_HPP_
