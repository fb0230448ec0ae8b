#include "olt/seq_testers.hpp"

#include <cmath>
#include <stdexcept>

#include "olt/errors.hpp"

namespace olt {

int pair_levels(uint64_t n, double eps) {
  double en = eps * static_cast<double>(n);
  if (en < 4.0) throw InstanceTooSmallError("pair sampler: eps*n >= 4 required");
  return static_cast<int>(std::floor(std::log2(en / 4.0)));
}

SampledPair sample_pair(uint64_t n, int ell, Rng& rng) {
  if (ell < 0) throw std::invalid_argument("sample_pair: ell >= 0");
  SampledPair sp;
  sp.level = static_cast<int>(rng.below(static_cast<uint64_t>(ell) + 1));
  uint64_t gap = uint64_t{1} << sp.level;
  sp.x = 1 + rng.below(n);
  sp.y = ((sp.x - 1 + gap) % n) + 1;
  return sp;
}

namespace {

int64_t pair_tester_rounds(uint64_t n, double eps) {
  return static_cast<int64_t>(std::ceil(200.0 * std::log2(eps * static_cast<double>(n)) / eps));
}

}  // namespace

RealVerdict pair_tester(RealOracle& oracle, const LocalPropertySpec& prop, double eps, Rng& rng) {
  uint64_t n = oracle.domain_size();
  if (eps * static_cast<double>(n) < 8.0)
    throw InstanceTooSmallError("pair_tester: eps*n >= 8 required");
  uint32_t b = oracle.config().batch;
  if (b != 1 && b != 2) throw ConfigError("pair_tester: batch size must be 1 or 2");
  int ell = pair_levels(n, eps);
  int64_t rounds = pair_tester_rounds(n, eps);
  RealVerdict verdict;
  for (int64_t it = 0; it < rounds; ++it) {
    SampledPair sp = sample_pair(n, ell, rng);
    // Positions are 1-based; oracle points are 0-based.
    std::optional<double> ax, ay;
    if (b == 2) {
      uint64_t pts[2] = {sp.x - 1, sp.y - 1};
      const auto& recs = oracle.batch_query(std::span<const uint64_t>(pts, 2));
      ax = recs[0].answer;
      ay = recs[1].answer;
    } else {
      ax = oracle.query(sp.x - 1);
      ay = oracle.query(sp.y - 1);
    }
    if (ax.has_value() && ay.has_value() &&
        pair_unrepairable(prop, n, sp.x, sp.y, *ax, *ay)) {
      verdict.accept = false;
      verdict.witness = {{sp.x, *ax}, {sp.y, *ay}};
      break;
    }
  }
  verdict.saw_manipulation = oracle.saw_manipulation();
  return verdict;
}

ShiftedPartition shifted_partition(uint64_t a, uint64_t w, int ell, uint64_t n) {
  if (ell < 0 || a < 1 || w < 1 || a + w > n)
    throw std::invalid_argument("shifted_partition: need a >= 1, w >= 1, a + w <= n");
  if (w % (uint64_t{1} << ell) != 0)
    throw std::invalid_argument("shifted_partition: w must be divisible by 2^ell");
  ShiftedPartition t;
  t.a = a;
  t.w = w;
  t.ell = ell;
  t.n = n;
  t.layers.resize(static_cast<size_t>(ell) + 1);
  for (int i = 0; i <= ell; ++i) {
    uint64_t step = uint64_t{1} << i;
    auto& layer = t.layers[static_cast<size_t>(i)];
    layer.push_back({1, a + step, Interval::kLeft});
    uint64_t inner = w / step >= 2 ? w / step - 2 : 0;
    for (uint64_t j = 1; j <= inner; ++j) {
      layer.push_back({a + j * step, a + (j + 1) * step, Interval::kInner});
    }
    layer.push_back({a + w - step, n, Interval::kRight});
  }
  return t;
}

std::pair<uint64_t, uint64_t> query_pair(const ShiftedPartition& t, int layer, const Interval& iv) {
  uint64_t step = uint64_t{1} << layer;
  switch (iv.extremal) {
    case Interval::kLeft:
      return {t.a, t.a + step};
    case Interval::kRight:
      return {t.a + t.w - step, t.a + t.w};
    default:
      return {iv.lo, iv.hi};
  }
}

RealVerdict hierarchical_tester(const RealSequence& f, const LocalPropertySpec& prop, double eps,
                                Rng& rng) {
  uint64_t n = f.n();
  if (static_cast<double>(n) < 16.0 / eps)
    throw InstanceTooSmallError("hierarchical_tester: n >= 16/eps required");
  int ell = pair_levels(n, eps);
  uint64_t step = uint64_t{1} << ell;
  double limit = static_cast<double>(n) - eps * static_cast<double>(n) / 4.0;
  uint64_t w = static_cast<uint64_t>(std::floor(limit / static_cast<double>(step))) * step;
  uint64_t shifts = static_cast<uint64_t>(std::ceil(eps * static_cast<double>(n) / 4.0));
  int64_t rounds = static_cast<int64_t>(std::ceil(20.0 * std::log2(eps * static_cast<double>(n)) / eps));
  RealVerdict verdict;
  for (int64_t it = 0; it < rounds; ++it) {
    uint64_t a = 1 + rng.below(shifts);
    uint64_t wa = w;
    if (a + wa > n) wa -= step;  // ceiling-boundary clamp
    ShiftedPartition t = shifted_partition(a, wa, ell, n);
    int layer = static_cast<int>(rng.below(static_cast<uint64_t>(ell) + 1));
    const auto& ivs = t.layers[static_cast<size_t>(layer)];
    const Interval& iv = ivs[rng.below(ivs.size())];
    auto [x, y] = query_pair(t, layer, iv);
    if (pair_unrepairable(prop, n, x, y, f.at(x), f.at(y))) {
      verdict.accept = false;
      verdict.witness = {{x, f.at(x)}, {y, f.at(y)}};
      break;
    }
  }
  return verdict;
}

namespace {

bool is_witness(const RealSequence& f, const LocalPropertySpec& prop, const Interval& iv) {
  if (iv.lo == 1) return !prop.prefix_fillable(iv.hi, f.at(iv.hi));
  if (iv.hi == f.n()) return !prop.suffix_fillable(iv.lo, f.at(iv.lo));
  return !prop.gap_fillable(iv.lo, iv.hi, f.at(iv.lo), f.at(iv.hi));
}

bool strictly_contains(const Interval& outer, const Interval& inner) {
  return outer.lo <= inner.lo && inner.hi <= outer.hi && !(outer == inner);
}

}  // namespace

std::vector<LayeredInterval> enumerate_maximal_witnesses(const RealSequence& f,
                                                         const LocalPropertySpec& prop,
                                                         const ShiftedPartition& t) {
  std::vector<std::vector<char>> witness(t.layers.size());
  for (size_t i = 0; i < t.layers.size(); ++i) {
    witness[i].resize(t.layers[i].size());
    for (size_t j = 0; j < t.layers[i].size(); ++j)
      witness[i][j] = is_witness(f, prop, t.layers[i][j]) ? 1 : 0;
  }
  std::vector<LayeredInterval> maximal;
  for (size_t i = 0; i < t.layers.size(); ++i) {
    for (size_t j = 0; j < t.layers[i].size(); ++j) {
      if (!witness[i][j]) continue;
      bool ancestor_witness = false;
      for (size_t up = i + 1; up < t.layers.size() && !ancestor_witness; ++up) {
        for (size_t k = 0; k < t.layers[up].size(); ++k) {
          if (witness[up][k] && strictly_contains(t.layers[up][k], t.layers[i][j])) {
            ancestor_witness = true;
            break;
          }
        }
      }
      if (!ancestor_witness) maximal.push_back({static_cast<int>(i), t.layers[i][j]});
    }
  }
  return maximal;
}

Rational witness_layer_ratio_sum(const RealSequence& f, const LocalPropertySpec& prop,
                                 const ShiftedPartition& t) {
  std::vector<LayeredInterval> u = enumerate_maximal_witnesses(f, prop, t);
  Rational sum(0);
  for (size_t i = 0; i < t.layers.size(); ++i) {
    int64_t count = 0;
    for (const auto& li : u)
      if (li.layer == static_cast<int>(i)) ++count;
    sum = sum + Rational(count, static_cast<int64_t>(t.layers[i].size()));
  }
  return sum;
}

RealVerdict fixed_rate_pair_tester(RealOracle& oracle, const LocalPropertySpec& prop, double eps,
                                   const Rational& t, Rng& rng) {
  if (t >= Rational(1)) throw std::invalid_argument("fixed_rate_pair_tester: t < 1 required");
  if (oracle.config().scheduling != Scheduling::kFixedRate || oracle.config().batch != 1)
    throw ConfigError("fixed_rate_pair_tester: fixed-rate batch-1 oracle required");
  uint64_t n = oracle.domain_size();
  if (eps * static_cast<double>(n) < 8.0)
    throw InstanceTooSmallError("fixed_rate_pair_tester: eps*n >= 8 required");
  int ell = pair_levels(n, eps);
  int64_t rounds = pair_tester_rounds(n, eps);
  RealVerdict verdict;
  for (int64_t it = 0; it < rounds; ++it) {
    // Advance to the next batch index i with floor((i+1)t) = floor(it): the
    // adversary's window after batch i is empty, so the round's two queries
    // straddle no erasure opportunity.
    for (;;) {
      uint64_t next = oracle.clock() + 1;
      if (allotment(next, t) == 0) break;
      oracle.query(rng.below(n));  // dummy
    }
    SampledPair sp = sample_pair(n, ell, rng);
    std::optional<double> ax = oracle.query(sp.x - 1);
    std::optional<double> ay = oracle.query(sp.y - 1);
    if (ax.has_value() && ay.has_value() &&
        pair_unrepairable(prop, n, sp.x, sp.y, *ax, *ay)) {
      verdict.accept = false;
      verdict.witness = {{sp.x, *ax}, {sp.y, *ay}};
      break;
    }
  }
  verdict.saw_manipulation = oracle.saw_manipulation();
  return verdict;
}

}  // namespace olt
