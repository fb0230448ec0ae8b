#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "olt/adversaries.hpp"
#include "olt/generators.hpp"
#include "olt/seq_testers.hpp"
#include "olt/stats.hpp"

using namespace olt;

namespace {

RealOracle seq_oracle(const RealSequence& f, OracleConfig cfg, RealAdversary* adv = nullptr) {
  return RealOracle(f.n(), [&f](uint64_t p) { return f.at(p + 1); }, cfg, adv);
}

}  // namespace

TEST_CASE("pair sampling: levels, cyclic pairs, exact marginals") {
  CHECK(pair_levels(64, 0.5) == 3);
  CHECK_THROWS_AS(pair_levels(6, 0.5), InstanceTooSmallError);

  // D_1(4) = {(1,2),(2,3),(3,4),(4,1)}
  Rng rng(3);
  std::map<std::pair<uint64_t, uint64_t>, int> seen;
  for (int i = 0; i < 4000; ++i) {
    SampledPair sp = sample_pair(4, 0, rng);
    ++seen[{sp.x, sp.y}];
  }
  CHECK(seen.size() == 4);
  CHECK(seen.count({4, 1}) == 1);  // the wrapped pair

  // Every z in [n] is covered by exactly 2(ell+1) of the (ell+1)*n outcomes.
  for (uint64_t n : {8u, 16u, 32u}) {
    for (int ell = 0; (uint64_t{1} << ell) < n; ++ell) {
      for (uint64_t z = 1; z <= n; ++z) {
        int64_t hits = 0;
        for (int i = 0; i <= ell; ++i) {
          uint64_t gap = uint64_t{1} << i;
          for (uint64_t x = 1; x <= n; ++x) {
            uint64_t y = ((x - 1 + gap) % n) + 1;
            if (x == z || y == z) ++hits;
          }
        }
        CHECK(Rational(hits, static_cast<int64_t>((ell + 1) * n)) ==
              Rational(2, static_cast<int64_t>(n)));
      }
    }
  }
}

TEST_CASE("pair tester: one-sided and sound offline") {
  Rng rng(5);
  GeneratedSeqInput sorted = sorted_identity(512);
  OracleConfig cfg;
  cfg.t = Rational(1);
  cfg.batch = 2;
  for (int game = 0; game < 200; ++game) {
    PartnerEraser adv;
    RealOracle oracle = seq_oracle(sorted.seq, cfg, &adv);
    CHECK(pair_tester(oracle, sortedness_property(), 0.25, rng).accept);
  }

  GeneratedSeqInput far = planted_far_sorted(4096, 0.25, rng);
  REQUIRE(far.certified_distance->to_double() >= 0.25);
  uint64_t rejects = 0;
  const int games = 400;
  for (int game = 0; game < games; ++game) {
    OracleConfig off;
    off.t = Rational(0);
    off.batch = 2;
    RealOracle oracle = seq_oracle(far.seq, off);
    if (!pair_tester(oracle, sortedness_property(), 0.25, rng).accept) ++rejects;
  }
  CHECK(wilson_interval(rejects, games).lower >= 6.0 / 7.0);

  OracleConfig bad;
  bad.batch = 3;
  RealOracle oracle = seq_oracle(sorted.seq, bad);
  CHECK_THROWS_AS(pair_tester(oracle, sortedness_property(), 0.25, rng), ConfigError);
  OracleConfig one;
  one.batch = 1;
  RealOracle small(8, [](uint64_t p) { return static_cast<double>(p); }, one);
  CHECK_THROWS_AS(pair_tester(small, sortedness_property(), 0.5, rng), InstanceTooSmallError);
}

TEST_CASE("shifted partitions match the interval arithmetic") {
  ShiftedPartition t = shifted_partition(2, 8, 2, 12);
  REQUIRE(t.layers.size() == 3);
  const auto& t0 = t.layers[0];
  REQUIRE(t0.size() == 8);
  CHECK(t0.front().lo == 1);
  CHECK(t0.front().hi == 3);
  CHECK(t0.front().extremal == Interval::kLeft);
  CHECK(t0[1].lo == 3);
  CHECK(t0[1].hi == 4);
  CHECK(t0[6].lo == 8);
  CHECK(t0[6].hi == 9);
  CHECK(t0.back().lo == 9);
  CHECK(t0.back().hi == 12);
  CHECK(t0.back().extremal == Interval::kRight);

  auto qp = query_pair(t, 0, t0.front());
  CHECK(qp.first == 2);
  CHECK(qp.second == 3);

  // Each layer covers [1, n]; consecutive intervals share exactly endpoints.
  for (int layer = 0; layer <= 2; ++layer) {
    const auto& ivs = t.layers[static_cast<size_t>(layer)];
    CHECK(ivs.front().lo == 1);
    CHECK(ivs.back().hi == 12);
    for (size_t j = 0; j + 1 < ivs.size(); ++j) CHECK(ivs[j].hi == ivs[j + 1].lo);
  }
  CHECK_THROWS(shifted_partition(2, 7, 2, 12));   // not divisible by 2^ell
  CHECK_THROWS(shifted_partition(8, 8, 1, 12));   // a + w > n
}

TEST_CASE("hierarchical tester: sorted accepts, certified-far rejects") {
  Rng rng(7);
  GeneratedSeqInput sorted = sorted_identity(1024);
  for (int game = 0; game < 100; ++game) {
    CHECK(hierarchical_tester(sorted.seq, sortedness_property(), 0.25, rng).accept);
  }
  GeneratedSeqInput far = planted_far_sorted(1024, 0.25, rng);
  uint64_t rejects = 0;
  const int games = 400;
  for (int game = 0; game < games; ++game) {
    if (!hierarchical_tester(far.seq, sortedness_property(), 0.25, rng).accept) ++rejects;
  }
  CHECK(wilson_interval(rejects, games).lower >= 6.0 / 7.0);
  RealSequence tiny({1, 2, 3});
  CHECK_THROWS_AS(hierarchical_tester(tiny, sortedness_property(), 0.25, rng),
                  InstanceTooSmallError);
}

TEST_CASE("single-round rejection rate of the structured tester meets eps/(8 log eps n)") {
  Rng rng(11);
  const uint64_t n = 1024;
  const double eps = 0.25;
  GeneratedSeqInput far = planted_far_sorted(n, eps, rng);
  int ell = pair_levels(n, eps);
  uint64_t step = uint64_t{1} << ell;
  uint64_t w = static_cast<uint64_t>(std::floor((n - eps * n / 4.0) / step)) * step;
  uint64_t shifts = static_cast<uint64_t>(std::ceil(eps * n / 4.0));
  uint64_t rejects = 0;
  const uint64_t rounds = 200000;
  for (uint64_t round = 0; round < rounds; ++round) {
    uint64_t a = 1 + rng.below(shifts);
    uint64_t wa = a + w > n ? w - step : w;
    ShiftedPartition t = shifted_partition(a, wa, ell, n);
    int layer = static_cast<int>(rng.below(static_cast<uint64_t>(ell) + 1));
    const auto& ivs = t.layers[static_cast<size_t>(layer)];
    const Interval& iv = ivs[rng.below(ivs.size())];
    auto [x, y] = query_pair(t, layer, iv);
    if (pair_unrepairable(sortedness_property(), n, x, y, far.seq.at(x), far.seq.at(y))) ++rejects;
  }
  double emp = static_cast<double>(rejects) / static_cast<double>(rounds);
  double bound = eps / (8.0 * std::log2(eps * n));
  double sigma = std::sqrt(emp * (1 - emp) / static_cast<double>(rounds));
  CHECK(emp >= bound - 3 * sigma);
}

TEST_CASE("maximal witness intervals") {
  GeneratedSeqInput sorted = sorted_identity(64);
  ShiftedPartition t = shifted_partition(3, 48, 3, 64);
  CHECK(enumerate_maximal_witnesses(sorted.seq, sortedness_property(), t).empty());

  // One adjacent inversion: the layer-0 interval over it is the only witness.
  std::vector<double> vals(64);
  for (uint64_t i = 0; i < 64; ++i) vals[i] = static_cast<double>(i + 1);
  std::swap(vals[20], vals[21]);
  RealSequence f(std::move(vals));
  auto witnesses = enumerate_maximal_witnesses(f, sortedness_property(), t);
  REQUIRE(witnesses.size() == 1);
  CHECK(witnesses[0].layer == 0);
  CHECK(witnesses[0].interval.lo == 21);
  CHECK(witnesses[0].interval.hi == 22);
}

TEST_CASE("layer ratio sum reaches eps/8 on certified-far sequences") {
  Rng rng(13);
  const uint64_t n = 1024;
  const double eps = 0.25;
  int ell = pair_levels(n, eps);
  uint64_t step = uint64_t{1} << ell;
  uint64_t w = static_cast<uint64_t>(std::floor((n - eps * n / 4.0) / step)) * step;
  uint64_t shifts = static_cast<uint64_t>(std::ceil(eps * n / 4.0));
  for (int inst = 0; inst < 5; ++inst) {
    GeneratedSeqInput far = planted_far_sorted(n, eps, rng);
    for (int rep = 0; rep < 20; ++rep) {
      uint64_t a = 1 + rng.below(shifts);
      uint64_t wa = a + w > n ? w - step : w;
      ShiftedPartition t = shifted_partition(a, wa, ell, n);
      Rational sum = witness_layer_ratio_sum(far.seq, sortedness_property(), t);
      CHECK(sum >= Rational(1, 32));  // eps / 8
    }
  }
}

TEST_CASE("structured tester pair marginals: at most 8/(n log eps n), zero off-gap") {
  const uint64_t n = 64;
  const double eps = 0.5;
  int ell = pair_levels(n, eps);  // 3
  uint64_t step = uint64_t{1} << ell;
  uint64_t w = static_cast<uint64_t>(std::floor((n - eps * n / 4.0) / step)) * step;
  uint64_t shifts = static_cast<uint64_t>(std::ceil(eps * n / 4.0));
  std::map<std::pair<uint64_t, uint64_t>, Rational> mass;
  for (uint64_t a = 1; a <= shifts; ++a) {
    REQUIRE(a + w <= n);
    ShiftedPartition t = shifted_partition(a, w, ell, n);
    for (int layer = 0; layer <= ell; ++layer) {
      const auto& ivs = t.layers[static_cast<size_t>(layer)];
      for (const Interval& iv : ivs) {
        auto qp = query_pair(t, layer, iv);
        Rational p(1, static_cast<int64_t>(shifts * (ell + 1) * ivs.size()));
        auto key = std::minmax(qp.first, qp.second);
        auto it = mass.find({key.first, key.second});
        if (it == mass.end())
          mass.insert({{key.first, key.second}, p});
        else
          it->second = it->second + p;
      }
    }
  }
  Rational bound(8, static_cast<int64_t>(n) * 5);  // log2(eps n) = 5 exactly
  for (const auto& [pair, p] : mass) {
    uint64_t gap = pair.second - pair.first;
    bool power_gap = (gap & (gap - 1)) == 0 && gap <= step;
    CHECK(power_gap);
    CHECK(p <= bound);
  }
}

TEST_CASE("fixed-rate scheduling: zero-allotment slots and one-sidedness") {
  // At t = 1/2 the empty windows sit after the even batches.
  for (uint64_t i = 1; i <= 20; ++i) {
    CHECK((allotment(i, Rational(1, 2)) == 0) == (i % 2 == 0));
  }
  Rng rng(17);
  GeneratedSeqInput sorted = sorted_identity(1024);
  for (int game = 0; game < 200; ++game) {
    OracleConfig cfg;
    cfg.t = Rational(3, 4);
    cfg.scheduling = Scheduling::kFixedRate;
    UniformEraser<double> adv(rng.next());
    RealOracle oracle = seq_oracle(sorted.seq, cfg, &adv);
    CHECK(fixed_rate_pair_tester(oracle, sortedness_property(), 0.25, Rational(3, 4), rng).accept);
  }
  OracleConfig cfg;
  cfg.t = Rational(3, 2);
  cfg.scheduling = Scheduling::kFixedRate;
  RealOracle oracle = seq_oracle(sorted.seq, cfg);
  CHECK_THROWS(fixed_rate_pair_tester(oracle, sortedness_property(), 0.25, Rational(3, 2), rng));
}

TEST_CASE("fixed-rate pair tester rejects certified-far sequences under random erasures") {
  Rng rng(19);
  GeneratedSeqInput far = planted_far_sorted(uint64_t{1} << 16, 0.25, rng);
  uint64_t rejects = 0;
  const int games = 300;
  for (int game = 0; game < games; ++game) {
    OracleConfig cfg;
    cfg.t = Rational(1, 2);
    cfg.scheduling = Scheduling::kFixedRate;
    UniformEraser<double> adv(rng.next());
    RealOracle oracle = seq_oracle(far.seq, cfg, &adv);
    if (!fixed_rate_pair_tester(oracle, sortedness_property(), 0.25, Rational(1, 2), rng).accept)
      ++rejects;
  }
  CHECK(wilson_interval(rejects, games).lower >= 2.0 / 3.0);
}
