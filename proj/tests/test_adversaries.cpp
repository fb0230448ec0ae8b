#include <cmath>

#include "doctest.h"
#include "olt/adversaries.hpp"
#include "olt/bool_testers.hpp"
#include "olt/generators.hpp"
#include "olt/stats.hpp"
#include "test_support.hpp"

using namespace olt;

namespace {

uint64_t binom(uint64_t a, uint64_t b) {
  if (b > a) return 0;
  uint64_t r = 1;
  for (uint64_t i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

uint64_t floor_log2(uint64_t v) {
  uint64_t r = 0;
  while (v >>= 1) ++r;
  return r;
}

}  // namespace

TEST_CASE("span eraser walks the projected span") {
  BooleanFunctionTable f(4);
  OracleConfig cfg;
  cfg.t = Rational(4);
  SpanEraser adv(SpanEraserConfig{4, 2, 1 << 12}, 1);
  BitOracle oracle(16, [&f](uint64_t x) { return f.eval(x); }, cfg, &adv);

  oracle.query(0b0001);  // e1: Z = {0, e1}, so the origin gets erased
  CHECK(adv.z_size() == 2);
  CHECK(oracle.is_erased(0));
  CHECK(!oracle.is_erased(0b0010));

  oracle.query(0b0010);  // e2: Z = {0, e1, e2, e1^e2}
  CHECK(adv.z_size() == 4);
  CHECK(oracle.is_erased(0b0011));
  CHECK(oracle.spent() == 2);  // only the two fresh unqueried projections
}

TEST_CASE("span growth obeys the log-binomial bound in fuzzed games") {
  Rng rng(23);
  for (int game = 0; game < 800; ++game) {
    int n = 6 + static_cast<int>(rng.below(9));
    int d = 2 + static_cast<int>(rng.below(2));
    BooleanFunctionTable f = BooleanFunctionTable::random(n, rng);
    OracleConfig cfg;
    cfg.t = Rational(1 + static_cast<int64_t>(rng.below(6)));
    SpanEraser adv(SpanEraserConfig{n, d, 1 << 16}, rng.next());
    BitOracle oracle(f.size(), [&f](uint64_t x) { return f.eval(x); }, cfg, &adv);
    int queries = 8 + static_cast<int>(rng.below(8));
    for (int q = 0; q < queries; ++q) {
      oracle.query(rng.below(f.size()));
      if (adv.degraded()) break;
      CHECK(binom(floor_log2(adv.z_size()), static_cast<uint64_t>(d)) <= adv.answered_count());
    }
  }
}

TEST_CASE("span eraser is a function of the query sequence alone") {
  Rng rng(29);
  BooleanFunctionTable f1 = BooleanFunctionTable::random(8, rng);
  BooleanFunctionTable f2 = BooleanFunctionTable::random(8, rng);
  std::vector<uint64_t> queries;
  for (int i = 0; i < 24; ++i) queries.push_back(rng.below(256));
  auto run = [&](const BooleanFunctionTable& f) {
    OracleConfig cfg;
    cfg.t = Rational(3);
    cfg.record_transcript = true;
    SpanEraser adv(SpanEraserConfig{8, 2, 1 << 14}, 7);
    BitOracle oracle(256, [&f](uint64_t x) { return f.eval(x); }, cfg, &adv);
    for (uint64_t q : queries) oracle.query(q);
    std::vector<uint64_t> erased;
    for (const auto& ev : oracle.transcript().events) {
      if (ev.kind == TranscriptEvent<uint8_t>::kManipulate) erased.push_back(ev.point);
    }
    return erased;
  };
  CHECK(run(f1) == run(f2));
}

TEST_CASE("paired instances realize the displayed values") {
  Rng rng(31);
  PairedSequenceInstance plus = PairedSequenceInstance::sample_plus(1000, 0.0, rng);
  PairedSequenceInstance minus = PairedSequenceInstance::sample_minus(1000, 0.0, rng);
  for (uint64_t pos = 1; pos <= 1000; ++pos) {
    CHECK(plus.value(pos) == static_cast<double>(pos));
    CHECK(minus.value(pos) == static_cast<double>(pos));
  }

  // plus instances are always sorted
  for (int i = 0; i < 300; ++i) {
    PairedSequenceInstance inst = PairedSequenceInstance::sample_plus(256, 0.3, rng);
    CHECK(sortedness_property().holds(inst.materialize()));
  }
  // minus instances have expected sortedness distance eps
  const double eps = 0.25;
  const int draws = 3000;
  double total = 0;
  for (int i = 0; i < draws; ++i) {
    PairedSequenceInstance inst = PairedSequenceInstance::sample_minus(512, eps, rng);
    total += distance_to_sortedness(inst.materialize()).to_double();
  }
  double mean = total / draws;
  double sigma = std::sqrt(eps * (1 - eps) / (256.0 * draws));  // per-pair Bernoulli average
  CHECK(std::fabs(mean - eps) <= 4 * sigma);
}

TEST_CASE("partner erasure probabilities match on both instance families") {
  // Conditional on seeing f(x) = x at an odd fresh position, the partner is
  // erased with probability eps/(1-eps) under both distributions; seeing
  // f(x) = x + 1 forces the erasure.
  Rng rng(37);
  const double eps = 0.25;
  const uint64_t trials = 200000;  // per arm
  for (int arm = 0; arm < 2; ++arm) {
    uint64_t straight = 0, straight_erased = 0, shifted = 0, shifted_erased = 0;
    for (uint64_t i = 0; i < trials; ++i) {
      PairedSequenceInstance inst =
          arm == 0 ? PairedSequenceInstance::sample_plus(64, eps, rng)
                   : PairedSequenceInstance::sample_minus(64, eps, rng);
      SortednessAdversary adv(&inst, rng.next());
      OracleConfig cfg;
      cfg.t = Rational(60, 4);  // 60 * eps
      RealOracle oracle(64, [&inst](uint64_t p) { return inst.value(p + 1); }, cfg, &adv);
      uint64_t point = 2 * rng.below(32);  // odd position, 0-based oracle point
      double answer = *oracle.query(point);
      bool erased = oracle.is_erased(point ^ 1);
      if (answer == static_cast<double>(point + 1)) {
        ++straight;
        straight_erased += erased;
      } else if (answer == static_cast<double>(point + 2)) {
        ++shifted;
        shifted_erased += erased;
      }
    }
    double want = eps / (1 - eps);
    double phat = static_cast<double>(straight_erased) / static_cast<double>(straight);
    double sigma = std::sqrt(want * (1 - want) / static_cast<double>(straight));
    CHECK(std::fabs(phat - want) <= 3 * sigma);
    CHECK(shifted > 0);
    CHECK(shifted_erased == shifted);  // probability 1, exactly
  }
}

TEST_CASE("sortedness adversary stays within budget and replays clean") {
  Rng rng(41);
  for (int game = 0; game < 300; ++game) {
    PairedSequenceInstance inst = PairedSequenceInstance::sample_minus(256, 0.25, rng);
    SortednessAdversary adv(&inst, rng.next());
    OracleConfig cfg;
    cfg.t = Rational(15);
    cfg.record_transcript = true;
    RealOracle oracle(256, [&inst](uint64_t p) { return inst.value(p + 1); }, cfg, &adv);
    for (int q = 0; q < 64; ++q) oracle.query(rng.below(256));
    std::function<double(uint64_t)> base = [&inst](uint64_t p) { return inst.value(p + 1); };
    CHECK(replay(oracle.transcript(), &base).consistent);
  }
}

TEST_CASE("uniform eraser rarely shows up in linearity games at t=4") {
  Rng rng(43);
  const int n = 20;
  GeneratedBitInput input = random_linear(n, rng);
  const BooleanFunctionTable& f = input.table;
  uint64_t saw = 0;
  const int games = 300;
  for (int game = 0; game < games; ++game) {
    OracleConfig cfg;
    cfg.t = Rational(4);
    UniformEraser<uint8_t> adv(rng.next());
    BitOracle oracle(f.size(), [&f](uint64_t x) { return f.eval(x); }, cfg, &adv);
    BitVerdict v = online_linearity_test(oracle, n, 0.25, 4, rng);
    CHECK(v.accept);
    saw += v.saw_manipulation;
  }
  CHECK(static_cast<double>(saw) / games <= 1.0 / 3.0);
}

TEST_CASE("greedy xor eraser cannot break one-sidedness") {
  Rng rng(47);
  const int n = 12;
  for (int game = 0; game < 300; ++game) {
    GeneratedBitInput input = random_linear(n, rng);
    const BooleanFunctionTable& f = input.table;
    OracleConfig cfg;
    cfg.t = Rational(6);
    GreedyXorEraser adv(rng.next(), 20);
    BitOracle oracle(f.size(), [&f](uint64_t x) { return f.eval(x); }, cfg, &adv);
    CHECK(online_linearity_test(oracle, n, 0.25, 6, rng).accept);
  }
}
