#include "doctest.h"
#include "olt/adversaries.hpp"
#include "olt/oracle.hpp"
#include "olt/rng.hpp"
#include "test_support.hpp"

using namespace olt;
using olt_test::ScriptedAdversary;

TEST_CASE("allotment floor arithmetic") {
  for (uint64_t i = 1; i < 50; ++i) CHECK(allotment(i, Rational(1)) == 1);
  CHECK(allotment(1, Rational(1, 2)) == 1);
  CHECK(allotment(2, Rational(1, 2)) == 0);
  CHECK(allotment(1, Rational(5, 2)) == 3);
  CHECK(allotment(2, Rational(5, 2)) == 2);
}

TEST_CASE("fixed-rate schedules stay within the budget-managing cap") {
  for (const Rational& t : {Rational(1, 3), Rational(1, 2), Rational(1), Rational(5, 2)}) {
    Rational running(0);
    for (int64_t i = 1; i <= 100000; ++i) {
      running = running + Rational(allotment(static_cast<uint64_t>(i), t));
      CHECK(running <= Rational(i) * t);
    }
  }
}

TEST_CASE("batch answers follow base, first-answer, and erasure semantics") {
  BooleanFunctionTable f = olt_test::and_table();
  OracleConfig cfg;
  cfg.t = Rational(4);
  cfg.batch = 2;
  BitOracle oracle(4, [&f](uint64_t x) { return f.eval(x); }, cfg);

  uint64_t pts[2] = {3, 0};
  const auto& recs = oracle.batch_query(std::span<const uint64_t>(pts, 2));
  CHECK(recs[0].answer == uint8_t{1});
  CHECK(recs[1].answer == uint8_t{0});
  CHECK(oracle.clock() == 1);

  // erase a fresh point, then query it: the erasure marker comes back
  CHECK(oracle.apply_manipulations({{ManipulationKind::kErasure, 2, 0}}) == 1);
  CHECK(oracle.query(2) == std::nullopt);
  CHECK(oracle.saw_manipulation());

  // erasing an answered point does not rewrite history
  CHECK(oracle.apply_manipulations({{ManipulationKind::kErasure, 3, 0}}) == 1);
  CHECK(oracle.query(3) == uint8_t{1});
  CHECK(oracle.queries_made() == 4);
}

TEST_CASE("over-budget adversary request lists are rejected atomically") {
  BooleanFunctionTable f(3);
  ScriptedAdversary<uint8_t> adv([](const auto&, const AdversaryView<uint8_t>& view) {
    CHECK(view.remaining_budget == 2);  // budget-managing, t=2, after batch 1
    std::vector<ManipulationRequest<uint8_t>> reqs;
    reqs.push_back({ManipulationKind::kErasure, 1, 0});
    reqs.push_back({ManipulationKind::kErasure, 2, 0});
    reqs.push_back({ManipulationKind::kErasure, 3, 0});
    return reqs;
  });
  OracleConfig cfg;
  cfg.t = Rational(2);
  BitOracle oracle(8, [&f](uint64_t x) { return f.eval(x); }, cfg, &adv);
  oracle.query(0);
  CHECK(oracle.spent() == 0);  // whole list rejected, state unchanged
  CHECK(oracle.rejected_request_lists() == 1);
  for (uint64_t p = 0; p < 8; ++p) CHECK(!oracle.is_erased(p));
}

TEST_CASE("apply_manipulations consumes budget only for effective changes") {
  BooleanFunctionTable f(3);
  OracleConfig cfg;
  cfg.t = Rational(2);
  BitOracle oracle(8, [&f](uint64_t x) { return f.eval(x); }, cfg);
  oracle.query(0);
  // re-erasing is a no-op without budget cost
  CHECK(oracle.apply_manipulations({{ManipulationKind::kErasure, 5, 0},
                                    {ManipulationKind::kErasure, 5, 0}}) == 2);
  CHECK(oracle.spent() == 1);
  // corruption request against an erasure oracle
  CHECK_THROWS_AS(oracle.apply_manipulations({{ManipulationKind::kCorruption, 1, 1}}),
                  WrongKindError);
  CHECK_THROWS_AS(oracle.apply_manipulations({{ManipulationKind::kErasure, 99, 0}}),
                  OutOfDomainError);
}

TEST_CASE("fixed-rate windows with zero allotment reject every costed request") {
  BooleanFunctionTable f(3);
  OracleConfig cfg;
  cfg.t = Rational(1, 2);
  cfg.scheduling = Scheduling::kFixedRate;
  BitOracle oracle(8, [&f](uint64_t x) { return f.eval(x); }, cfg);
  oracle.query(0);
  CHECK(oracle.remaining_budget() == 1);  // window after batch 1
  CHECK(oracle.apply_manipulations({{ManipulationKind::kErasure, 4, 0}}) == 1);
  oracle.query(1);
  CHECK(oracle.remaining_budget() == 0);  // window after batch 2
  CHECK(oracle.apply_manipulations({{ManipulationKind::kErasure, 5, 0}}) == 0);
  CHECK(!oracle.is_erased(5));
}

TEST_CASE("manipulation before the first batch requires the pre-game flag") {
  BooleanFunctionTable f(3);
  OracleConfig cfg;
  cfg.t = Rational(2);
  BitOracle oracle(8, [&f](uint64_t x) { return f.eval(x); }, cfg);
  CHECK_THROWS_AS(oracle.apply_manipulations({{ManipulationKind::kErasure, 1, 0}}),
                  MalformedTranscriptError);
  OracleConfig pre = cfg;
  pre.pre_game_manipulation = true;
  BitOracle oracle2(8, [&f](uint64_t x) { return f.eval(x); }, pre);
  CHECK(oracle2.apply_manipulations({{ManipulationKind::kErasure, 1, 0}}) == 1);
}

TEST_CASE("batch size limit is enforced") {
  BooleanFunctionTable f(3);
  OracleConfig cfg;
  cfg.batch = 2;
  BitOracle oracle(8, [&f](uint64_t x) { return f.eval(x); }, cfg);
  std::vector<uint64_t> pts = {0, 1, 2};
  CHECK_THROWS_AS(oracle.batch_query(pts), BatchTooLargeError);
}

TEST_CASE("corruption oracles track corrupted views and sightings") {
  BooleanFunctionTable f(3);
  OracleConfig cfg;
  cfg.t = Rational(3);
  cfg.kind = ManipulationKind::kCorruption;
  BitOracle oracle(8, [&f](uint64_t x) { return f.eval(x); }, cfg);
  oracle.query(0);
  CHECK(oracle.apply_manipulations({{ManipulationKind::kCorruption, 5, 1}}) == 1);
  // writing the value already visible is a no-op
  CHECK(oracle.apply_manipulations({{ManipulationKind::kCorruption, 5, 1}}) == 1);
  CHECK(oracle.spent() == 1);
  CHECK(oracle.query(5) == uint8_t{1});
  CHECK(oracle.saw_manipulation());
}

TEST_CASE("transcripts replay consistently and round-trip through text") {
  BooleanFunctionTable f = olt_test::character_table(4, 0b11);
  OracleConfig cfg;
  cfg.t = Rational(3, 2);
  cfg.batch = 2;
  cfg.record_transcript = true;
  UniformEraser<uint8_t> adv(99);
  BitOracle oracle(16, [&f](uint64_t x) { return f.eval(x); }, cfg, &adv);
  Rng rng(4);
  for (int i = 0; i < 12; ++i) {
    uint64_t pts[2] = {rng.below(16), rng.below(16)};
    oracle.batch_query(std::span<const uint64_t>(pts, 2));
  }
  std::function<uint8_t(uint64_t)> base = [&f](uint64_t x) { return f.eval(x); };
  ReplayResult r = replay(oracle.transcript(), &base);
  CHECK(r.consistent);

  std::string text = transcript_to_string(oracle.transcript());
  Transcript<uint8_t> parsed = parse_bit_transcript(text);
  CHECK(parsed.events.size() == oracle.transcript().events.size());
  CHECK(replay(parsed, &base).consistent);
}

TEST_CASE("replay flags over-budget windows and post-erasure answers") {
  // floor((i+1)t) - floor(it) + 1 erasures in one fixed-rate window
  std::string bad =
      "H v=1 size=8 kind=erasure sched=fixed t=1 b=1 pregame=0 seed=0\n"
      "Q 0 0\nB\nM erase 1\nM erase 2\nQ 3 0\nB\n";
  Transcript<uint8_t> t = parse_bit_transcript(bad);
  ReplayResult r = replay<uint8_t>(t, nullptr);
  CHECK(!r.consistent);
  CHECK(r.violation_event == 3);

  std::string ghost =
      "H v=1 size=8 kind=erasure sched=budget t=2 b=1 pregame=0 seed=0\n"
      "Q 0 0\nB\nM erase 5\nQ 5 1\nB\n";
  ReplayResult g = replay<uint8_t>(parse_bit_transcript(ghost), nullptr);
  CHECK(!g.consistent);

  // repeated query must echo the stored first answer
  std::string flip =
      "H v=1 size=8 kind=erasure sched=budget t=2 b=1 pregame=0 seed=0\n"
      "Q 0 0\nB\nQ 0 1\nB\n";
  CHECK(!replay<uint8_t>(parse_bit_transcript(flip), nullptr).consistent);

  CHECK_THROWS_AS(parse_bit_transcript("Q 1 0\n"), MalformedTranscriptError);
}

TEST_CASE("fuzzed games always replay consistently") {
  Rng master(101);
  for (int game = 0; game < 10000; ++game) {
    int n = 3 + static_cast<int>(master.below(5));
    BooleanFunctionTable f = BooleanFunctionTable::random(n, master);
    OracleConfig cfg;
    cfg.t = Rational(1 + static_cast<int64_t>(master.below(5)), 1 + static_cast<int64_t>(master.below(3)));
    cfg.batch = 1 + static_cast<uint32_t>(master.below(3));
    cfg.scheduling = master.bit() ? Scheduling::kFixedRate : Scheduling::kBudgetManaging;
    cfg.record_transcript = true;
    std::unique_ptr<BitAdversary> adv;
    switch (master.below(3)) {
      case 0:
        adv = std::make_unique<IdentityAdversary<uint8_t>>();
        break;
      case 1:
        adv = std::make_unique<UniformEraser<uint8_t>>(master.next());
        break;
      default:
        adv = std::make_unique<GreedyXorEraser>(master.next(), 8);
        break;
    }
    BitOracle oracle(f.size(), [&f](uint64_t x) { return f.eval(x); }, cfg, adv.get());
    int batches = 3 + static_cast<int>(master.below(6));
    std::vector<uint64_t> pts;
    for (int b = 0; b < batches; ++b) {
      pts.clear();
      size_t len = 1 + master.below(cfg.batch);
      for (size_t j = 0; j < len; ++j) pts.push_back(master.below(f.size()));
      oracle.batch_query(pts);
    }
    std::function<uint8_t(uint64_t)> base = [&f](uint64_t x) { return f.eval(x); };
    ReplayResult r = replay(oracle.transcript(), &base);
    CHECK(r.consistent);
    if (!r.consistent) break;
  }
}
