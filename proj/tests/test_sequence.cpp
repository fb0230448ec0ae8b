#include "doctest.h"
#include "olt/generators.hpp"
#include "olt/rng.hpp"
#include "olt/sequence.hpp"

using namespace olt;

TEST_CASE("unrepairability of pinned pairs") {
  const auto& sorted = sortedness_property();
  CHECK(pair_unrepairable(sorted, 10, 3, 7, 5.0, 2.0));       // decreasing pair
  CHECK(!pair_unrepairable(sorted, 10, 3, 7, 2.0, 5.0));      // dense reals fill the gap
  CHECK(!pair_unrepairable(sorted, 10, 7, 3, 5.0, 2.0));      // unordered positions
  const auto& lip = lipschitz_property();
  CHECK(pair_unrepairable(lip, 10, 2, 5, 0.0, 10.0));         // |10 - 0| > 3
  CHECK(!pair_unrepairable(lip, 10, 2, 5, 0.0, 3.0));
  CHECK_THROWS(pair_unrepairable(sorted, 10, 3, 3, 1.0, 1.0));
  CHECK_THROWS(pair_unrepairable(sorted, 10, 0, 3, 1.0, 1.0));
}

TEST_CASE("gap fillability is consistent with the forbidden family and monotone") {
  Rng rng(7);
  for (const LocalPropertySpec* prop : {&sortedness_property(), &lipschitz_property()}) {
    for (int trial = 0; trial < 500; ++trial) {
      double a = rng.unit() * 10 - 5;
      double b = rng.unit() * 10 - 5;
      uint64_t p = 1 + rng.below(50);
      CHECK(prop->gap_fillable(p, p + 1, a, b) == !prop->forbidden(a, b));
      uint64_t q = p + 1 + rng.below(10);
      if (prop->gap_fillable(p, q, a, b)) {
        CHECK(prop->gap_fillable(p, q + 1 + rng.below(5), a, b));
      }
    }
  }
}

TEST_CASE("exact distances on the small examples") {
  CHECK(distance_to_sortedness(RealSequence({1, 2, 3})) == Rational(0));
  CHECK(distance_to_sortedness(RealSequence({2, 1})) == Rational(1, 2));
  RealSequence f({3, 1, 2, 5, 4});
  CHECK(distance_to_sortedness(f) == Rational(2, 5));
  CHECK(distance_brute_force(f, sortedness_property()) == Rational(2, 5));
  CHECK(distance_to_lipschitz(RealSequence({0, 1, 2})) == Rational(0));
  CHECK(distance_to_lipschitz(RealSequence({0, 5, 0})) == Rational(1, 3));
}

TEST_CASE("distance oracles agree with the kept-subset brute force") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    uint64_t n = 4 + rng.below(11);
    std::vector<double> vals(n);
    for (auto& v : vals) {
      v = static_cast<double>(rng.below(2 * n)) / 2.0;
    }
    RealSequence f(std::move(vals));
    CHECK(distance_to_sortedness(f) == distance_brute_force(f, sortedness_property()));
    CHECK(distance_to_lipschitz(f) == distance_brute_force(f, lipschitz_property()));
  }
}

TEST_CASE("pair unrepairability agrees with the grid repair search") {
  Rng rng(13);
  for (const LocalPropertySpec* prop : {&sortedness_property(), &lipschitz_property()}) {
    for (int trial = 0; trial < 100; ++trial) {
      uint64_t n = 4 + rng.below(9);
      std::vector<double> vals(n);
      for (auto& v : vals) v = static_cast<double>(rng.below(n + 3));
      RealSequence f(std::move(vals));
      for (uint64_t x = 1; x <= n; ++x) {
        for (uint64_t y = x + 1; y <= n; ++y) {
          bool fast = pair_unrepairable(*prop, n, x, y, f.at(x), f.at(y));
          bool brute = pair_unrepairable_brute_force(*prop, n, x, y, f.at(x), f.at(y));
          CHECK(fast == brute);
        }
      }
    }
  }
}

TEST_CASE("membership check matches the forbidden-pair scan") {
  CHECK(sortedness_property().holds(RealSequence({1, 1, 2, 7})));
  CHECK(!sortedness_property().holds(RealSequence({1, 3, 2})));
  CHECK(lipschitz_property().holds(RealSequence({0, 0.5, 1.2})));
  CHECK(!lipschitz_property().holds(RealSequence({0, 2})));
  CHECK(find_property("sortedness") == &sortedness_property());
  CHECK(find_property("nope") == nullptr);
}

TEST_CASE("sequences parse from csv lines and json arrays") {
  RealSequence a = parse_sequence("1.5\n2\n3\n");
  CHECK(a.n() == 3);
  CHECK(a.at(1) == 1.5);
  RealSequence b = parse_sequence("[1, 2, 2.5]");
  CHECK(b.n() == 3);
  CHECK(b.at(3) == 2.5);
  CHECK_THROWS(parse_sequence("  "));
  CHECK_THROWS(RealSequence({1.0}));
}
