#include "doctest.h"
#include "olt/boolfun.hpp"
#include "olt/errors.hpp"
#include "olt/generators.hpp"

using namespace olt;

TEST_CASE("membership generators certify membership") {
  Rng rng(3);
  GeneratedBitInput lin = random_linear(8, rng);
  CHECK(lin.in_property);
  CHECK(distance_to_linearity(lin.table) == Rational(0));
  GeneratedBitInput deg = random_degree_d(8, 2, rng);
  CHECK(anf_degree(deg.table) <= 2);
  GeneratedSeqInput id = sorted_identity(64);
  CHECK(id.in_property);
  CHECK(distance_to_sortedness(id.seq) == Rational(0));
}

TEST_CASE("planted far linear functions carry exact certificates") {
  Rng rng(5);
  GeneratedBitInput input = planted_far_linear(14, 0.25, rng);
  REQUIRE(input.certified_distance.has_value());
  CHECK(input.certified_distance->to_double() >= 0.25);
  CHECK(distance_to_linearity(input.table) == *input.certified_distance);
}

TEST_CASE("planted far degree inputs: the lift preserves the exact distance") {
  Rng rng(7);
  // Small enough that the lifted function is directly certifiable too.
  GeneratedBitInput d1 = planted_far_degree(8, 1, 0.3, rng);
  REQUIRE(d1.certified_distance.has_value());
  CHECK(d1.certified_distance->to_double() >= 0.3);
  CHECK(distance_to_degree_d(d1.table, 1) == *d1.certified_distance);

  GeneratedBitInput d2 = planted_far_degree(5, 2, 0.15, rng);
  REQUIRE(d2.certified_distance.has_value());
  CHECK(distance_to_degree_d(d2.table, 2) == *d2.certified_distance);

  // Desk-scale target used by the online degree games.
  GeneratedBitInput big = planted_far_degree(16, 2, 0.25, rng);
  CHECK(big.certified_distance->to_double() >= 0.25);
  CHECK(big.table.n() == 16);
}

TEST_CASE("planted far sequences certify through the exact oracles") {
  Rng rng(9);
  GeneratedSeqInput sorted_far = planted_far_sorted(4096, 0.25, rng);
  REQUIRE(sorted_far.certified_distance.has_value());
  CHECK(sorted_far.certified_distance->to_double() >= 0.25);
  CHECK(distance_to_sortedness(sorted_far.seq) == *sorted_far.certified_distance);

  GeneratedSeqInput lip_far = planted_far_lipschitz(1024, 0.125, rng);
  REQUIRE(lip_far.certified_distance.has_value());
  CHECK(lip_far.certified_distance->to_double() >= 0.125);
  CHECK(distance_to_lipschitz(lip_far.seq) == *lip_far.certified_distance);
}

TEST_CASE("unreachable targets fail certification loudly") {
  Rng rng(11);
  CHECK_THROWS_AS(planted_far_linear(6, 0.49, rng), CertificationFailedError);
}
