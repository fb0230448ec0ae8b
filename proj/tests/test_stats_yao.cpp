#include <cmath>

#include "doctest.h"
#include "olt/stats.hpp"
#include "olt/yao.hpp"

using namespace olt;

TEST_CASE("wilson intervals") {
  WilsonInterval w = wilson_interval(0, 100);
  CHECK(w.lower == 0.0);
  CHECK(w.upper < 0.05);
  WilsonInterval half = wilson_interval(500, 1000);
  CHECK(half.lower == doctest::Approx(0.469).epsilon(0.01));
  CHECK(half.upper == doctest::Approx(0.531).epsilon(0.01));
  WilsonInterval all = wilson_interval(1000, 1000);
  CHECK(all.upper == 1.0);
  CHECK(all.lower > 0.99);
  CHECK(wilson_interval(3, 0).lower == 0.0);
}

TEST_CASE("chi squared tail against table values") {
  CHECK(chi_squared_upper_tail(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_squared_upper_tail(5.991, 2) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_squared_upper_tail(6.635, 1) == doctest::Approx(0.01).epsilon(0.01));
  CHECK(chi_squared_upper_tail(0.0, 5) == 1.0);
}

TEST_CASE("g test separates the obvious and passes the identical") {
  std::map<std::string, uint64_t> a{{"x", 5000}, {"y", 5000}};
  std::map<std::string, uint64_t> b{{"x", 5050}, {"y", 4950}};
  CHECK(g_test(a, b).p_value > 0.1);
  std::map<std::string, uint64_t> c{{"x", 9000}, {"y", 1000}};
  CHECK(g_test(a, c).p_value < 1e-9);
  std::map<std::string, uint64_t> tiny{{"x", 3}};
  CHECK(g_test(tiny, tiny).p_value == 1.0);  // pooled away
}

TEST_CASE("single-query histories are fair bits under both arms") {
  CubeExperimentConfig cfg;
  cfg.n = 10;
  cfg.d = 2;
  cfg.t = 64;
  cfg.q = 1;
  cfg.trials = 30000;
  cfg.seed = 5;
  cfg.cert_samples = 50;
  CubeExperimentReport rep =
      cube_indistinguishability_experiment(cube_probe_zoo()[0], cfg);
  CHECK(rep.within_query_bound);
  CHECK(rep.query_bound == 10);  // C(5, 2)
  CHECK(rep.comparison.distributions_match);
  for (const auto& arm : {rep.comparison.histogram_positive, rep.comparison.histogram_negative}) {
    uint64_t zeros = arm.count("0") ? arm.at("0") : 0;
    uint64_t ones = arm.count("1") ? arm.at("1") : 0;
    CHECK(zeros + ones == cfg.trials);  // the first query is never erased
    double sigma = std::sqrt(0.25 * cfg.trials);
    CHECK(std::fabs(static_cast<double>(zeros) - cfg.trials / 2.0) <= 4 * sigma);
  }
}

TEST_CASE("within the bound the zoo cannot tell the arms apart") {
  CubeExperimentConfig cfg;
  cfg.n = 10;
  cfg.d = 2;
  cfg.t = 64;
  cfg.q = 8;
  cfg.trials = 20000;
  cfg.seed = 7;
  cfg.cert_samples = 20;
  for (const auto& strategy : cube_probe_zoo()) {
    CubeExperimentReport rep = cube_indistinguishability_experiment(strategy, cfg);
    CHECK(rep.within_query_bound);
    CHECK(rep.comparison.distributions_match);
  }
}

TEST_CASE("over the bound the parity prober separates the arms") {
  CubeExperimentConfig cfg;
  cfg.n = 10;
  cfg.d = 2;
  cfg.t = 1;  // far below the rate the strategy needs
  cfg.q = 8;
  cfg.trials = 20000;
  cfg.seed = 9;
  cfg.cert_samples = 20;
  CubeExperimentReport rep = cube_indistinguishability_experiment(affine_cube_probe(2), cfg);
  CHECK(!rep.within_query_bound);
  CHECK(!rep.comparison.distributions_match);
}

TEST_CASE("sequence probers see identical histories at rate 60 eps") {
  SequenceExperimentConfig cfg;
  cfg.n = 512;
  cfg.eps = 0.25;
  cfg.t = Rational(15);
  cfg.q = 24;
  cfg.trials = 15000;
  cfg.seed = 11;
  for (const auto& strategy : sequence_probe_zoo()) {
    HistoryComparison cmp = sequence_indistinguishability_experiment(strategy, cfg);
    CHECK(cmp.distributions_match);
  }
}
