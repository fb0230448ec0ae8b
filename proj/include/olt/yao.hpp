#ifndef OLT_YAO_HPP_
#define OLT_YAO_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "olt/rational.hpp"

namespace olt {

// Deterministic q-query strategies: the next point is a pure function of the
// answer history, encoded as a string over {'0','1','E'} (cube probers) or
// {'-','0','+','E'} (sequence probers).
struct DeterministicStrategy {
  std::string name;
  std::function<uint64_t(const std::string& history, uint64_t domain)> next;
};

std::vector<DeterministicStrategy> cube_probe_zoo();
// Probes one fixed affine (d+1)-cube, combination weight first. Over-budget
// against weak rates, where it pins down the parity structure.
DeterministicStrategy affine_cube_probe(int d);

std::vector<DeterministicStrategy> sequence_probe_zoo();

// ---------------------------------------------------------------------------
// Query-answer history comparison between a positive and a negative input
// distribution, played against a fixed adversary. Per-prefix two-sample
// G-tests with a Bonferroni-corrected familywise level.

struct HistoryComparison {
  bool distributions_match = false;  // no prefix test rejected
  double min_p = 1.0;
  std::vector<double> prefix_p;
  std::map<std::string, uint64_t> histogram_positive;  // full-length histories
  std::map<std::string, uint64_t> histogram_negative;
};

struct CubeExperimentConfig {
  int n = 10;
  int d = 2;
  int64_t t = 64;  // fixed-rate erasure rate faced by the strategy
  int q = 1;
  uint64_t trials = 100000;
  uint64_t seed = 1;
  double alpha = 0.01;
  // Size at which the informational far-fraction of the negative arm is
  // measured with the exact distance oracle (the experiment's own n is
  // usually beyond exact certification).
  int cert_n = 6;
  uint64_t cert_samples = 300;
};

struct CubeExperimentReport {
  bool within_query_bound = false;
  uint64_t query_bound = 0;
  HistoryComparison comparison;
  double far_fraction_negative = 0;  // Pr[dist(f, degree d) >= 1/3] at cert_n
};

// Runs the strategy against the span-erasing adversary, once per trial under
// each arm: uniform degree-d polynomials vs uniform functions.
CubeExperimentReport cube_indistinguishability_experiment(const DeterministicStrategy& strategy,
                                                          const CubeExperimentConfig& cfg);

struct SequenceExperimentConfig {
  uint64_t n = 1024;
  double eps = 0.25;
  Rational t{15};  // budget-managing erasure rate (60 * eps at the default)
  int q = 30;
  uint64_t trials = 100000;
  uint64_t seed = 1;
  double alpha = 0.01;
};

// Plays the strategy against the sortedness impossibility adversary, drawing
// the instance fresh per trial from the plus / minus pair distributions.
HistoryComparison sequence_indistinguishability_experiment(const DeterministicStrategy& strategy,
                                                           const SequenceExperimentConfig& cfg);

}  // namespace olt

#endif  // OLT_YAO_HPP_
