#ifndef OLT_EXPERIMENT_HPP_
#define OLT_EXPERIMENT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "olt/oracle.hpp"
#include "olt/rational.hpp"
#include "olt/stats.hpp"

namespace olt {

// One tester-vs-adversary Monte Carlo experiment. Names resolve in the
// tester / adversary / generator registries; unknown names raise ConfigError.
struct ExperimentConfig {
  std::string tester = "online_linearity";
  std::string adversary = "identity";
  std::string generator = "planted_far_linear";
  std::string property = "sortedness";  // sequence testers

  int n = 10;            // cube dimension (bit testers)
  uint64_t seq_n = 4096; // sequence length
  double eps = 0.25;     // tester proximity parameter
  double gen_eps = 0.25; // generator target distance
  Rational t{2};         // manipulation rate
  int d = 1;             // degree (degree testers)
  int k = 4;             // blr_k
  double zeta = 0.1;     // batch subspace tester
  Scheduling scheduling = Scheduling::kBudgetManaging;
  ManipulationKind kind = ManipulationKind::kErasure;

  int adversary_d = 1;            // span eraser extension degree
  uint64_t span_cap = uint64_t{1} << 20;
  size_t window = 20;             // greedy xor window

  uint64_t trials = 1000;
  uint64_t seed = 1;
  bool fresh_input_per_trial = false;
  double replay_sample_rate = 0.01;
  uint32_t workers = 0;  // 0: hardware concurrency

  std::string out_path;          // empty: stdout only
  std::string out_format = "jsonl";  // or "csv"
};

struct ExperimentReport {
  uint64_t trials = 0;
  uint64_t accepts = 0;
  uint64_t rejects = 0;
  uint64_t saw_manipulation = 0;
  uint64_t total_queries = 0;
  uint64_t replayed = 0;
  uint64_t replay_failures = 0;
  WilsonInterval reject_ci;
  WilsonInterval saw_ci;
  std::optional<Rational> certified_distance;
  bool input_in_property = false;
  std::string input_note;
  ExperimentConfig config;
  double wall_seconds = 0;  // informational; excluded from canonical output

  double reject_rate() const {
    return trials ? static_cast<double>(rejects) / static_cast<double>(trials) : 0;
  }
  double saw_rate() const {
    return trials ? static_cast<double>(saw_manipulation) / static_cast<double>(trials) : 0;
  }
  double mean_queries() const {
    return trials ? static_cast<double>(total_queries) / static_cast<double>(trials) : 0;
  }
};

ExperimentReport run_experiment(const ExperimentConfig& config);

// Canonical single-line JSON; byte-identical across reruns of the same
// (config, seed). Timing is opt-in precisely because of that guarantee.
std::string report_to_jsonl(const ExperimentReport& report, bool include_timing = false);
std::string report_csv_header();
std::string report_to_csv(const ExperimentReport& report);

// Flat "key = value" config file; '#' comments. Rationals accepted for t.
ExperimentConfig parse_config_file(const std::string& text);

std::vector<std::string> tester_registry_names();
std::vector<std::string> adversary_registry_names();
std::vector<std::string> generator_registry_names();

// Runs fn(trial_index) on a small thread pool; per-trial work must derive all
// randomness from the trial index so scheduling cannot change results.
void parallel_trials(uint64_t trials, uint32_t workers, const std::function<void(uint64_t)>& fn);

}  // namespace olt

#endif  // OLT_EXPERIMENT_HPP_
