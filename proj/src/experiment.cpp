#include "olt/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "olt/adversaries.hpp"
#include "olt/bool_testers.hpp"
#include "olt/generators.hpp"
#include "olt/patterns.hpp"
#include "olt/seq_testers.hpp"
#include "olt/sequence.hpp"

namespace olt {

namespace {

bool is_bit_tester(const std::string& name) {
  return name == "blr_k" || name == "online_linearity" || name == "x_tester" ||
         name == "online_degree" || name == "batch_subspace";
}
bool is_seq_tester(const std::string& name) {
  return name == "pair" || name == "hierarchical" || name == "fixed_rate_pair";
}

uint32_t natural_batch(const ExperimentConfig& cfg) {
  if (cfg.tester == "online_degree") return uint32_t{1} << (cfg.d - 1);
  if (cfg.tester == "batch_subspace") return uint32_t{1} << (cfg.d + 1);
  if (cfg.tester == "pair") return 2;
  return 1;
}

GeneratedBitInput make_bit_input(const ExperimentConfig& cfg, Rng& rng) {
  if (cfg.generator == "random_linear") return random_linear(cfg.n, rng);
  if (cfg.generator == "random_degree_d") return random_degree_d(cfg.n, cfg.d, rng);
  if (cfg.generator == "random_function") return random_function(cfg.n, rng);
  if (cfg.generator == "planted_far_linear") return planted_far_linear(cfg.n, cfg.gen_eps, rng);
  if (cfg.generator == "planted_far_degree")
    return planted_far_degree(cfg.n, cfg.d, cfg.gen_eps, rng);
  throw ConfigError("unknown boolean generator: " + cfg.generator);
}

struct SeqInput {
  GeneratedSeqInput plain;
  std::optional<PairedSequenceInstance> paired;
};

SeqInput make_seq_input(const ExperimentConfig& cfg, Rng& rng) {
  SeqInput in;
  if (cfg.generator == "sorted_identity") {
    in.plain = sorted_identity(cfg.seq_n);
  } else if (cfg.generator == "planted_far_sorted") {
    in.plain = planted_far_sorted(cfg.seq_n, cfg.gen_eps, rng);
  } else if (cfg.generator == "planted_far_lipschitz") {
    in.plain = planted_far_lipschitz(cfg.seq_n, cfg.gen_eps, rng);
  } else if (cfg.generator == "d_plus" || cfg.generator == "d_minus") {
    in.paired = cfg.generator == "d_plus"
                    ? PairedSequenceInstance::sample_plus(cfg.seq_n, cfg.gen_eps, rng)
                    : PairedSequenceInstance::sample_minus(cfg.seq_n, cfg.gen_eps, rng);
    in.plain.seq = in.paired->materialize();
    in.plain.in_property = cfg.generator == "d_plus";
    in.plain.note = cfg.generator;
  } else {
    throw ConfigError("unknown sequence generator: " + cfg.generator);
  }
  return in;
}

std::unique_ptr<BitAdversary> make_bit_adversary(const ExperimentConfig& cfg,
                                                 const BooleanFunctionTable& base, uint64_t seed) {
  if (cfg.adversary == "identity") return std::make_unique<IdentityAdversary<uint8_t>>();
  if (cfg.adversary == "uniform_eraser") return std::make_unique<UniformEraser<uint8_t>>(seed);
  if (cfg.adversary == "greedy_xor") return std::make_unique<GreedyXorEraser>(seed, cfg.window);
  if (cfg.adversary == "span_eraser") {
    SpanEraserConfig sc;
    sc.n = cfg.n;
    sc.d = cfg.adversary_d;
    sc.span_cap = cfg.span_cap;
    return std::make_unique<SpanEraser>(sc, seed);
  }
  if (cfg.adversary == "bit_flipper") return std::make_unique<BitFlipper>(&base, seed);
  throw ConfigError("adversary " + cfg.adversary + " does not apply to boolean experiments");
}

std::unique_ptr<RealAdversary> make_seq_adversary(const ExperimentConfig& cfg,
                                                  const PairedSequenceInstance* inst,
                                                  uint64_t seed) {
  if (cfg.adversary == "identity") return std::make_unique<IdentityAdversary<double>>();
  if (cfg.adversary == "uniform_eraser") return std::make_unique<UniformEraser<double>>(seed);
  if (cfg.adversary == "partner_eraser") return std::make_unique<PartnerEraser>();
  if (cfg.adversary == "sortedness_impossibility") {
    if (inst == nullptr)
      throw ConfigError("sortedness_impossibility needs a paired-instance generator");
    return std::make_unique<SortednessAdversary>(inst, seed);
  }
  throw ConfigError("adversary " + cfg.adversary + " does not apply to sequence experiments");
}

struct TrialTally {
  std::atomic<uint64_t> rejects{0};
  std::atomic<uint64_t> saw{0};
  std::atomic<uint64_t> queries{0};
  std::atomic<uint64_t> replayed{0};
  std::atomic<uint64_t> replay_failures{0};
};

}  // namespace

void parallel_trials(uint64_t trials, uint32_t workers, const std::function<void(uint64_t)>& fn) {
  if (workers == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 2 : hw;
  }
  workers = static_cast<uint32_t>(std::min<uint64_t>(workers, trials == 0 ? 1 : trials));
  if (workers <= 1) {
    for (uint64_t i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::atomic<uint64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      uint64_t i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (uint32_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials >= 1 required");
  bool bit = is_bit_tester(cfg.tester);
  if (!bit && !is_seq_tester(cfg.tester)) throw ConfigError("unknown tester: " + cfg.tester);

  auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = cfg;
  report.trials = cfg.trials;

  uint64_t replay_stride =
      cfg.replay_sample_rate > 0 ? std::max<uint64_t>(1, static_cast<uint64_t>(1.0 / cfg.replay_sample_rate))
                                 : 0;

  TrialTally tally;

  OracleConfig ocfg;
  ocfg.t = cfg.t;
  ocfg.scheduling = cfg.scheduling;
  ocfg.kind = cfg.kind;
  ocfg.batch = natural_batch(cfg);
  if (cfg.tester == "fixed_rate_pair") ocfg.scheduling = Scheduling::kFixedRate;

  if (bit) {
    Rng gen_rng(cfg.seed ^ 0x9e1ull);
    GeneratedBitInput shared;
    if (!cfg.fresh_input_per_trial) shared = make_bit_input(cfg, gen_rng);
    report.certified_distance = shared.certified_distance;
    report.input_in_property = shared.in_property;
    report.input_note = shared.note;

    auto trial_fn = [&](uint64_t idx) {
      GeneratedBitInput local;
      const GeneratedBitInput* input = &shared;
      if (cfg.fresh_input_per_trial) {
        Rng grng = Rng::for_trial(cfg.seed ^ 0x9e1ull, idx);
        local = make_bit_input(cfg, grng);
        input = &local;
      }
      const BooleanFunctionTable& f = input->table;
      Rng trng = Rng::for_trial(cfg.seed, idx * 4);
      uint64_t adv_seed = Rng::for_trial(cfg.seed, idx * 4 + 1).next();
      OracleConfig oc = ocfg;
      oc.record_transcript = replay_stride != 0 && idx % replay_stride == 0;
      auto adversary = make_bit_adversary(cfg, f, adv_seed);
      BitOracle oracle(f.size(), [&f](uint64_t x) { return f.eval(x); }, oc, adversary.get());
      BitVerdict verdict;
      if (cfg.tester == "blr_k") {
        verdict = blr_k_test(oracle, cfg.n, cfg.k, trng);
      } else if (cfg.tester == "online_linearity") {
        verdict = online_linearity_test(oracle, cfg.n, cfg.eps, cfg.t.to_double(), trng);
      } else if (cfg.tester == "x_tester") {
        verdict = x_tester(affine_cube_pattern(cfg.d), oracle, cfg.n, trng);
      } else if (cfg.tester == "online_degree") {
        verdict = online_degree_test(oracle, cfg.n, cfg.eps, cfg.d, cfg.t.to_double(), trng);
      } else {
        verdict = batch_subspace_degree_test(oracle, cfg.n, cfg.eps, cfg.d, cfg.t.to_double(),
                                             cfg.zeta, trng);
      }
      if (!verdict.accept) tally.rejects.fetch_add(1);
      if (verdict.saw_manipulation) tally.saw.fetch_add(1);
      tally.queries.fetch_add(oracle.queries_made());
      if (oc.record_transcript) {
        tally.replayed.fetch_add(1);
        std::function<uint8_t(uint64_t)> base = [&f](uint64_t x) { return f.eval(x); };
        if (!replay(oracle.transcript(), &base).consistent) tally.replay_failures.fetch_add(1);
      }
    };
    parallel_trials(cfg.trials, cfg.workers, trial_fn);
  } else {
    Rng gen_rng(cfg.seed ^ 0x9e1ull);
    SeqInput shared;
    bool fresh = cfg.fresh_input_per_trial || cfg.generator == "d_plus" || cfg.generator == "d_minus";
    if (!fresh) shared = make_seq_input(cfg, gen_rng);
    report.certified_distance = shared.plain.certified_distance;
    report.input_in_property = shared.plain.in_property;
    report.input_note = shared.plain.note;

    const LocalPropertySpec* prop = find_property(cfg.property);
    if (prop == nullptr) throw ConfigError("unknown property: " + cfg.property);

    auto trial_fn = [&](uint64_t idx) {
      SeqInput local;
      const SeqInput* input = &shared;
      if (fresh) {
        Rng grng = Rng::for_trial(cfg.seed ^ 0x9e1ull, idx);
        local = make_seq_input(cfg, grng);
        input = &local;
      }
      const RealSequence& f = input->plain.seq;
      Rng trng = Rng::for_trial(cfg.seed, idx * 4);
      uint64_t adv_seed = Rng::for_trial(cfg.seed, idx * 4 + 1).next();
      OracleConfig oc = ocfg;
      oc.record_transcript = replay_stride != 0 && idx % replay_stride == 0;
      const PairedSequenceInstance* inst = input->paired ? &*input->paired : nullptr;
      auto adversary = make_seq_adversary(cfg, inst, adv_seed);
      RealOracle oracle(f.n(), [&f](uint64_t p) { return f.at(p + 1); }, oc, adversary.get());
      RealVerdict verdict;
      if (cfg.tester == "pair") {
        verdict = pair_tester(oracle, *prop, cfg.eps, trng);
      } else if (cfg.tester == "hierarchical") {
        verdict = hierarchical_tester(f, *prop, cfg.eps, trng);
      } else {
        verdict = fixed_rate_pair_tester(oracle, *prop, cfg.eps, cfg.t, trng);
      }
      if (!verdict.accept) tally.rejects.fetch_add(1);
      if (verdict.saw_manipulation) tally.saw.fetch_add(1);
      tally.queries.fetch_add(oracle.queries_made());
      if (oc.record_transcript && cfg.tester != "hierarchical") {
        tally.replayed.fetch_add(1);
        std::function<double(uint64_t)> base = [&f](uint64_t p) { return f.at(p + 1); };
        if (!replay(oracle.transcript(), &base).consistent) tally.replay_failures.fetch_add(1);
      }
    };
    parallel_trials(cfg.trials, cfg.workers, trial_fn);
  }

  report.rejects = tally.rejects.load();
  report.accepts = report.trials - report.rejects;
  report.saw_manipulation = tally.saw.load();
  report.total_queries = tally.queries.load();
  report.replayed = tally.replayed.load();
  report.replay_failures = tally.replay_failures.load();
  report.reject_ci = wilson_interval(report.rejects, report.trials);
  report.saw_ci = wilson_interval(report.saw_manipulation, report.trials);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["tester"] = c.tester;
  j["adversary"] = c.adversary;
  j["generator"] = c.generator;
  j["property"] = c.property;
  j["n"] = c.n;
  j["seq_n"] = c.seq_n;
  j["eps"] = c.eps;
  j["gen_eps"] = c.gen_eps;
  j["t"] = c.t.str();
  j["d"] = c.d;
  j["k"] = c.k;
  j["zeta"] = c.zeta;
  j["scheduling"] = c.scheduling == Scheduling::kFixedRate ? "fixed" : "budget";
  j["kind"] = c.kind == ManipulationKind::kErasure ? "erasure" : "corruption";
  j["adversary_d"] = c.adversary_d;
  j["span_cap"] = c.span_cap;
  j["window"] = c.window;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["fresh_input_per_trial"] = c.fresh_input_per_trial;
  return j;
}

}  // namespace

std::string report_to_jsonl(const ExperimentReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["trials"] = r.trials;
  j["accepts"] = r.accepts;
  j["rejects"] = r.rejects;
  j["saw_manipulation"] = r.saw_manipulation;
  j["reject_rate"] = r.reject_rate();
  j["reject_ci"] = {r.reject_ci.lower, r.reject_ci.upper};
  j["saw_rate"] = r.saw_rate();
  j["saw_ci"] = {r.saw_ci.lower, r.saw_ci.upper};
  j["total_queries"] = r.total_queries;
  j["mean_queries"] = r.mean_queries();
  j["certified_distance"] =
      r.certified_distance ? nlohmann::ordered_json(r.certified_distance->str())
                           : nlohmann::ordered_json(nullptr);
  j["input_in_property"] = r.input_in_property;
  j["input_note"] = r.input_note;
  j["replayed"] = r.replayed;
  j["replay_failures"] = r.replay_failures;
  j["config"] = config_json(r.config);
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j.dump();
}

std::string report_csv_header() {
  return "tester,adversary,generator,trials,accepts,rejects,saw_manipulation,reject_rate,"
         "reject_ci_lo,reject_ci_hi,saw_rate,total_queries,certified_distance,replayed,"
         "replay_failures,seed";
}

std::string report_to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << r.config.tester << ',' << r.config.adversary << ',' << r.config.generator << ','
      << r.trials << ',' << r.accepts << ',' << r.rejects << ',' << r.saw_manipulation << ','
      << r.reject_rate() << ',' << r.reject_ci.lower << ',' << r.reject_ci.upper << ','
      << r.saw_rate() << ',' << r.total_queries << ','
      << (r.certified_distance ? r.certified_distance->str() : "-") << ',' << r.replayed << ','
      << r.replay_failures << ',' << r.config.seed;
  return out.str();
}

ExperimentConfig parse_config_file(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "tester")
        cfg.tester = val;
      else if (key == "adversary")
        cfg.adversary = val;
      else if (key == "generator")
        cfg.generator = val;
      else if (key == "property")
        cfg.property = val;
      else if (key == "n")
        cfg.n = std::stoi(val);
      else if (key == "seq_n")
        cfg.seq_n = std::stoull(val);
      else if (key == "eps")
        cfg.eps = Rational::parse(val).to_double();
      else if (key == "gen_eps")
        cfg.gen_eps = Rational::parse(val).to_double();
      else if (key == "t")
        cfg.t = Rational::parse(val);
      else if (key == "d")
        cfg.d = std::stoi(val);
      else if (key == "k")
        cfg.k = std::stoi(val);
      else if (key == "zeta")
        cfg.zeta = std::stod(val);
      else if (key == "scheduling")
        cfg.scheduling = val == "fixed" ? Scheduling::kFixedRate : Scheduling::kBudgetManaging;
      else if (key == "kind")
        cfg.kind = val == "corruption" ? ManipulationKind::kCorruption : ManipulationKind::kErasure;
      else if (key == "adversary_d")
        cfg.adversary_d = std::stoi(val);
      else if (key == "span_cap")
        cfg.span_cap = std::stoull(val);
      else if (key == "window")
        cfg.window = std::stoull(val);
      else if (key == "trials")
        cfg.trials = std::stoull(val);
      else if (key == "seed")
        cfg.seed = std::stoull(val);
      else if (key == "fresh_input_per_trial")
        cfg.fresh_input_per_trial = val == "true" || val == "1";
      else if (key == "replay_sample_rate")
        cfg.replay_sample_rate = std::stod(val);
      else if (key == "workers")
        cfg.workers = static_cast<uint32_t>(std::stoul(val));
      else if (key == "out")
        cfg.out_path = val;
      else if (key == "out_format")
        cfg.out_format = val;
      else
        throw ConfigError("config line " + std::to_string(lineno) + ": unknown key " + key);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

std::vector<std::string> tester_registry_names() {
  return {"blr_k", "online_linearity", "x_tester", "online_degree", "batch_subspace",
          "pair",  "hierarchical",     "fixed_rate_pair"};
}
std::vector<std::string> adversary_registry_names() {
  return {"identity",    "uniform_eraser", "greedy_xor",    "span_eraser",
          "bit_flipper", "sortedness_impossibility", "partner_eraser"};
}
std::vector<std::string> generator_registry_names() {
  return {"random_linear",      "random_degree_d",    "random_function",
          "planted_far_linear", "planted_far_degree", "sorted_identity",
          "planted_far_sorted", "planted_far_lipschitz", "d_plus", "d_minus"};
}

}  // namespace olt
