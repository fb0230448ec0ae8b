#include "olt/yao.hpp"

#include <bit>
#include <cmath>

#include "olt/adversaries.hpp"
#include "olt/boolfun.hpp"
#include "olt/oracle.hpp"
#include "olt/stats.hpp"

namespace olt {

namespace {

uint64_t binom(uint64_t a, uint64_t b) {
  if (b > a) return 0;
  uint64_t r = 1;
  for (uint64_t i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

}  // namespace

std::vector<DeterministicStrategy> cube_probe_zoo() {
  std::vector<DeterministicStrategy> zoo;
  zoo.push_back({"left_to_right", [](const std::string& h, uint64_t domain) {
                   return (h.size() + 1) % domain;
                 }});
  zoo.push_back({"pair_prober", [](const std::string& h, uint64_t domain) {
                   // e_{2j}, e_{2j+1}, and their sum, round-robin.
                   size_t step = h.size();
                   uint64_t j = step / 3;
                   uint64_t a = uint64_t{1} << ((2 * j) % 10);
                   uint64_t b = uint64_t{1} << ((2 * j + 1) % 10);
                   uint64_t pts[3] = {a, b, a ^ b};
                   return pts[step % 3] % domain;
                 }});
  zoo.push_back({"binary_search", [](const std::string& h, uint64_t domain) {
                   uint64_t lo = 0, hi = domain;
                   for (char c : h) {
                     uint64_t mid = lo + (hi - lo) / 2;
                     if (c == '1')
                       lo = mid + 1;
                     else
                       hi = mid;
                     if (lo >= hi) {
                       lo = 0;
                       hi = domain;
                     }
                   }
                   return lo + (hi - lo) / 2;
                 }});
  return zoo;
}

DeterministicStrategy affine_cube_probe(int d) {
  return {"affine_cube_probe", [d](const std::string& h, uint64_t domain) {
            // Points x + sum of a subset of v_1..v_{d+1}, subsets ordered by
            // weight. Fixed translation and directions.
            uint64_t x = 0x2b5ull % domain;
            std::vector<uint32_t> subsets;
            for (uint32_t s = 0; s < (uint32_t{1} << (d + 1)); ++s) subsets.push_back(s);
            std::stable_sort(subsets.begin(), subsets.end(), [](uint32_t a, uint32_t b) {
              return std::popcount(a) < std::popcount(b);
            });
            uint32_t s = subsets[h.size() % subsets.size()];
            uint64_t y = x;
            for (int j = 0; j <= d; ++j) {
              if ((s >> j) & 1) y ^= uint64_t{1} << (j % 10);
            }
            return y % domain;
          }};
}

std::vector<DeterministicStrategy> sequence_probe_zoo() {
  std::vector<DeterministicStrategy> zoo;
  zoo.push_back({"left_to_right", [](const std::string& h, uint64_t domain) {
                   return h.size() % domain;
                 }});
  zoo.push_back({"pair_first_prober", [](const std::string& h, uint64_t domain) {
                   return (2 * h.size()) % domain;  // first elements 0, 2, 4, ...
                 }});
  zoo.push_back({"binary_search", [](const std::string& h, uint64_t domain) {
                   uint64_t lo = 0, hi = domain;
                   for (char c : h) {
                     uint64_t mid = lo + (hi - lo) / 2;
                     if (c == '+' || c == '0')
                       hi = mid;
                     else
                       lo = mid + 1;
                     if (lo >= hi) {
                       lo = 0;
                       hi = domain;
                     }
                   }
                   return lo + (hi - lo) / 2;
                 }});
  return zoo;
}

namespace {

HistoryComparison compare_prefixes(const std::vector<std::map<std::string, uint64_t>>& pos,
                                   const std::vector<std::map<std::string, uint64_t>>& neg,
                                   double alpha) {
  HistoryComparison cmp;
  size_t prefixes = pos.size();
  double threshold = alpha / static_cast<double>(prefixes);
  cmp.distributions_match = true;
  for (size_t j = 0; j < prefixes; ++j) {
    GTestResult g = g_test(pos[j], neg[j]);
    cmp.prefix_p.push_back(g.p_value);
    cmp.min_p = std::min(cmp.min_p, g.p_value);
    if (g.p_value < threshold) cmp.distributions_match = false;
  }
  if (!pos.empty()) {
    cmp.histogram_positive = pos.back();
    cmp.histogram_negative = neg.back();
  }
  return cmp;
}

}  // namespace

CubeExperimentReport cube_indistinguishability_experiment(const DeterministicStrategy& strategy,
                                                          const CubeExperimentConfig& cfg) {
  CubeExperimentReport report;
  int logt = cfg.t >= 1 ? static_cast<int>(std::floor(std::log2(static_cast<double>(cfg.t)))) : 0;
  report.query_bound = logt >= 1 ? binom(static_cast<uint64_t>(logt - 1), static_cast<uint64_t>(cfg.d)) : 0;
  report.within_query_bound = static_cast<uint64_t>(cfg.q) <= report.query_bound;

  uint64_t size = uint64_t{1} << cfg.n;
  size_t words = (size + 63) / 64;
  // All monomial tables of degree <= d, packed, for fast random polynomials.
  std::vector<std::vector<uint64_t>> mono;
  for (uint32_t mask = 0; mask < (uint32_t{1} << cfg.n); ++mask) {
    if (std::popcount(mask) <= cfg.d) mono.push_back(monomial_table(cfg.n, mask).words());
  }

  std::vector<std::map<std::string, uint64_t>> hist_pos(static_cast<size_t>(cfg.q));
  std::vector<std::map<std::string, uint64_t>> hist_neg(static_cast<size_t>(cfg.q));

  OracleConfig ocfg;
  ocfg.t = cfg.t;
  ocfg.batch = 1;
  ocfg.scheduling = Scheduling::kFixedRate;
  ocfg.kind = ManipulationKind::kErasure;

  std::vector<uint64_t> table(words);
  for (uint64_t trial = 0; trial < cfg.trials; ++trial) {
    for (int arm = 0; arm < 2; ++arm) {
      Rng rng = Rng::for_trial(cfg.seed, trial * 2 + static_cast<uint64_t>(arm));
      if (arm == 0) {
        // Uniform degree-d polynomial: uniform coefficient per monomial.
        std::fill(table.begin(), table.end(), 0);
        for (const auto& m : mono) {
          if (rng.bit()) {
            for (size_t w = 0; w < words; ++w) table[w] ^= m[w];
          }
        }
      } else {
        for (auto& w : table) w = rng.next();
      }
      BooleanFunctionTable f(cfg.n, table);
      SpanEraser adversary({cfg.n, cfg.d, uint64_t{1} << 16}, rng.next());
      BitOracle oracle(size, [&f](uint64_t x) { return f.eval(x); }, ocfg, &adversary);
      std::string history;
      for (int j = 0; j < cfg.q; ++j) {
        uint64_t point = strategy.next(history, size) % size;
        auto a = oracle.query(point);
        history.push_back(!a.has_value() ? 'E' : static_cast<char>('0' + *a));
        auto& hist = arm == 0 ? hist_pos[static_cast<size_t>(j)] : hist_neg[static_cast<size_t>(j)];
        ++hist[history];
      }
    }
  }
  report.comparison = compare_prefixes(hist_pos, hist_neg, cfg.alpha);

  // Informational: how often the negative arm is actually 1/3-far, measured
  // where the exact oracle is feasible.
  Rng crng(cfg.seed ^ 0xFACEFEEDull);
  uint64_t far = 0;
  for (uint64_t i = 0; i < cfg.cert_samples; ++i) {
    BooleanFunctionTable f = BooleanFunctionTable::random(cfg.cert_n, crng);
    if (distance_to_degree_d(f, cfg.d) >= Rational(1, 3)) ++far;
  }
  report.far_fraction_negative = static_cast<double>(far) / static_cast<double>(cfg.cert_samples);
  return report;
}

HistoryComparison sequence_indistinguishability_experiment(const DeterministicStrategy& strategy,
                                                           const SequenceExperimentConfig& cfg) {
  std::vector<std::map<std::string, uint64_t>> hist_pos(static_cast<size_t>(cfg.q));
  std::vector<std::map<std::string, uint64_t>> hist_neg(static_cast<size_t>(cfg.q));

  OracleConfig ocfg;
  ocfg.t = cfg.t;
  ocfg.batch = 1;
  ocfg.scheduling = Scheduling::kBudgetManaging;
  ocfg.kind = ManipulationKind::kErasure;

  for (uint64_t trial = 0; trial < cfg.trials; ++trial) {
    for (int arm = 0; arm < 2; ++arm) {
      Rng rng = Rng::for_trial(cfg.seed ^ 0x5e9ull, trial * 2 + static_cast<uint64_t>(arm));
      PairedSequenceInstance inst =
          arm == 0 ? PairedSequenceInstance::sample_plus(cfg.n, cfg.eps, rng)
                   : PairedSequenceInstance::sample_minus(cfg.n, cfg.eps, rng);
      SortednessAdversary adversary(&inst, rng.next());
      RealOracle oracle(cfg.n, [&inst](uint64_t p) { return inst.value(p + 1); }, ocfg, &adversary);
      std::string history;
      for (int j = 0; j < cfg.q; ++j) {
        uint64_t point = strategy.next(history, cfg.n) % cfg.n;
        auto a = oracle.query(point);
        char c;
        if (!a.has_value()) {
          c = 'E';
        } else {
          double delta = *a - static_cast<double>(point + 1);
          c = delta > 0.5 ? '+' : (delta < -0.5 ? '-' : '0');
        }
        history.push_back(c);
        auto& hist = arm == 0 ? hist_pos[static_cast<size_t>(j)] : hist_neg[static_cast<size_t>(j)];
        ++hist[history];
      }
    }
  }
  return compare_prefixes(hist_pos, hist_neg, cfg.alpha);
}

}  // namespace olt
