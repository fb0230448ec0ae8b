#include "olt/stats.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace olt {

WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = p + z2 / (2 * n);
  double margin = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  WilsonInterval w;
  w.lower = std::max(0.0, (center - margin) / denom);
  w.upper = std::min(1.0, (center + margin) / denom);
  return w;
}

namespace {

// Regularized incomplete gamma Q(a, x) by series / continued fraction.
double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series, then Q = 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    double p = sum * std::exp(-x + a * std::log(x) - gln);
    return 1.0 - p;
  }
  // Q(a,x) by Lentz continued fraction.
  double b = x + 1.0 - a;
  double c = 1e308;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double chi_squared_upper_tail(double statistic, double dof) {
  if (statistic <= 0) return 1.0;
  return gamma_q(dof / 2.0, statistic / 2.0);
}

GTestResult g_test(const std::map<std::string, uint64_t>& counts_a,
                   const std::map<std::string, uint64_t>& counts_b, uint64_t pool_below) {
  std::set<std::string> keys;
  for (const auto& kv : counts_a) keys.insert(kv.first);
  for (const auto& kv : counts_b) keys.insert(kv.first);

  auto get = [](const std::map<std::string, uint64_t>& m, const std::string& k) -> uint64_t {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };

  std::vector<std::pair<double, double>> cells;
  double pooled_a = 0, pooled_b = 0;
  bool pooled_any = false;
  for (const auto& k : keys) {
    double ca = static_cast<double>(get(counts_a, k));
    double cb = static_cast<double>(get(counts_b, k));
    if (ca + cb < static_cast<double>(pool_below)) {
      pooled_a += ca;
      pooled_b += cb;
      pooled_any = true;
    } else {
      cells.push_back({ca, cb});
    }
  }
  if (pooled_any) cells.push_back({pooled_a, pooled_b});

  GTestResult res;
  if (cells.size() < 2) return res;  // nothing to compare

  double total_a = 0, total_b = 0;
  for (const auto& c : cells) {
    total_a += c.first;
    total_b += c.second;
  }
  double total = total_a + total_b;
  if (total_a == 0 || total_b == 0) return res;

  double g = 0;
  for (const auto& c : cells) {
    double row = c.first + c.second;
    double ea = row * total_a / total;
    double eb = row * total_b / total;
    if (c.first > 0) g += c.first * std::log(c.first / ea);
    if (c.second > 0) g += c.second * std::log(c.second / eb);
  }
  res.statistic = 2.0 * g;
  res.dof = static_cast<double>(cells.size() - 1);
  res.p_value = chi_squared_upper_tail(res.statistic, res.dof);
  return res;
}

}  // namespace olt
