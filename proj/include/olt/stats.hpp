#ifndef OLT_STATS_HPP_
#define OLT_STATS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace olt {

struct WilsonInterval {
  double lower = 0;
  double upper = 1;
};

// Wilson score interval for a binomial proportion; solid near 0 and 1, which
// is exactly where one-sided-error estimates live.
WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z = 1.959963984540054);

// Upper tail of the chi-squared distribution with k degrees of freedom.
double chi_squared_upper_tail(double statistic, double dof);

struct GTestResult {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

// Two-sample log-likelihood ratio test: are the two count histograms drawn
// from the same distribution? Categories whose combined count falls below
// `pool_below` are pooled into one bucket first.
GTestResult g_test(const std::map<std::string, uint64_t>& counts_a,
                   const std::map<std::string, uint64_t>& counts_b, uint64_t pool_below = 10);

}  // namespace olt

#endif  // OLT_STATS_HPP_
