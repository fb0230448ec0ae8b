#ifndef OLT_BOOL_TESTERS_HPP_
#define OLT_BOOL_TESTERS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "olt/boolfun.hpp"
#include "olt/oracle.hpp"
#include "olt/patterns.hpp"
#include "olt/rng.hpp"

namespace olt {

template <class V>
struct WitnessEntry {
  uint64_t point = 0;
  V value{};
};

// A tester's outcome. Internally everything is the 0/1 convention: a tuple of
// answers is a violation iff its XOR is 1, which matches the +-1 product
// check in the source algorithms. A reject always carries the witness tuple,
// and a witness never contains an erased answer.
template <class V>
struct TesterVerdict {
  bool accept = true;
  bool saw_manipulation = false;
  std::vector<WitnessEntry<V>> witness;
};

using BitVerdict = TesterVerdict<uint8_t>;
using RealVerdict = TesterVerdict<double>;

struct TesterParams {
  int m = 0;         // reserve size
  double alpha = 0;  // per-iteration success lower bound
  int64_t r = 0;     // iteration count
  int64_t ell = 0;   // pattern size (degree tester)
  bool in_proven_regime = true;
};

// ---------------------------------------------------------------------------
// Generalized BLR.

// Queries k uniform points and their XOR; rejects iff the k+1 answers are all
// present and have odd parity. k even, k >= 2.
BitVerdict blr_k_test(BitOracle& oracle, int n, int k, Rng& rng);

// Exact rejection probability of blr_k on f: 1/2 - 1/2 sum_S fhat(S)^{k+1}.
double exact_blr_k_rejection(const BooleanFunctionTable& f, int k);

// ---------------------------------------------------------------------------
// Online-erasure-resilient linearity tester.

// m <- 4*ceil((14 + log t + log log^2 t + log(1/eps^2)) / 4), alpha <-
// min{1/4, m eps/4}, r <- ceil(5/(4 alpha)); t clamped up to 2 first. Also
// reports whether (eps, t, n) lie in the proven parameter range
// t log^2 t <= 2^-21 eps^2.5 2^(n/2).
TesterParams linearity_params(double eps, double t, int n);

BitVerdict online_linearity_test(BitOracle& oracle, int n, double eps, double t, Rng& rng);

// One reserve-and-XOR round with reserve size m (m divisible by 4); exposed
// for distribution tests. Returns nullopt when the round does not reject.
std::optional<std::vector<WitnessEntry<uint8_t>>> linearity_iteration(BitOracle& oracle, int n,
                                                                      int m, Rng& rng);

// ---------------------------------------------------------------------------
// Pattern tester.

// Draws a uniform parameter matrix, queries the instance points one batch
// each, rejects iff the answers are all present and XOR to 1.
BitVerdict x_tester(const PatternMatrix& x, BitOracle& oracle, int n, Rng& rng);

// Exact rejection probability of the X-tester on f by enumerating all 2^{mn}
// parameter matrices. Test oracle; keep m*n small.
double x_tester_rejection_exhaustive(const PatternMatrix& x, const BooleanFunctionTable& f);

// ---------------------------------------------------------------------------
// Online-erasure-resilient degree-d tester (batch size 2^{d-1}).

TesterParams degree_params(double eps, int d, double t, int n);

BitVerdict online_degree_test(BitOracle& oracle, int n, double eps, int d, double t, Rng& rng);

// One chain-of-cubes round with chain length m (odd); exposed for
// distribution tests.
std::optional<std::vector<WitnessEntry<uint8_t>>> degree_iteration(BitOracle& oracle, int n, int d,
                                                                   int m, Rng& rng);

// ---------------------------------------------------------------------------
// Large-batch subspace tester (batch size 2^{d+1}).

// r = ceil(10/s) rounds with s = min{2^{d+1} eps, zeta}; each round queries a
// uniform affine (d+1)-dimensional subspace in one batch and rejects on odd
// parity with no erasures. Dependent direction samples proceed as-is; the
// batch then holds repeated points.
BitVerdict batch_subspace_degree_test(BitOracle& oracle, int n, double eps, int d, double t,
                                      double zeta, Rng& rng);

}  // namespace olt

#endif  // OLT_BOOL_TESTERS_HPP_
