#include "olt/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "olt/errors.hpp"
#include "olt/f2vec.hpp"

namespace olt {

namespace {

constexpr int kMaxAttempts = 50;

std::vector<uint32_t> random_monomials(int n, int max_degree, Rng& rng) {
  std::vector<uint32_t> masks;
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) <= max_degree && rng.bit()) masks.push_back(mask);
  }
  return masks;
}

}  // namespace

GeneratedBitInput random_linear(int n, Rng& rng) {
  GeneratedBitInput out;
  uint32_t s = static_cast<uint32_t>(rng.below(uint64_t{1} << n));
  BooleanFunctionTable f(n);
  uint64_t size = f.size();
  for (uint64_t x = 0; x < size; ++x) {
    if (std::popcount(x & s) & 1) f.set(x, 1);
  }
  out.table = std::move(f);
  out.in_property = true;
  out.note = "chi_" + std::to_string(s);
  return out;
}

GeneratedBitInput random_degree_d(int n, int d, Rng& rng) {
  GeneratedBitInput out;
  out.table = BooleanFunctionTable::from_anf(n, random_monomials(n, d, rng));
  out.in_property = true;
  out.note = "random degree-" + std::to_string(d);
  return out;
}

GeneratedBitInput random_function(int n, Rng& rng) {
  GeneratedBitInput out;
  out.table = BooleanFunctionTable::random(n, rng);
  out.note = "uniform function";
  return out;
}

GeneratedBitInput planted_far_linear(int n, double eps_target, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    BooleanFunctionTable f = BooleanFunctionTable::random(n, rng);
    Rational dist = distance_to_linearity(f);
    if (dist.to_double() >= eps_target) {
      GeneratedBitInput out;
      out.table = std::move(f);
      out.certified_distance = dist;
      out.note = "linearity distance " + dist.str();
      return out;
    }
  }
  throw CertificationFailedError("planted_far_linear: no certified sample in 50 attempts");
}

GeneratedBitInput planted_far_degree(int n, int d, double eps_target, Rng& rng) {
  // Largest base variable count whose Reed-Muller enumeration stays within
  // the exact-oracle cap.
  int k = d + 1;
  while (k + 1 <= n && binomial_sum(k + 1, d) <= 24) ++k;
  if (k > n) k = n;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    BooleanFunctionTable g = BooleanFunctionTable::from_anf(k, random_monomials(k, d + 1, rng));
    Rational dist = distance_to_degree_d(g, d);
    if (dist.to_double() < eps_target) continue;

    // Lift: k independent affine forms of the n coordinates feed g; a random
    // degree-d mask is XORed on top. Distance to the degree-d class is
    // invariant under both.
    F2Basis basis(static_cast<size_t>(n));
    std::vector<uint64_t> rows;
    uint64_t row_space = uint64_t{1} << n;
    while (rows.size() < static_cast<size_t>(k)) {
      uint64_t candidate = rng.below(row_space);
      F2Vec v(static_cast<size_t>(n));
      for (int b = 0; b < n; ++b) v.set(static_cast<size_t>(b), (candidate >> b) & 1);
      if (basis.insert(v)) rows.push_back(candidate);
    }
    uint64_t translate = rng.below(uint64_t{1} << k);
    BooleanFunctionTable mask = BooleanFunctionTable::from_anf(n, random_monomials(n, d, rng));
    BooleanFunctionTable f(n);
    uint64_t size = f.size();
    for (uint64_t x = 0; x < size; ++x) {
      uint64_t y = translate;
      for (int i = 0; i < k; ++i) {
        y ^= static_cast<uint64_t>(std::popcount(x & rows[static_cast<size_t>(i)]) & 1) << i;
      }
      f.set(x, static_cast<uint8_t>(g.eval(y) ^ mask.eval(x)));
    }
    GeneratedBitInput out;
    out.table = std::move(f);
    out.certified_distance = dist;
    out.note = "degree-" + std::to_string(d) + " distance " + dist.str() + " (base k=" +
               std::to_string(k) + ")";
    return out;
  }
  throw CertificationFailedError("planted_far_degree: no certified sample in 50 attempts");
}

GeneratedSeqInput sorted_identity(uint64_t n) {
  std::vector<double> vals(n);
  for (uint64_t i = 0; i < n; ++i) vals[i] = static_cast<double>(i + 1);
  GeneratedSeqInput out;
  out.seq = RealSequence(std::move(vals));
  out.in_property = true;
  out.note = "identity";
  return out;
}

GeneratedSeqInput planted_far_sorted(uint64_t n, double eps_target, Rng& rng) {
  uint64_t want = static_cast<uint64_t>(std::ceil(eps_target * static_cast<double>(n)));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<double> vals(n);
    for (uint64_t i = 0; i < n; ++i) vals[i] = static_cast<double>(i + 1);
    if (rng.bit()) {
      // Disjoint adjacent transpositions on `want` random pairs.
      std::vector<uint32_t> pairs = rng.subset(static_cast<uint32_t>(n / 2),
                                               static_cast<uint32_t>(std::min(want, n / 2)));
      for (uint32_t pi : pairs) std::swap(vals[2 * pi], vals[2 * pi + 1]);
    } else {
      // Rewrite style: clobber ~2 eps n random positions with random values.
      uint64_t rewrites = std::min(n, 2 * want + 1);
      for (uint64_t i = 0; i < rewrites; ++i) {
        vals[rng.below(n)] = static_cast<double>(rng.below(n + 1));
      }
    }
    RealSequence seq(std::move(vals));
    Rational dist = distance_to_sortedness(seq);
    if (dist.to_double() >= eps_target) {
      GeneratedSeqInput out;
      out.seq = std::move(seq);
      out.certified_distance = dist;
      out.note = "sortedness distance " + dist.str();
      return out;
    }
  }
  throw CertificationFailedError("planted_far_sorted: no certified sample in 50 attempts");
}

GeneratedSeqInput planted_far_lipschitz(uint64_t n, double eps_target, Rng& rng) {
  uint64_t want = static_cast<uint64_t>(std::ceil(eps_target * static_cast<double>(n)));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<double> vals(n);
    for (uint64_t i = 0; i < n; ++i) vals[i] = static_cast<double>(i + 1);
    uint64_t spikes = std::min(n, want + want / 2 + 1);
    for (uint64_t i = 0; i < spikes; ++i) {
      uint64_t pos = rng.below(n);
      vals[pos] += rng.bit() ? 4.0 : -4.0;
    }
    RealSequence seq(std::move(vals));
    Rational dist = distance_to_lipschitz(seq);
    if (dist.to_double() >= eps_target) {
      GeneratedSeqInput out;
      out.seq = std::move(seq);
      out.certified_distance = dist;
      out.note = "lipschitz distance " + dist.str();
      return out;
    }
  }
  throw CertificationFailedError("planted_far_lipschitz: no certified sample in 50 attempts");
}

}  // namespace olt
