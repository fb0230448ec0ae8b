#ifndef OLT_BOOLFUN_HPP_
#define OLT_BOOLFUN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "olt/rational.hpp"
#include "olt/rng.hpp"

namespace olt {

// Full truth table of f: {0,1}^n -> {0,1}, bit-packed, n <= 24.
// Index x is read as a point in the cube: bit i of the index is coordinate
// x[i]. Immutable in spirit: testers and oracles only read it.
class BooleanFunctionTable {
 public:
  static constexpr int kMaxN = 24;

  explicit BooleanFunctionTable(int n);
  BooleanFunctionTable(int n, std::vector<uint64_t> packed_bits);

  static BooleanFunctionTable random(int n, Rng& rng);
  // f(x) = <coeffs, monomials>: one bit per subset mask with |mask| popcount
  // arbitrary; used to build random low-degree polynomials.
  static BooleanFunctionTable from_anf(int n, const std::vector<uint32_t>& monomial_masks);

  int n() const { return n_; }
  uint64_t size() const { return uint64_t{1} << n_; }

  uint8_t eval(uint64_t x) const {
    return static_cast<uint8_t>((bits_[x >> 6] >> (x & 63)) & 1);
  }
  void set(uint64_t x, uint8_t v) {
    uint64_t mask = uint64_t{1} << (x & 63);
    if (v)
      bits_[x >> 6] |= mask;
    else
      bits_[x >> 6] &= ~mask;
  }
  void flip(uint64_t x) { bits_[x >> 6] ^= uint64_t{1} << (x & 63); }

  const std::vector<uint64_t>& words() const { return bits_; }
  std::vector<uint64_t>& words() { return bits_; }

  void xor_with(const BooleanFunctionTable& other);
  uint64_t weight() const;
  uint64_t hamming_distance(const BooleanFunctionTable& other) const;

  bool operator==(const BooleanFunctionTable& o) const { return n_ == o.n_ && bits_ == o.bits_; }

  // "n=<n>:<hex>" with the most significant index first.
  std::string serialize() const;
  static BooleanFunctionTable deserialize(const std::string& text);

 private:
  int n_;
  std::vector<uint64_t> bits_;
};

// Truth table of the monomial prod_{i in mask} x[i] on n variables.
BooleanFunctionTable monomial_table(int n, uint32_t mask);

// Walsh-Hadamard spectrum held exactly: raw_[S] = 2^n * fhat(S), an integer,
// where fhat(S) = 2^-n sum_x (-1)^{f(x)} (-1)^{<S,x>}.
class FourierSpectrum {
 public:
  FourierSpectrum(int n, std::vector<int32_t> raw) : n_(n), raw_(std::move(raw)) {}

  int n() const { return n_; }
  int32_t raw(uint64_t s) const { return raw_[s]; }
  const std::vector<int32_t>& raw() const { return raw_; }
  double coeff(uint64_t s) const { return static_cast<double>(raw_[s]) / static_cast<double>(uint64_t{1} << n_); }

  int32_t max_raw() const;

  // sum_S fhat(S)^2; equals 1 exactly for any +-1-valued source.
  double parseval_sum() const;

 private:
  int n_;
  std::vector<int32_t> raw_;
};

// Fast in-place transform, O(n 2^n).
FourierSpectrum wht(const BooleanFunctionTable& f);

// (1 - max_S fhat(S)) / 2 as an exact rational with denominator 2^n.
Rational distance_to_linearity(const BooleanFunctionTable& f);

// Exhaustive minimum over all 2^n characters chi_S; test oracle for the
// spectral route.
Rational distance_to_linearity_exhaustive(const BooleanFunctionTable& f);

// Degree of the algebraic normal form; the zero function has degree 0.
int anf_degree(const BooleanFunctionTable& f);

// ANF coefficient vector (one bit per subset mask) via the Moebius transform.
std::vector<uint64_t> anf_coefficients(const BooleanFunctionTable& f);

// Minimum relative Hamming distance to any polynomial of degree <= d,
// enumerating all Reed-Muller codewords by Gray-code XOR of monomial tables.
// Requires sum_{i<=d} C(n,i) <= 24.
Rational distance_to_degree_d(const BooleanFunctionTable& f, int d);

uint64_t binomial_sum(int n, int d);  // sum_{i=0}^{d} C(n,i)

}  // namespace olt

#endif  // OLT_BOOLFUN_HPP_
