#include "olt/boolfun.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "olt/errors.hpp"

namespace olt {

namespace {

uint64_t word_count(int n) { return n >= 6 ? (uint64_t{1} << (n - 6)) : 1; }

// Bits beyond 2^n in the last word are kept zero so popcounts stay honest.
uint64_t tail_mask(int n) {
  return n >= 6 ? ~uint64_t{0} : ((uint64_t{1} << (uint64_t{1} << n)) - 1);
}

}  // namespace

BooleanFunctionTable::BooleanFunctionTable(int n) : n_(n) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("BooleanFunctionTable: n out of range");
  bits_.assign(word_count(n), 0);
}

BooleanFunctionTable::BooleanFunctionTable(int n, std::vector<uint64_t> packed_bits)
    : n_(n), bits_(std::move(packed_bits)) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("BooleanFunctionTable: n out of range");
  if (bits_.size() != word_count(n)) throw std::invalid_argument("BooleanFunctionTable: bad length");
  bits_.back() &= tail_mask(n);
}

BooleanFunctionTable BooleanFunctionTable::random(int n, Rng& rng) {
  BooleanFunctionTable f(n);
  for (auto& w : f.bits_) w = rng.next();
  f.bits_.back() &= tail_mask(n);
  return f;
}

BooleanFunctionTable BooleanFunctionTable::from_anf(int n, const std::vector<uint32_t>& monomial_masks) {
  BooleanFunctionTable f(n);
  for (uint32_t mask : monomial_masks) f.xor_with(monomial_table(n, mask));
  return f;
}

void BooleanFunctionTable::xor_with(const BooleanFunctionTable& other) {
  if (other.n_ != n_) throw std::invalid_argument("xor_with: dimension mismatch");
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
}

uint64_t BooleanFunctionTable::weight() const {
  uint64_t w = 0;
  for (uint64_t word : bits_) w += std::popcount(word);
  return w;
}

uint64_t BooleanFunctionTable::hamming_distance(const BooleanFunctionTable& other) const {
  if (other.n_ != n_) throw std::invalid_argument("hamming_distance: dimension mismatch");
  uint64_t d = 0;
  for (size_t i = 0; i < bits_.size(); ++i) d += std::popcount(bits_[i] ^ other.bits_[i]);
  return d;
}

std::string BooleanFunctionTable::serialize() const {
  static const char* hex = "0123456789abcdef";
  std::string out = "n=" + std::to_string(n_) + ":";
  uint64_t nbits = size();
  // Most significant index first, 4 bits per hex digit.
  uint64_t digits = (nbits + 3) / 4;
  for (uint64_t d = 0; d < digits; ++d) {
    uint64_t lo = (digits - 1 - d) * 4;
    int v = 0;
    for (int b = 3; b >= 0; --b) {
      uint64_t x = lo + b;
      v = (v << 1) | (x < nbits ? eval(x) : 0);
    }
    out.push_back(hex[v]);
  }
  return out;
}

BooleanFunctionTable BooleanFunctionTable::deserialize(const std::string& text) {
  if (text.rfind("n=", 0) != 0) throw std::invalid_argument("truth table: expected \"n=<n>:<hex>\"");
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("truth table: missing ':'");
  int n = std::stoi(text.substr(2, colon - 2));
  BooleanFunctionTable f(n);
  uint64_t nbits = f.size();
  uint64_t digits = (nbits + 3) / 4;
  std::string hex = text.substr(colon + 1);
  if (hex.size() != digits) throw std::invalid_argument("truth table: bad hex length");
  for (uint64_t d = 0; d < digits; ++d) {
    char c = hex[d];
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw std::invalid_argument("truth table: bad hex digit");
    uint64_t lo = (digits - 1 - d) * 4;
    for (int b = 0; b < 4; ++b) {
      uint64_t x = lo + b;
      if (x < nbits && ((v >> b) & 1)) f.set(x, 1);
    }
  }
  return f;
}

BooleanFunctionTable monomial_table(int n, uint32_t mask) {
  BooleanFunctionTable t(n);
  uint64_t size = t.size();
  for (uint64_t x = 0; x < size; ++x) {
    if ((x & mask) == mask) t.set(x, 1);
  }
  return t;
}

int32_t FourierSpectrum::max_raw() const {
  int32_t best = raw_[0];
  for (int32_t v : raw_)
    if (v > best) best = v;
  return best;
}

double FourierSpectrum::parseval_sum() const {
  double scale = 1.0 / static_cast<double>(uint64_t{1} << n_);
  double sum = 0;
  for (int32_t v : raw_) {
    double c = v * scale;
    sum += c * c;
  }
  return sum;
}

FourierSpectrum wht(const BooleanFunctionTable& f) {
  int n = f.n();
  uint64_t size = f.size();
  std::vector<int32_t> a(size);
  for (uint64_t x = 0; x < size; ++x) a[x] = f.eval(x) ? -1 : 1;
  for (uint64_t half = 1; half < size; half <<= 1) {
    for (uint64_t block = 0; block < size; block += half << 1) {
      for (uint64_t i = block; i < block + half; ++i) {
        int32_t u = a[i];
        int32_t v = a[i + half];
        a[i] = u + v;
        a[i + half] = u - v;
      }
    }
  }
  return FourierSpectrum(n, std::move(a));
}

Rational distance_to_linearity(const BooleanFunctionTable& f) {
  FourierSpectrum spec = wht(f);
  int64_t size = int64_t{1} << f.n();
  // (2^n - max raw) is twice the Hamming distance to the closest character.
  return Rational((size - spec.max_raw()) / 2, size);
}

Rational distance_to_linearity_exhaustive(const BooleanFunctionTable& f) {
  int n = f.n();
  uint64_t size = f.size();
  uint64_t best = size;
  for (uint64_t s = 0; s < size; ++s) {
    uint64_t d = 0;
    for (uint64_t x = 0; x < size; ++x) {
      uint8_t lin = static_cast<uint8_t>(std::popcount(x & s) & 1);
      d += (lin != f.eval(x));
    }
    if (d < best) best = d;
  }
  return Rational(static_cast<int64_t>(best), int64_t{1} << n);
}

std::vector<uint64_t> anf_coefficients(const BooleanFunctionTable& f) {
  uint64_t size = f.size();
  std::vector<uint64_t> a(size);
  for (uint64_t x = 0; x < size; ++x) a[x] = f.eval(x);
  // Moebius transform over the subset lattice.
  for (int i = 0; i < f.n(); ++i) {
    uint64_t bit = uint64_t{1} << i;
    for (uint64_t x = 0; x < size; ++x) {
      if (x & bit) a[x] ^= a[x ^ bit];
    }
  }
  return a;
}

int anf_degree(const BooleanFunctionTable& f) {
  std::vector<uint64_t> a = anf_coefficients(f);
  int deg = 0;
  for (uint64_t s = 0; s < a.size(); ++s) {
    if (a[s]) {
      int w = std::popcount(s);
      if (w > deg) deg = w;
    }
  }
  return deg;
}

uint64_t binomial_sum(int n, int d) {
  uint64_t total = 0;
  uint64_t c = 1;
  for (int i = 0; i <= d && i <= n; ++i) {
    total += c;
    c = c * (n - i) / (i + 1);
  }
  return total;
}

Rational distance_to_degree_d(const BooleanFunctionTable& f, int d) {
  int n = f.n();
  if (d < 0) throw std::invalid_argument("distance_to_degree_d: d < 0");
  uint64_t k = binomial_sum(n, d);
  if (k > 24) {
    throw DimensionTooLargeError("distance_to_degree_d: " + std::to_string(k) +
                                 " monomials; enumeration capped at 2^24 codewords");
  }
  std::vector<BooleanFunctionTable> monomials;
  monomials.reserve(k);
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) <= d) monomials.push_back(monomial_table(n, mask));
  }
  // Gray-code walk over all 2^k codewords; cur = f xor codeword.
  BooleanFunctionTable cur = f;
  uint64_t best = cur.weight();
  uint64_t total = uint64_t{1} << k;
  for (uint64_t g = 1; g < total && best > 0; ++g) {
    cur.xor_with(monomials[std::countr_zero(g)]);
    uint64_t w = cur.weight();
    if (w < best) best = w;
  }
  return Rational(static_cast<int64_t>(best), int64_t{1} << n);
}

}  // namespace olt
