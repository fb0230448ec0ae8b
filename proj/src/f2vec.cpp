#include "olt/f2vec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "olt/rng.hpp"

namespace olt {

int F2Vec::leading_bit() const {
  for (size_t w = words_.size(); w-- > 0;) {
    if (words_[w]) return static_cast<int>(w * 64 + 63 - std::countl_zero(words_[w]));
  }
  return -1;
}

void F2Basis::reduce(F2Vec& v) const {
  for (const F2Vec& row : rows_) {
    int lead = row.leading_bit();
    if (v.get(static_cast<size_t>(lead))) v.xor_with(row);
  }
}

bool F2Basis::insert(F2Vec v) {
  if (v.bits() != bits_) throw std::invalid_argument("F2Basis: width mismatch");
  reduce(v);
  if (v.is_zero()) return false;
  int lead = v.leading_bit();
  auto pos = std::find_if(rows_.begin(), rows_.end(),
                          [lead](const F2Vec& r) { return r.leading_bit() < lead; });
  rows_.insert(pos, std::move(v));
  return true;
}

bool F2Basis::contains(F2Vec v) const {
  reduce(v);
  return v.is_zero();
}

size_t f2_rank(const std::vector<F2Vec>& vectors) {
  if (vectors.empty()) return 0;
  F2Basis basis(vectors[0].bits());
  for (const F2Vec& v : vectors) basis.insert(v);
  return basis.rank();
}

std::vector<F2Vec> f2_span_basis(const std::vector<F2Vec>& vectors) {
  if (vectors.empty()) return {};
  F2Basis basis(vectors[0].bits());
  for (const F2Vec& v : vectors) basis.insert(v);
  // Back-substitute to the reduced form: each leading bit appears in one row.
  std::vector<F2Vec> rows = basis.rows();
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (rows[j].get(static_cast<size_t>(rows[i].leading_bit()))) rows[j].xor_with(rows[i]);
    }
  }
  return rows;
}

std::vector<F2Vec> span_enumerate(const std::vector<F2Vec>& basis) {
  size_t rank = basis.size();
  if (rank > 20) throw SpanTooLargeError("span_enumerate: rank > 20");
  if (basis.empty()) return {F2Vec(0)};
  std::vector<F2Vec> out;
  out.reserve(size_t{1} << rank);
  out.push_back(F2Vec(basis[0].bits()));
  for (const F2Vec& b : basis) {
    size_t cur = out.size();
    for (size_t i = 0; i < cur; ++i) {
      F2Vec v = out[i];
      v.xor_with(b);
      out.push_back(std::move(v));
    }
  }
  return out;
}

SubsetIndexer::SubsetIndexer(int n, int d) : n_(n), d_(d) {
  if (n < 1 || n > 32 || d < 0 || d > n) throw std::invalid_argument("SubsetIndexer: bad (n, d)");
  for (int card = 0; card <= d; ++card) {
    // Subsets of fixed cardinality in lexicographic order of sorted tuples:
    // start from the lowest `card` indices and step to the next combination.
    if (card == 0) {
      masks_.push_back(0);
      continue;
    }
    std::vector<int> idx(card);
    for (int i = 0; i < card; ++i) idx[i] = i;
    for (;;) {
      uint32_t mask = 0;
      for (int i : idx) mask |= uint32_t{1} << i;
      masks_.push_back(mask);
      int pos = card - 1;
      while (pos >= 0 && idx[pos] == n - card + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

ExtendedVector ext(uint64_t x, const SubsetIndexer& indexer) {
  ExtendedVector v;
  v.n = indexer.n();
  v.d = indexer.d();
  v.coords = F2Vec(indexer.count());
  for (size_t i = 0; i < indexer.count(); ++i) {
    uint32_t mask = indexer.mask_at(i);
    if ((x & mask) == mask) v.coords.set(i, true);
  }
  return v;
}

uint64_t project(const ExtendedVector& v) { return project_raw(v.coords, v.n); }

uint64_t project_raw(const F2Vec& coords, int n) {
  uint64_t x = 0;
  for (int i = 0; i < n; ++i) {
    if (coords.get(1 + static_cast<size_t>(i))) x |= uint64_t{1} << i;
  }
  return x;
}

SpanTracker::SpanTracker(size_t bits, int n, uint64_t element_cap)
    : bits_(bits), words_((bits + 63) / 64), n_(n), cap_(element_cap), basis_(bits) {
  elements_.assign(words_, 0);  // the zero vector
}

const std::vector<uint64_t>& SpanTracker::insert(const F2Vec& v) {
  fresh_projections_.clear();
  if (!basis_.insert(v)) return fresh_projections_;
  if (overflowed_) return fresh_projections_;
  if (rank() == 1) fresh_projections_.push_back(0);  // zero vector counts once
  uint64_t old_count = uint64_t{1} << (rank() - 1);
  if (old_count * 2 > cap_) {
    overflowed_ = true;
    elements_.clear();
    return fresh_projections_;
  }
  size_t old_size = elements_.size();
  elements_.resize(old_size * 2);
  const uint64_t* vw = v.words().data();
  for (uint64_t e = 0; e < old_count; ++e) {
    uint64_t* dst = elements_.data() + old_size + e * words_;
    const uint64_t* src = elements_.data() + e * words_;
    for (size_t w = 0; w < words_; ++w) dst[w] = src[w] ^ vw[w];
    // Singleton coordinates are positions 1..n of the packed vector.
    uint64_t x = 0;
    for (int i = 0; i < n_; ++i) {
      size_t pos = 1 + static_cast<size_t>(i);
      if ((dst[pos >> 6] >> (pos & 63)) & 1) x |= uint64_t{1} << i;
    }
    fresh_projections_.push_back(x);
  }
  return fresh_projections_;
}

uint64_t SpanTracker::sample_projection(Rng& rng) const {
  F2Vec acc(bits_);
  for (const F2Vec& row : basis_.rows()) {
    if (rng.bit()) acc.xor_with(row);
  }
  return project_raw(acc, n_);
}

}  // namespace olt
