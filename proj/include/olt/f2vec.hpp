#ifndef OLT_F2VEC_HPP_
#define OLT_F2VEC_HPP_

#include <cstdint>
#include <vector>

#include "olt/errors.hpp"

namespace olt {

// Dense F2 vectors of a fixed bit width, stored packed. All the span/rank
// machinery below works on rows of a shared width.
class F2Vec {
 public:
  F2Vec() : bits_(0) {}
  explicit F2Vec(size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  size_t bits() const { return bits_; }
  size_t word_count() const { return words_.size(); }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void xor_with(const F2Vec& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  }

  bool is_zero() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  // Index of the highest set bit, or -1 for the zero vector.
  int leading_bit() const;

  bool operator==(const F2Vec& o) const { return bits_ == o.bits_ && words_ == o.words_; }

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

 private:
  size_t bits_;
  std::vector<uint64_t> words_;
};

// Row-echelon basis over F2, reduced incrementally. Rows are kept with
// distinct leading bits, so rank queries and membership tests are cheap.
class F2Basis {
 public:
  explicit F2Basis(size_t bits) : bits_(bits) {}

  size_t bits() const { return bits_; }
  size_t rank() const { return rows_.size(); }
  const std::vector<F2Vec>& rows() const { return rows_; }

  // Inserts v if independent; returns true when the rank grew.
  bool insert(F2Vec v);

  // True iff v lies in the current span.
  bool contains(F2Vec v) const;

 private:
  void reduce(F2Vec& v) const;

  size_t bits_;
  std::vector<F2Vec> rows_;  // sorted by decreasing leading bit
};

// Rank of an arbitrary list of equal-width vectors.
size_t f2_rank(const std::vector<F2Vec>& vectors);

// Reduced row-echelon basis of the span.
std::vector<F2Vec> f2_span_basis(const std::vector<F2Vec>& vectors);

// Every element of the span, each exactly once (2^rank entries, rank <= 20).
std::vector<F2Vec> span_enumerate(const std::vector<F2Vec>& basis);

// ---------------------------------------------------------------------------
// Extended monomial representation.

// Canonical order of the subsets S of [n] with |S| <= d: by cardinality,
// then lexicographically as sorted index tuples ({1} < {2} < ... < {1,2} <
// {1,3} < ...). Fixed so serialized objects are byte-reproducible.
class SubsetIndexer {
 public:
  SubsetIndexer(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  size_t count() const { return masks_.size(); }
  uint32_t mask_at(size_t idx) const { return masks_[idx]; }

  // Positions 1..n hold the singletons {1},...,{n}; position 0 is the empty set.
  size_t singleton_index(int var) const { return 1 + static_cast<size_t>(var); }

 private:
  int n_;
  int d_;
  std::vector<uint32_t> masks_;
};

// One bit per subset in canonical order; coords[S] = prod_{i in S} x_i.
struct ExtendedVector {
  int n = 0;
  int d = 0;
  F2Vec coords;
};

ExtendedVector ext(uint64_t x, const SubsetIndexer& indexer);

// Singleton-coordinate extraction; the left inverse of ext on true images,
// and the projection map for arbitrary span elements.
uint64_t project(const ExtendedVector& v);
uint64_t project_raw(const F2Vec& coords, int n);

// ---------------------------------------------------------------------------
// Incrementally enumerated span with projections, the workhorse of the
// span-erasing adversary. Keeps every span element packed in one flat buffer
// until the configured cap is hit.

class SpanTracker {
 public:
  SpanTracker(size_t bits, int n, uint64_t element_cap);

  // Inserts a vector. Returns the projections of the span elements that are
  // new since the last insertion (empty when v was already in the span).
  // After the cap is exceeded, the tracker stops enumerating and
  // `overflowed()` turns true.
  const std::vector<uint64_t>& insert(const F2Vec& v);

  bool overflowed() const { return overflowed_; }
  size_t rank() const { return basis_.rank(); }
  uint64_t element_count() const { return uint64_t{1} << basis_.rank(); }

  // Projection of a uniformly random span element. Uniform over the
  // projection set as well: preimage sizes are equal across points.
  uint64_t sample_projection(class Rng& rng) const;

 private:
  size_t bits_;
  size_t words_;
  int n_;
  uint64_t cap_;
  bool overflowed_ = false;
  F2Basis basis_;
  std::vector<uint64_t> elements_;  // packed, stride = words_
  std::vector<uint64_t> fresh_projections_;
};

}  // namespace olt

#endif  // OLT_F2VEC_HPP_
