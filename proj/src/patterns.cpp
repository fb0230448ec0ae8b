#include "olt/patterns.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace olt {

namespace {

int rank_of_rows(const std::vector<uint32_t>& rows) {
  std::vector<uint32_t> basis;
  for (uint32_t row : rows) {
    uint32_t v = row;
    for (uint32_t b : basis) {
      uint32_t lead = uint32_t{1} << (31 - std::countl_zero(b));
      if (v & lead) v ^= b;
    }
    if (v) basis.push_back(v);
  }
  return static_cast<int>(basis.size());
}

}  // namespace

PatternMatrix::PatternMatrix(std::vector<uint32_t> rows, int columns) {
  rows_ = std::move(rows);
  columns_ = columns;
  if (columns_ < 1 || columns_ > 31) throw std::invalid_argument("pattern: columns out of range");
  if (!valid()) throw std::invalid_argument("pattern: needs l >= m, distinct rows, rank m");
}

PatternMatrix PatternMatrix::raw(std::vector<uint32_t> rows, int columns) {
  PatternMatrix x;
  x.rows_ = std::move(rows);
  x.columns_ = columns;
  return x;
}

bool PatternMatrix::valid() const {
  if (rows_.size() < static_cast<size_t>(columns_)) return false;
  std::vector<uint32_t> sorted = rows_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return rank_of_rows(rows_) == columns_;
}

std::string PatternMatrix::describe() const {
  std::ostringstream out;
  out << rows() << "x" << columns_ << " pattern";
  return out.str();
}

std::vector<uint64_t> pattern_instance(const PatternMatrix& x, const std::vector<uint64_t>& params) {
  if (params.size() != static_cast<size_t>(x.columns()))
    throw std::invalid_argument("pattern_instance: parameter count != columns");
  std::vector<uint64_t> points;
  points.reserve(static_cast<size_t>(x.rows()));
  for (int i = 0; i < x.rows(); ++i) {
    uint32_t sel = x.row(i);
    uint64_t y = 0;
    while (sel) {
      int j = std::countr_zero(sel);
      sel &= sel - 1;
      y ^= params[static_cast<size_t>(j)];
    }
    points.push_back(y);
  }
  return points;
}

int pattern_phi(const PatternMatrix& x, uint32_t column_subset) {
  int parity = 0;
  for (uint32_t row : x.row_masks()) {
    if ((row & column_subset) == column_subset) parity ^= 1;
  }
  return parity;
}

bool is_good_pattern(const PatternMatrix& x, int d) {
  int m = x.columns();
  // (i) every subset of at most d columns sums to 0 across rows
  for (uint32_t s = 0; s < (uint32_t{1} << m); ++s) {
    if (std::popcount(s) <= d && pattern_phi(x, s) != 0) return false;
  }
  // (ii) some subset of exactly d+1 columns sums to 1
  if (d + 1 > m) return false;
  for (uint32_t s = 0; s < (uint32_t{1} << m); ++s) {
    if (std::popcount(s) == d + 1 && pattern_phi(x, s) == 1) return true;
  }
  return false;
}

PatternMatrix chain_of_cubes(int d, int s) {
  if (d < 0) throw std::invalid_argument("chain_of_cubes: d < 0");
  if (s < 1 || s % 2 == 0) throw std::invalid_argument("chain_of_cubes: s must be odd and >= 1");
  int m = d + s;
  if (m > 31) throw std::invalid_argument("chain_of_cubes: too many columns");
  std::vector<uint32_t> rows;
  rows.reserve(static_cast<size_t>(s + 1) << d);
  for (int i = 1; i <= s + 1; ++i) {
    uint32_t chain_bits;
    if (i <= s)
      chain_bits = uint32_t{1} << (d + i - 1);
    else
      chain_bits = ((uint32_t{1} << s) - 1) << d;
    for (uint32_t j = 0; j < (uint32_t{1} << d); ++j) {
      rows.push_back(j | chain_bits);
    }
  }
  return PatternMatrix::raw(std::move(rows), m);
}

PatternMatrix affine_cube_pattern(int d) {
  if (d < 0 || d > 28) throw std::invalid_argument("affine_cube_pattern: d out of range");
  int m = d + 2;
  std::vector<uint32_t> rows;
  uint32_t last = uint32_t{1} << (m - 1);
  for (uint32_t j = 0; j < (uint32_t{1} << (m - 1)); ++j) rows.push_back(j | last);
  return PatternMatrix(std::move(rows), m);
}

PatternMatrix blr_square_pattern() { return PatternMatrix({1, 2, 3}, 2); }

}  // namespace olt
