#ifndef OLT_PATTERNS_HPP_
#define OLT_PATTERNS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace olt {

// An l x m binary matrix whose rows, applied to an m x n parameter matrix M,
// spell out l testing points (the rows of XM). A valid pattern has l >= m,
// distinct rows, and full column rank over F2.
class PatternMatrix {
 public:
  // Validating constructor; throws std::invalid_argument on a rank-deficient
  // or duplicate-row matrix.
  PatternMatrix(std::vector<uint32_t> rows, int columns);

  // Builds without validation. Exists because the literal chain-of-cubes
  // construction emits duplicate rows for s = 1; such matrices are kept
  // representable so the goodness checker can say "no" about them.
  static PatternMatrix raw(std::vector<uint32_t> rows, int columns);

  int rows() const { return static_cast<int>(rows_.size()); }
  int columns() const { return columns_; }
  uint32_t row(int i) const { return rows_[static_cast<size_t>(i)]; }
  const std::vector<uint32_t>& row_masks() const { return rows_; }

  bool valid() const;  // the three structural invariants

  std::string describe() const;

 private:
  PatternMatrix() = default;

  std::vector<uint32_t> rows_;
  int columns_ = 0;
};

// Instance points y_1..y_l of pattern X under parameters M (m row vectors in
// {0,1}^n, given as bit masks): y_i = xor of the parameter rows selected by
// row i of X.
std::vector<uint64_t> pattern_instance(const PatternMatrix& x, const std::vector<uint64_t>& params);

// phi_S(X) = sum_i prod_{j in S} X_ij over F2, with S a column bitmask.
int pattern_phi(const PatternMatrix& x, uint32_t column_subset);

// A pattern is good for degree-d functions iff phi_S = 0 for every |S| <= d
// and phi_S = 1 for some |S| = d+1.
bool is_good_pattern(const PatternMatrix& x, int d);

// Chain of cubes chi_{d,s}: d cube columns, s chain columns (s odd), rows
// indexed by (i, j) for i in [s+1], j in {0,1}^d. Row (i,j) carries j on the
// cube columns; chain column d+i alone when i <= s, all chain columns when
// i = s+1. (s+1)*2^d rows. Good for degree d+1 when s >= 3; the s = 1 matrix
// degenerates to duplicate row blocks that cancel, and is good for nothing.
PatternMatrix chain_of_cubes(int d, int s);

// All (d+2)-bit row vectors with last bit set: the affine (d+1)-dimensional
// cube, good for degree d.
PatternMatrix affine_cube_pattern(int d);

// Rows {10, 01, 11}: x1, x2, x1+x2. Characterizes linear functions (it is not
// a good pattern for any degree class: phi_empty = 1).
PatternMatrix blr_square_pattern();

}  // namespace olt

#endif  // OLT_PATTERNS_HPP_
