#ifndef OLT_SEQUENCE_HPP_
#define OLT_SEQUENCE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "olt/rational.hpp"

namespace olt {

// A materialized sequence f: [n] -> R. Positions are 1-based throughout, to
// match the interval arithmetic of the hierarchical partition. Huge implicit
// sequences bypass this type and hand a value function to the oracle
// directly.
struct RealSequence {
  explicit RealSequence(std::vector<double> vals);

  uint64_t n() const { return static_cast<uint64_t>(values.size()); }
  double at(uint64_t pos) const { return values[pos - 1]; }  // pos in [1, n]

  std::vector<double> values;
};

// A 2-local property, characterized by a family of forbidden consecutive
// pairs plus the fillability predicates the repairability analysis needs.
// gap_fillable(p, q, a, b): can positions p+1..q-1 be assigned so that no
// consecutive pair in [p..q] is forbidden, given f(p)=a, f(q)=b.
struct LocalPropertySpec {
  std::string name;
  std::function<bool(double, double)> forbidden;
  std::function<bool(uint64_t, uint64_t, double, double)> gap_fillable;
  std::function<bool(uint64_t, double)> prefix_fillable;  // positions 1..p-1 free
  std::function<bool(uint64_t, double)> suffix_fillable;  // positions q+1..n free
  // Exact relative distance oracle; shipped for sortedness and Lipschitz.
  std::function<Rational(const RealSequence&)> exact_distance;

  bool holds(const RealSequence& f) const;
};

const LocalPropertySpec& sortedness_property();
const LocalPropertySpec& lipschitz_property();
const LocalPropertySpec* find_property(const std::string& name);

// Whether no completion of {x: f(x)=vx, y: f(y)=vy} satisfies the property;
// positions are unordered, values travel with their positions.
bool pair_unrepairable(const LocalPropertySpec& prop, uint64_t n, uint64_t x, uint64_t y, double vx,
                       double vy);

// (n - longest non-decreasing subsequence) / n, O(n log n).
Rational distance_to_sortedness(const RealSequence& f);

// (n - largest kept set with |f(j)-f(i)| <= j-i for consecutive kept
// elements) / n, O(n^2).
Rational distance_to_lipschitz(const RealSequence& f);

// Test oracle: minimum changes over all kept subsets, O(2^n * n). n <= ~18.
Rational distance_brute_force(const RealSequence& f, const LocalPropertySpec& prop);

// Test oracle for pair_unrepairable: searches completions over a value grid
// built from the endpoint values and midpoints.
bool pair_unrepairable_brute_force(const LocalPropertySpec& prop, uint64_t n, uint64_t x, uint64_t y,
                                   double vx, double vy);

// CSV (one value per line) or inline JSON array.
RealSequence parse_sequence(const std::string& text);

}  // namespace olt

#endif  // OLT_SEQUENCE_HPP_
