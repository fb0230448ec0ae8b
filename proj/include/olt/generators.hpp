#ifndef OLT_GENERATORS_HPP_
#define OLT_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "olt/boolfun.hpp"
#include "olt/rational.hpp"
#include "olt/rng.hpp"
#include "olt/sequence.hpp"

namespace olt {

// Every generated input carries its certificate: either exact membership in
// the target property or an exact lower-bounded distance from it. Planted
// generators resample until certification succeeds (at most 50 attempts).

struct GeneratedBitInput {
  GeneratedBitInput() : table(1) {}
  BooleanFunctionTable table;
  bool in_property = false;
  std::optional<Rational> certified_distance;
  std::string note;
};

struct GeneratedSeqInput {
  GeneratedSeqInput() : seq(std::vector<double>{0, 0}) {}
  RealSequence seq;
  bool in_property = false;
  std::optional<Rational> certified_distance;
  std::string note;
};

GeneratedBitInput random_linear(int n, Rng& rng);
GeneratedBitInput random_degree_d(int n, int d, Rng& rng);
GeneratedBitInput random_function(int n, Rng& rng);

// A uniformly random function, certified eps_target-far from linear via the
// spectrum.
GeneratedBitInput planted_far_linear(int n, double eps_target, Rng& rng);

// A random degree-(d+1) polynomial on a small certifiable variable set,
// certified by Reed-Muller enumeration, then lifted to n variables by an
// affine change of coordinates and masked with a random degree-d polynomial.
// Both steps preserve the exact distance to the degree-d class.
GeneratedBitInput planted_far_degree(int n, int d, double eps_target, Rng& rng);

GeneratedSeqInput sorted_identity(uint64_t n);

// Identity sequence with ceil(eps n) disjoint adjacent transpositions (or a
// rewrite-style perturbation), certified by the exact sortedness oracle.
GeneratedSeqInput planted_far_sorted(uint64_t n, double eps_target, Rng& rng);

// Unit-slope staircase with spikes, certified by the exact Lipschitz oracle.
GeneratedSeqInput planted_far_lipschitz(uint64_t n, double eps_target, Rng& rng);

}  // namespace olt

#endif  // OLT_GENERATORS_HPP_
