#ifndef OLT_TESTS_TEST_SUPPORT_HPP_
#define OLT_TESTS_TEST_SUPPORT_HPP_

#include <functional>
#include <vector>

#include "olt/boolfun.hpp"
#include "olt/oracle.hpp"

namespace olt_test {

// Offline view of a truth table: identity adversary, unbounded batch.
inline olt::BitOracle offline_oracle(const olt::BooleanFunctionTable& f, uint32_t batch = 1) {
  olt::OracleConfig cfg;
  cfg.t = olt::Rational(0);
  cfg.batch = batch;
  return olt::BitOracle(f.size(), [&f](uint64_t x) { return f.eval(x); }, cfg);
}

// Scripted adversary for driving oracle edge cases from tests.
template <class V>
class ScriptedAdversary : public olt::Adversary<V> {
 public:
  using Fn = std::function<std::vector<olt::ManipulationRequest<V>>(
      const std::vector<olt::QueryRecord<V>>&, const olt::AdversaryView<V>&)>;
  explicit ScriptedAdversary(Fn fn) : fn_(std::move(fn)) {}
  std::vector<olt::ManipulationRequest<V>> on_batch(const std::vector<olt::QueryRecord<V>>& batch,
                                                    const olt::AdversaryView<V>& view) override {
    return fn_(batch, view);
  }

 private:
  Fn fn_;
};

// Truth table of the parity function over `mask`.
inline olt::BooleanFunctionTable character_table(int n, uint64_t mask) {
  olt::BooleanFunctionTable f(n);
  for (uint64_t x = 0; x < f.size(); ++x) {
    f.set(x, static_cast<uint8_t>(__builtin_popcountll(x & mask) & 1));
  }
  return f;
}

inline olt::BooleanFunctionTable and_table() {  // x1 and x2 on n=2
  olt::BooleanFunctionTable f(2);
  f.set(3, 1);
  return f;
}

}  // namespace olt_test

#endif  // OLT_TESTS_TEST_SUPPORT_HPP_
