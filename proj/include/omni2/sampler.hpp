#pragma once

#include "omni2/matrix.hpp"

#include <cstdint>
#include <random>

namespace omni2 {

/// Deterministic source of small rational test data.  Entries are p/q with
/// p ∈ [-4, 4], q ∈ {1, 2, 3}: large enough to break sign errors, small
/// enough to keep exact arithmetic cheap.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Rat rat() {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    return Rat(num(rng_), den(rng_));
  }

  /// Nonzero with probability ~1/2; keeps sampled structures sparse.
  Rat sparse_rat() {
    std::uniform_int_distribution<int> coin(0, 1);
    return coin(rng_) ? rat() : Rat(0);
  }

  RatVec vec(std::size_t n) {
    RatVec v(n);
    for (auto& x : v) x = rat();
    return v;
  }

  RatMatrix matrix(std::size_t rows, std::size_t cols) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = sparse_rat();
    return m;
  }

  std::size_t index(std::size_t n) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    return d(rng_);
  }

private:
  std::mt19937_64 rng_;
};

} // namespace omni2
