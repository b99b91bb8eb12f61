// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "covsel/types.hpp"

namespace covsel {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seeded random stream. Independent streams are derived from a master seed
/// and a key path, so a trial's draws never depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  static Rng stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }

  /// Circular complex normal with unit variance (each part has variance 1/2).
  cplx complex_normal();

  CMatrix complex_normal(Index rows, Index cols);
  RMatrix real_normal(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace covsel
