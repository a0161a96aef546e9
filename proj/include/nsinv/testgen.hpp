// SPDX-License-Identifier: Apache-2.0
#pragma once

// Seeded generators for the two experimental matrix families: conditioned
// SPD matrices with a prescribed geometric spectrum, and uniform random
// patterns.

#include <cstdint>
#include <utility>
#include <vector>

#include "nsinv/matrix.hpp"

namespace nsinv {

/// splitmix64. Identical seeds give identical streams on every platform.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (-1, 1), from the top 53 bits.
  double next_open_unit() noexcept;

 private:
  std::uint64_t state_;
};

/// Seed for sub-stream `index` of `base`, decorrelated through the splitmix
/// finalizer.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// `count` draws from (-1, 1). Throws InvalidArgument for count < 1.
std::vector<double> uniform_open(SeedStream& stream, int count);

/// I - 2 h h' / h'h. Throws InvalidArgument for a zero vector.
Matrix householder(const std::vector<double>& h);

struct MoreToraldoSpec {
  int n;
  double kappa;

  /// Throws InvalidArgument unless n >= 2 and kappa >= 1.
  void validate() const;
};

/// lambda_i = kappa^((i-1)/(n-1)), i = 1..n.
std::vector<double> more_toraldo_spectrum(const MoreToraldoSpec& spec);

struct MoreToraldoMatrix {
  Matrix x;
  SpdMatrix z;
};

/// X = D^{1/2} H for a random Householder H, Z = X'X = H D H.
MoreToraldoMatrix more_toraldo(const MoreToraldoSpec& spec, std::uint64_t seed);

/// m x n matrix of independent uniform(-1, 1) entries. Throws InvalidArgument
/// unless m >= n >= 1.
Matrix uniform_pattern(int m, int n, std::uint64_t seed);

}  // namespace nsinv
