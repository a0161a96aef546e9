// SPDX-License-Identifier: Apache-2.0
#include "nsinv/testgen.hpp"

#include <cmath>
#include <string>

#include "nsinv/error.hpp"
#include "nsinv/linalg.hpp"

namespace nsinv {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SeedStream::next_u64() noexcept {
  state_ += kGolden;
  return mix(state_);
}

double SeedStream::next_open_unit() noexcept {
  constexpr double kUlp = 0x1.0p-53;
  for (;;) {
    // u in [0, 1) on the 2^-53 grid; 2u - 1 in [-1, 1 - 2^-52].
    const double u = static_cast<double>(next_u64() >> 11) * kUlp;
    const double v = 2.0 * u - 1.0;
    if (v > -1.0) return v;
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix(base + kGolden * (index + 1));
}

std::vector<double> uniform_open(SeedStream& stream, int count) {
  if (count < 1) throw InvalidArgument("uniform_open: count must be at least 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& v : out) v = stream.next_open_unit();
  return out;
}

Matrix householder(const std::vector<double>& h) {
  if (h.empty()) throw InvalidArgument("householder: empty vector");
  double hh = 0.0;
  for (double v : h) hh += v * v;
  if (!(hh > 0.0)) throw InvalidArgument("householder: zero vector");
  const std::size_t n = h.size();
  Matrix out = Matrix::identity(n);
  const double f = 2.0 / hh;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) -= f * h[i] * h[j];
  return out;
}

void MoreToraldoSpec::validate() const {
  if (n < 2) throw InvalidArgument("more_toraldo: n must be at least 2");
  if (!(kappa >= 1.0) || !std::isfinite(kappa))
    throw InvalidArgument("more_toraldo: kappa must be a finite value >= 1");
}

std::vector<double> more_toraldo_spectrum(const MoreToraldoSpec& spec) {
  spec.validate();
  std::vector<double> lambda(static_cast<std::size_t>(spec.n));
  const double denom = static_cast<double>(spec.n - 1);
  for (int i = 0; i < spec.n; ++i)
    lambda[static_cast<std::size_t>(i)] = std::pow(spec.kappa, static_cast<double>(i) / denom);
  return lambda;
}

MoreToraldoMatrix more_toraldo(const MoreToraldoSpec& spec, std::uint64_t seed) {
  const auto lambda = more_toraldo_spectrum(spec);
  SeedStream stream(seed);
  std::vector<double> h;
  double hh = 0.0;
  do {
    h = uniform_open(stream, spec.n);
    hh = 0.0;
    for (double v : h) hh += v * v;
  } while (!(hh > 0.0));

  Matrix x = householder(h);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double s = std::sqrt(lambda[i]);
    for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) *= s;
  }
  SpdMatrix z = gram(x);
  return {std::move(x), std::move(z)};
}

Matrix uniform_pattern(int m, int n, std::uint64_t seed) {
  if (n < 1 || m < n)
    throw InvalidArgument("uniform_pattern: need m >= n >= 1, got m=" + std::to_string(m) +
                          " n=" + std::to_string(n));
  SeedStream stream(seed);
  std::vector<double> entries(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (double& v : entries) v = stream.next_open_unit();
  return Matrix(static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(entries));
}

}  // namespace nsinv
