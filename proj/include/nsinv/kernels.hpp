// SPDX-License-Identifier: Apache-2.0
#pragma once

// Inner-loop kernels with a scalar reference and SIMD variants chosen at
// runtime. Every variant accumulates each output element in the same order
// with separate multiply and add, so gemm/gemm_tn/scale/max_abs results are
// bit-identical across ISAs. sum_sq_diff reassociates and only agrees to
// rounding.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace nsinv::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view token) noexcept;

struct KernelTable {
  Isa isa;

  /// c[m x n] = a[m x k] * b[k x n], all row-major and non-aliasing.
  void (*gemm)(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n);

  /// c[m x n] = a' * b with a[r x m], b[r x n].
  void (*gemm_tn)(const double* a, const double* b, double* c, std::size_t r,
                  std::size_t m, std::size_t n);

  /// y = alpha * x. y may alias x.
  void (*scale)(const double* x, double alpha, double* y, std::size_t len);

  /// max |x_i|, 0 for len == 0. NaN inputs give an unspecified result.
  double (*max_abs)(const double* x, std::size_t len);

  /// sum (x_i - y_i)^2
  double (*sum_sq_diff)(const double* x, const double* y, std::size_t len);
};

/// The table in use. Chosen on first call: the NSINV_ISA environment variable
/// if it names a supported ISA, otherwise the best one the CPU supports.
const KernelTable& active();

/// Table for `isa`, or nullptr if it was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

std::vector<Isa> available_isas();

/// Overrides the active table. Throws InvalidArgument when unavailable.
/// Not thread-safe with respect to concurrent kernel calls.
void set_active(Isa isa);

}  // namespace nsinv::kernels
