// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "nsinv/error.hpp"

namespace nsinv::kernels {
namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(NSINV_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(NSINV_HAVE_NEON)
      return true;  // baseline on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* compiled_table(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return &detail::scalar_table();
    case Isa::Avx2:
#if defined(NSINV_HAVE_AVX2)
      return &detail::avx2_table();
#else
      return nullptr;
#endif
    case Isa::Neon:
#if defined(NSINV_HAVE_NEON)
      return &detail::neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* select_initial() noexcept {
  if (const char* env = std::getenv("NSINV_ISA")) {
    if (auto isa = parse_isa(env))
      if (const KernelTable* t = table_for(*isa)) return t;
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (const KernelTable* t = table_for(isa)) return t;
  return &detail::scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{select_initial()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view token) noexcept {
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (token == to_string(isa)) return isa;
  return std::nullopt;
}

const KernelTable* table_for(Isa isa) noexcept {
  const KernelTable* t = compiled_table(isa);
  return (t && cpu_supports(isa)) ? t : nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (table_for(isa)) out.push_back(isa);
  return out;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void set_active(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (!t)
    throw InvalidArgument("kernel ISA '" + std::string(to_string(isa)) +
                          "' is not available on this machine");
  current().store(t, std::memory_order_release);
}

}  // namespace nsinv::kernels
