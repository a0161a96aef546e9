// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsinv/kernels.hpp"

namespace nsinv::kernels::detail {

const KernelTable& scalar_table() noexcept;
#if defined(NSINV_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(NSINV_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace nsinv::kernels::detail
