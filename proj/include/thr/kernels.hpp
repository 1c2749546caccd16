#pragma once

// Data-parallel inner loops of the exact linear-algebra core.
//
// Each kernel has an OpenMP implementation in thr::kernels and a plain serial
// implementation in thr::kernels::reference. The reference versions are the
// ground truth for tests and the baseline for bench/.

#include <cstddef>
#include <span>

#include <gmpxx.h>

namespace thr {

using Integer = mpz_class;

namespace kernels {

/// Below this many scalar updates the parallel kernels run serially.
inline constexpr std::size_t kParallelGrain = 4096;

/// y += a * x
void axpy(std::span<Integer> y, const Integer& a, std::span<const Integer> x);

/// c = a * b for row-major a (m x k) and b (k x n); c must hold m * n entries.
void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const Integer> a,
          std::span<const Integer> b, std::span<Integer> c);

namespace reference {

void axpy(std::span<Integer> y, const Integer& a, std::span<const Integer> x);

void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const Integer> a,
          std::span<const Integer> b, std::span<Integer> c);

}  // namespace reference
}  // namespace kernels
}  // namespace thr
