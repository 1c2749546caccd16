#include "thr/kernels.hpp"

#include <cassert>

namespace thr::kernels {

namespace reference {

void axpy(std::span<Integer> y, const Integer& a, std::span<const Integer> x) {
  assert(y.size() == x.size());
  if (a == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] != 0) y[i] += a * x[i];
  }
}

void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const Integer> a,
          std::span<const Integer> b, std::span<Integer> c) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = 0;
    for (std::size_t l = 0; l < k; ++l) {
      const Integer& ail = a[i * k + l];
      if (ail == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[l * n + j] != 0) c[i * n + j] += ail * b[l * n + j];
      }
    }
  }
}

}  // namespace reference

void axpy(std::span<Integer> y, const Integer& a, std::span<const Integer> x) {
  assert(y.size() == x.size());
  if (a == 0) return;
  const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static) if (y.size() >= kParallelGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (x[i] != 0) y[i] += a * x[i];
  }
}

void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const Integer> a,
          std::span<const Integer> b, std::span<Integer> c) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  const auto rows = static_cast<std::ptrdiff_t>(m);
  // Rows of c are independent; each thread owns whole rows.
#pragma omp parallel for schedule(dynamic) if (m * k * n >= kParallelGrain)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    Integer* ci = c.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] = 0;
    for (std::size_t l = 0; l < k; ++l) {
      const Integer& ail = a[i * k + l];
      if (ail == 0) continue;
      const Integer* bl = b.data() + l * n;
      for (std::size_t j = 0; j < n; ++j) {
        if (bl[j] != 0) ci[j] += ail * bl[j];
      }
    }
  }
}

}  // namespace thr::kernels
