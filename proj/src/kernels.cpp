// SPDX-License-Identifier: Apache-2.0
#include "cfsec/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace cfsec::kernels {

#if defined(CFSEC_HAVE_AVX2)
// Defined in kernels_avx2.cpp, which is compiled with -mavx2 -mfma.
void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y);
cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y);
double norm2_avx2(std::size_t n, const cplx* x);
#endif

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
  }
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm2_scalar(std::size_t n, const cplx* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &axpy_scalar, &dotc_scalar, &norm2_scalar};
  return table;
}

const KernelTable* avx2_table() {
#if defined(CFSEC_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{"avx2", &axpy_avx2, &dotc_avx2, &norm2_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("CFSEC_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
      return scalar_table();
    }
    if (const KernelTable* wide = avx2_table()) {
      return *wide;
    }
    return scalar_table();
  }();
  return chosen;
}

}  // namespace cfsec::kernels
