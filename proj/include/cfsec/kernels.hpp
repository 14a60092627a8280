// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace cfsec::kernels {

using cplx = std::complex<double>;

/// Vector primitives over contiguous interleaved complex<double> storage.
/// Every entry has a scalar reference and, where the CPU allows, a wide
/// variant; `active()` is resolved once per process.
struct KernelTable {
  std::string_view name;
  /// y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// sum_i conj(x[i]) * y[i]
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  /// sum_i |x[i]|^2
  double (*norm2)(std::size_t n, const cplx* x);
};

const KernelTable& scalar_table();

/// Null when the binary was built without AVX2 support or the CPU lacks
/// AVX2+FMA.
const KernelTable* avx2_table();

/// Dispatch target. Honors CFSEC_SIMD=scalar in the environment.
const KernelTable& active();

// Scalar reference kernels, exposed for equivalence tests.
void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y);
cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y);
double norm2_scalar(std::size_t n, const cplx* x);

inline void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  active().axpy(n, alpha, x, y);
}
inline cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return active().dotc(n, x, y);
}
inline double norm2(std::size_t n, const cplx* x) { return active().norm2(n, x); }

}  // namespace cfsec::kernels
