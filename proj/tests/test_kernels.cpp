// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "cfsec/kernels.hpp"
#include "cfsec/linalg.hpp"
#include "support.hpp"

using namespace cfsec;
namespace kn = cfsec::kernels;

namespace {

std::vector<kn::cplx> random_vec(Rng& rng, std::size_t n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<kn::cplx> v(n);
  for (auto& x : v) x = {nd(rng), nd(rng)};
  return v;
}

double rel(kn::cplx a, kn::cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Kernels, ScalarAxpyMatchesStdComplex) {
  Rng rng = make_stream(1, {});
  auto x = random_vec(rng, 13);
  auto y = random_vec(rng, 13);
  auto expect = y;
  const kn::cplx a(0.3, -1.7);
  for (std::size_t i = 0; i < x.size(); ++i) expect[i] += a * x[i];
  kn::axpy_scalar(x.size(), a, x.data(), y.data());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_LT(std::abs(y[i] - expect[i]), 1e-14);
}

TEST(Kernels, ScalarDotcConjugatesFirstArgument) {
  const std::vector<kn::cplx> x{{0, 1}};
  const std::vector<kn::cplx> y{{0, 1}};
  EXPECT_EQ(kn::dotc_scalar(1, x.data(), y.data()), kn::cplx(1, 0));
  EXPECT_EQ(kn::norm2_scalar(1, x.data()), 1.0);
  EXPECT_EQ(kn::dotc_scalar(0, x.data(), y.data()), kn::cplx(0, 0));
}

// Every length 0..67 covers the two-wide body and the odd tail.
TEST(Kernels, Avx2MatchesScalarOnAllLengths) {
  const kn::KernelTable* wide = kn::avx2_table();
  if (wide == nullptr) GTEST_SKIP() << "no AVX2 on this CPU";
  Rng rng = make_stream(2, {});
  for (std::size_t n = 0; n < 68; ++n) {
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    const kn::cplx a(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
    auto ys = y;
    auto yw = y;
    kn::axpy_scalar(n, a, x.data(), ys.data());
    wide->axpy(n, a, x.data(), yw.data());
    for (std::size_t i = 0; i < n; ++i) ASSERT_LT(rel(yw[i], ys[i]), 1e-14) << n;
    ASSERT_LT(rel(wide->dotc(n, x.data(), y.data()), kn::dotc_scalar(n, x.data(), y.data())),
              1e-13)
        << n;
    const double ns = kn::norm2_scalar(n, x.data());
    ASSERT_NEAR(wide->norm2(n, x.data()), ns, 1e-13 * std::max(1.0, ns)) << n;
  }
}

TEST(Kernels, ActiveTableIsOneOfTheKnownOnes) {
  const auto name = kn::active().name;
  EXPECT_TRUE(name == "scalar" || name == "avx2");
}

TEST(Linalg, ProductsMatchEigen) {
  Rng rng = make_stream(3, {});
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = static_cast<Eigen::Index>(fx::uniform_index(rng, 1, 9));
    const auto c = static_cast<Eigen::Index>(fx::uniform_index(rng, 1, 9));
    const auto p = static_cast<Eigen::Index>(fx::uniform_index(rng, 1, 9));
    const CMatrix a = fx::random_cmatrix(rng, r, p);
    const CMatrix b = fx::random_cmatrix(rng, p, c);
    const CMatrix at = fx::random_cmatrix(rng, p, r);
    const CMatrix bt = fx::random_cmatrix(rng, c, p);
    EXPECT_LT((linalg::mul(a, b) - a * b).norm(), 1e-12);
    EXPECT_LT((linalg::mul_ah(at, b) - at.adjoint() * b).norm(), 1e-12);
    EXPECT_LT((linalg::mul_bh(a, bt) - a * bt.adjoint()).norm(), 1e-12);
    EXPECT_NEAR(linalg::frob2(a), a.squaredNorm(), 1e-12);
  }
}

TEST(Linalg, LogdetAndSolve) {
  Rng rng = make_stream(4, {});
  const CMatrix a = fx::random_pd(rng, 5);
  const CMatrix b = fx::random_cmatrix(rng, 5, 2);
  EXPECT_NEAR(linalg::logdet_pd(a), std::log(a.determinant().real()), 1e-10);
  EXPECT_LT((a * linalg::solve_pd(a, b) - b).norm(), 1e-10);
}

TEST(Linalg, LogdetRejectsIndefinite) {
  CMatrix a = CMatrix::Identity(2, 2);
  a(1, 1) = -1.0;
  EXPECT_THROW(linalg::logdet_pd(a), std::runtime_error);
}

TEST(Linalg, SqrtmSquaresBack) {
  Rng rng = make_stream(5, {});
  const CMatrix g = fx::random_cmatrix(rng, 4, 2);
  const CMatrix a = g * g.adjoint();  // rank 2, PSD
  const CMatrix s = linalg::sqrtm_psd(a);
  EXPECT_LT((s * s - a).norm(), 1e-10);
  EXPECT_LT(linalg::hermitian_defect(s), 1e-12);
  EXPECT_THROW(linalg::sqrtm_psd(-a - CMatrix::Identity(4, 4)), std::runtime_error);
}
