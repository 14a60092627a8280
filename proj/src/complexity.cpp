// SPDX-License-Identifier: Apache-2.0
#include "cfsec/complexity.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace cfsec {

namespace {

double per_iteration_core(double K, double N, double M) {
  return K * K * (N * N * M + N * M * M + N * N * N);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

double flops_proposed(double i_fp, double i_ccp, double i_bs, double K, double N, double M) {
  return i_fp * i_ccp * per_iteration_core(K, N, M) + i_fp * i_ccp * i_bs * K * N * N * N;
}

double flops_sdp(double i_sdp, double K, double N, double M) {
  return i_sdp * std::pow(K, 4.5) * std::pow(N, 7.0) * M * M;
}

double flops_srm(double i_fp, double i_bs, double K, double N, double M) {
  return i_fp * i_bs * per_iteration_core(K, N, M);
}

std::vector<ComplexityRow> complexity_table(const std::vector<double>& antenna_counts, double K,
                                            double M, const ComplexityDefaults& it) {
  std::vector<ComplexityRow> rows;
  rows.reserve(antenna_counts.size());
  for (double n : antenna_counts) {
    rows.push_back({n, flops_proposed(it.i_fp, it.i_ccp, it.i_bs, K, n, M),
                    flops_srm(it.i_fp, it.i_bs, K, n, M), flops_sdp(it.i_sdp, K, n, M)});
  }
  return rows;
}

void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows, double K,
                          double M, const ComplexityDefaults& it) {
  out << "# K=" << fmt(K) << " M=" << fmt(M) << " i_fp=" << fmt(it.i_fp)
      << " i_ccp=" << fmt(it.i_ccp) << " i_bs=" << fmt(it.i_bs) << " i_sdp=" << fmt(it.i_sdp)
      << "\n";
  out << "N,flops_proposed,flops_srm,flops_sdp\n";
  for (const auto& r : rows) {
    out << fmt(r.n) << ',' << fmt(r.proposed) << ',' << fmt(r.srm) << ',' << fmt(r.sdp) << '\n';
  }
}

}  // namespace cfsec
