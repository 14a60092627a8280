// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace cfsec {

/// i_fp i_ccp K^2 (N^2 M + N M^2 + N^3) + i_fp i_ccp i_bs K N^3
double flops_proposed(double i_fp, double i_ccp, double i_bs, double K, double N, double M);

/// i_sdp K^4.5 N^7 M^2
double flops_sdp(double i_sdp, double K, double N, double M);

/// i_fp i_bs K^2 (N^2 M + N M^2 + N^3)
double flops_srm(double i_fp, double i_bs, double K, double N, double M);

struct ComplexityDefaults {
  double i_fp = 10;
  double i_ccp = 10;
  double i_bs = 30;
  double i_sdp = 20;
};

struct ComplexityRow {
  double n = 0;
  double proposed = 0;
  double srm = 0;
  double sdp = 0;
};

std::vector<ComplexityRow> complexity_table(const std::vector<double>& antenna_counts, double K,
                                            double M, const ComplexityDefaults& it = {});

/// Leading `#` metadata line with the iteration counts, then
/// `N,flops_proposed,flops_srm,flops_sdp`.
void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows, double K,
                          double M, const ComplexityDefaults& it = {});

}  // namespace cfsec
