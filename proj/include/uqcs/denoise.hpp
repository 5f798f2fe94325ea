#pragma once

#include <optional>
#include <vector>

#include "uqcs/linalg.hpp"
#include "uqcs/spectroscopy.hpp"

namespace uqcs {

struct SSAConfig {
  std::optional<int> embed_length;  // L; default floor(N/2)
  std::optional<int> rank;          // r; default auto (singular values >= 3x median)
  bool renormalize = false;
};

struct SSAResult {
  AutocorrSeries series;
  int embed_length = 0;
  int rank = 0;
  Eigen::VectorXd singular_values;
  ComplexMatrix basis;  // left singular vectors kept (L x r)
  double scale = 1.0;   // renormalization factor applied
};

// L x (N-L+1) trajectory matrix, X(i, j) = x[i + j].
ComplexMatrix hankel_matrix(const std::vector<Complex>& x, int embed_length);
// Mean over each anti-diagonal; inverse of hankel_matrix on Hankel input.
std::vector<Complex> diagonal_average(const ComplexMatrix& x);

// Hankel embedding, rank-r truncation and diagonal averaging. With
// renormalize set, the output is scaled so |C(0)| = 1.
SSAResult ssa_decompose(const AutocorrSeries& series, const SSAConfig& cfg);
AutocorrSeries ssa_denoise(const AutocorrSeries& series, const SSAConfig& cfg);

// Projects the trajectory matrix onto a fixed left basis (L x r), then
// diagonal-averages.
AutocorrSeries ssa_project(const AutocorrSeries& series, const ComplexMatrix& basis);

// Denoises the identity series with cfg, then every other series with the
// same rank (and, when renormalizing, the identity series' scale factor).
std::vector<AutocorrSeries> ssa_denoise_family(const std::vector<AutocorrSeries>& series, std::size_t identity_index,
                                               const SSAConfig& cfg);

}  // namespace uqcs
