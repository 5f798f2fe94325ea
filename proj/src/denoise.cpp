#include "uqcs/denoise.hpp"

#include <algorithm>
#include <cmath>

#include "uqcs/error.hpp"

namespace uqcs {

namespace {

int resolve_length(std::size_t n, const SSAConfig& cfg) {
  if (n < 8) throw InvalidArgument("ssa: series needs at least 8 points");
  const int len = cfg.embed_length.value_or(static_cast<int>(n / 2));
  if (len < 2 || len > static_cast<int>(n) - 1) throw InvalidArgument("ssa: embed_length must lie in [2, N-1]");
  return len;
}

std::size_t zero_index(const std::vector<double>& t) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (std::abs(t[k]) < std::abs(t[best])) best = k;
  }
  return best;
}

}  // namespace

ComplexMatrix hankel_matrix(const std::vector<Complex>& x, int embed_length) {
  const int n = static_cast<int>(x.size());
  const int k = n - embed_length + 1;
  if (embed_length < 1 || k < 1) throw InvalidArgument("hankel_matrix: embed_length out of range");
  ComplexMatrix h(embed_length, k);
  for (int i = 0; i < embed_length; ++i) {
    for (int j = 0; j < k; ++j) h(i, j) = x[static_cast<std::size_t>(i + j)];
  }
  return h;
}

std::vector<Complex> diagonal_average(const ComplexMatrix& x) {
  const auto n = static_cast<std::size_t>(x.rows() + x.cols() - 1);
  std::vector<Complex> sum(n, Complex(0.0));
  std::vector<int> count(n, 0);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      sum[static_cast<std::size_t>(i + j)] += x(i, j);
      ++count[static_cast<std::size_t>(i + j)];
    }
  }
  for (std::size_t m = 0; m < n; ++m) sum[m] /= static_cast<double>(count[m]);
  return sum;
}

SSAResult ssa_decompose(const AutocorrSeries& series, const SSAConfig& cfg) {
  const int len = resolve_length(series.c.size(), cfg);
  const ComplexMatrix h = hankel_matrix(series.c, len);
  const SvdResult dec = svd(h);
  const int full = static_cast<int>(std::min(h.rows(), h.cols()));

  int r = 0;
  if (cfg.rank) {
    r = *cfg.rank;
    if (r < 1 || r > full) throw InvalidArgument("ssa: rank must lie in [1, min(L, N-L+1)]");
  } else {
    std::vector<double> s(dec.s.data(), dec.s.data() + dec.s.size());
    std::vector<double> sorted = s;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    double median = sorted[sorted.size() / 2];
    if (sorted.size() % 2 == 0) {
      const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2));
      median = 0.5 * (median + lower);
    }
    for (double v : s) r += v >= 3.0 * median ? 1 : 0;
    r = std::max(r, 1);
  }

  SSAResult out;
  out.embed_length = len;
  out.rank = r;
  out.singular_values = dec.s;
  out.basis = dec.u.leftCols(r);
  const ComplexMatrix approx = dec.u.leftCols(r) * dec.s.head(r).cast<Complex>().asDiagonal() * dec.v.leftCols(r).adjoint();
  out.series = series;
  out.series.c = diagonal_average(approx);
  if (cfg.renormalize) {
    const double c0 = std::abs(out.series.c[zero_index(series.t)]);
    if (!(c0 > 0.0)) throw InvalidArgument("ssa: cannot renormalize, C(0) vanished");
    out.scale = 1.0 / c0;
    for (auto& v : out.series.c) v *= out.scale;
  }
  return out;
}

AutocorrSeries ssa_denoise(const AutocorrSeries& series, const SSAConfig& cfg) {
  return ssa_decompose(series, cfg).series;
}

AutocorrSeries ssa_project(const AutocorrSeries& series, const ComplexMatrix& basis) {
  const ComplexMatrix h = hankel_matrix(series.c, static_cast<int>(basis.rows()));
  AutocorrSeries out = series;
  out.c = diagonal_average(basis * (basis.adjoint() * h));
  return out;
}

std::vector<AutocorrSeries> ssa_denoise_family(const std::vector<AutocorrSeries>& series, std::size_t identity_index,
                                               const SSAConfig& cfg) {
  if (identity_index >= series.size()) throw InvalidArgument("ssa: identity series index out of range");
  const SSAResult ref = ssa_decompose(series[identity_index], cfg);
  std::vector<AutocorrSeries> out(series.size());
  SSAConfig fixed = cfg;
  fixed.rank = ref.rank;
  fixed.embed_length = ref.embed_length;
  fixed.renormalize = false;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i == identity_index) {
      out[i] = ref.series;
      continue;
    }
    out[i] = ssa_denoise(series[i], fixed);
    for (auto& v : out[i].c) v *= ref.scale;
  }
  return out;
}

}  // namespace uqcs
