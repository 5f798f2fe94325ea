#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_util.hpp"
#include "uqcs/denoise.hpp"
#include "uqcs/error.hpp"
#include "uqcs/rng.hpp"

using namespace uqcs;

namespace {

struct Line {
  double weight;
  double energy;
};

AutocorrSeries exp_sum(const WindowParams& w, const std::vector<Line>& lines, const std::string& label = "I") {
  AutocorrSeries s;
  s.t = w.t_grid;
  s.label = label;
  for (double t : w.t_grid) {
    Complex c = 0.0;
    for (const Line& l : lines) c += l.weight * std::exp(Complex(0.0, -l.energy * t));
    s.c.push_back(c);
  }
  return s;
}

AutocorrSeries add_noise(AutocorrSeries s, double sigma, std::uint64_t seed) {
  Rng rng = make_stream(seed, {99});
  for (auto& c : s.c) c += complex_normal(rng, sigma * sigma);
  return s;
}

double rms_diff(const AutocorrSeries& a, const AutocorrSeries& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) acc += std::norm(a.c[i] - b.c[i]);
  return std::sqrt(acc / static_cast<double>(a.c.size()));
}

double max_diff(const AutocorrSeries& a, const AutocorrSeries& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

// Weights |<n|psi>|^2 and energies of the two-site chain for psi = |01>.
std::vector<Line> chain_lines() {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(build_spin_chain(test::fig3_chain()));
  const StateVector psi = test::basis_state(4, 1);
  std::vector<Line> out;
  for (int n = 0; n < 4; ++n) out.push_back({std::norm(es.eigenvectors().col(n).dot(psi)), es.eigenvalues()[n]});
  return out;
}

WindowParams chain_window() {
  WindowParams w = make_window(6.0, 120);
  set_omega_grid(w, -6.0, 6.0, 0.05 / 6.0);
  return w;
}

}  // namespace

TEST(Hankel, RoundTrip) {
  std::vector<Complex> x;
  for (int i = 0; i < 17; ++i) x.emplace_back(i, -0.5 * i);
  for (int len : {2, 5, 9, 16}) {
    const ComplexMatrix h = hankel_matrix(x, len);
    EXPECT_EQ(h.rows(), len);
    EXPECT_EQ(h.cols(), 18 - len);
    EXPECT_EQ(h(1, 1), x[2]);
    EXPECT_EQ(h(len - 1, 17 - len), x[16]);
    const auto back = diagonal_average(h);
    ASSERT_EQ(back.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(back[i], x[i]);
  }
}

TEST(Ssa, FullRankReturnsInput) {
  const WindowParams w = make_window(3.0, 40);
  const AutocorrSeries s = add_noise(exp_sum(w, {{1.0, 0.7}}), 0.3, 1);
  for (int len : {2, 13, 20, 39}) {
    SSAConfig cfg;
    cfg.embed_length = len;
    cfg.rank = std::min(len, 41 - len);
    EXPECT_LT(max_diff(ssa_denoise(s, cfg), s), 1e-12) << "L = " << len;
  }
}

TEST(Ssa, TwoExponentialRecovery) {
  const WindowParams w = make_window(6.0, 120);
  const AutocorrSeries s = exp_sum(w, {{0.3, -1.1}, {0.7, 2.3}});
  SSAConfig cfg;
  cfg.rank = 2;
  EXPECT_LE(max_diff(ssa_denoise(s, cfg), s), 1e-10);
}

TEST(Ssa, RankEqualsLineCount) {
  const WindowParams w = make_window(6.0, 120);
  const AutocorrSeries s = exp_sum(w, chain_lines());
  for (int len : {5, 30, 60, 100, 115}) {
    SSAConfig cfg;
    cfg.embed_length = len;
    cfg.rank = 4;
    EXPECT_LE(max_diff(ssa_denoise(s, cfg), s), 1e-8) << "L = " << len;
  }
}

TEST(Ssa, NoiseReduction) {
  // Rank-r truncation keeps about r (1/L + 1/K) of white noise power, so a
  // 3x RMS reduction at r = 4 needs N of roughly 150 or more.
  const WindowParams w = make_window(6.0, 200);
  const AutocorrSeries clean = exp_sum(w, chain_lines());
  SSAConfig cfg;
  cfg.rank = 4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const AutocorrSeries noisy = add_noise(clean, 0.05, seed);
    const double before = rms_diff(noisy, clean);
    const double after = rms_diff(ssa_denoise(noisy, cfg), clean);
    EXPECT_GE(before / after, 3.0) << "seed " << seed;
  }
}

TEST(Ssa, ProjectionLinear) {
  const WindowParams w = make_window(6.0, 120);
  SSAConfig cfg;
  cfg.rank = 3;
  const ComplexMatrix basis = ssa_decompose(add_noise(exp_sum(w, chain_lines()), 0.05, 3), cfg).basis;
  const AutocorrSeries x = add_noise(exp_sum(w, {{0.2, 1.0}}), 0.1, 4);
  const AutocorrSeries y = add_noise(exp_sum(w, {{0.5, -2.0}}), 0.1, 5);
  const Complex a(0.3, -1.2);
  const Complex b(-0.7, 0.4);
  AutocorrSeries mix = x;
  for (std::size_t i = 0; i < mix.c.size(); ++i) mix.c[i] = a * x.c[i] + b * y.c[i];
  const AutocorrSeries px = ssa_project(x, basis);
  const AutocorrSeries py = ssa_project(y, basis);
  AutocorrSeries expected = px;
  for (std::size_t i = 0; i < expected.c.size(); ++i) expected.c[i] = a * px.c[i] + b * py.c[i];
  EXPECT_LT(max_diff(ssa_project(mix, basis), expected), 1e-12);
}

TEST(Ssa, ProjectionIdempotent) {
  const WindowParams w = make_window(6.0, 120);
  SSAConfig cfg;
  cfg.rank = 2;
  const AutocorrSeries clean = exp_sum(w, {{0.3, -1.1}, {0.7, 2.3}});
  const SSAResult dec = ssa_decompose(add_noise(clean, 0.05, 8), cfg);
  // Truncation of the trajectory matrix.
  const ComplexMatrix p = dec.basis * dec.basis.adjoint();
  EXPECT_LT(max_abs(p * p - p), 1e-12);
  const ComplexMatrix h = hankel_matrix(clean.c, dec.embed_length);
  EXPECT_LT(max_abs(p * (p * h) - p * h), 1e-12);
  // On series inside the signal model the series-level map is idempotent too.
  const ComplexMatrix exact = ssa_decompose(clean, cfg).basis;
  const AutocorrSeries once = ssa_project(clean, exact);
  EXPECT_LT(max_diff(ssa_project(once, exact), once), 1e-12);
  EXPECT_LT(max_diff(once, clean), 1e-10);
}

TEST(Ssa, DenoisedPeaksStayWithinUncertainty) {
  const WindowParams w = chain_window();
  const AutocorrSeries clean = exp_sum(w, chain_lines());
  SSAConfig cfg;
  cfg.rank = 4;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AutocorrSeries noisy = add_noise(clean, 0.02, seed);
    const auto before = find_peaks(windowed_fourier(noisy, w), kDefaultPeakThreshold, w.tau);
    const auto after = find_peaks(windowed_fourier(ssa_denoise(noisy, cfg), w), kDefaultPeakThreshold, w.tau);
    ASSERT_EQ(before.size(), 4u) << "seed " << seed;
    ASSERT_EQ(after.size(), 4u) << "seed " << seed;
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_LE(std::abs(after[i].center - before[i].center), before[i].uncertainty)
          << "seed " << seed << " line " << i;
    }
  }
}

TEST(Ssa, AutoRank) {
  const WindowParams w = make_window(6.0, 120);
  const AutocorrSeries clean = exp_sum(w, {{0.5, -3.0}, {0.3, 0.4}, {0.2, 2.9}});
  const SSAResult dec = ssa_decompose(add_noise(clean, 0.01, 2), SSAConfig{});
  EXPECT_EQ(dec.rank, 3);
  EXPECT_EQ(dec.embed_length, 60);
  EXPECT_EQ(dec.singular_values.size(), 60);
  EXPECT_EQ(dec.basis.cols(), 3);
}

TEST(Ssa, Renormalize) {
  const WindowParams w = make_window(6.0, 120);
  AutocorrSeries s = exp_sum(w, chain_lines());
  for (auto& c : s.c) c *= 0.8;
  SSAConfig cfg;
  cfg.rank = 4;
  cfg.renormalize = true;
  const SSAResult dec = ssa_decompose(s, cfg);
  EXPECT_NEAR(dec.scale, 1.25, 1e-9);
  EXPECT_NEAR(std::abs(dec.series.c[static_cast<std::size_t>(w.origin())]), 1.0, 1e-12);
}

TEST(Ssa, FamilySharesRankAndScale) {
  const WindowParams w = make_window(6.0, 120);
  const auto lines = chain_lines();
  AutocorrSeries id = add_noise(exp_sum(w, lines), 0.02, 11);
  std::vector<Line> z_lines = lines;
  for (auto& l : z_lines) l.weight *= l.energy > 0 ? 0.5 : -0.5;
  AutocorrSeries z = add_noise(exp_sum(w, z_lines, "ZI"), 0.02, 12);
  for (auto& c : id.c) c *= 0.9;
  SSAConfig cfg;
  cfg.renormalize = true;
  const auto out = ssa_denoise_family({z, id}, 1, cfg);
  const SSAResult ref = ssa_decompose(id, cfg);
  SSAConfig fixed;
  fixed.rank = ref.rank;
  AutocorrSeries expected = ssa_denoise(z, fixed);
  for (auto& c : expected.c) c *= ref.scale;
  EXPECT_LT(max_diff(out[0], expected), 1e-12);
  EXPECT_LT(max_diff(out[1], ref.series), 1e-12);
  EXPECT_EQ(out[0].label, "ZI");
  EXPECT_THROW(ssa_denoise_family({z, id}, 2, cfg), InvalidArgument);
}

TEST(Ssa, Validation) {
  const WindowParams w = make_window(3.0, 40);
  const AutocorrSeries s = exp_sum(w, {{1.0, 0.7}});
  SSAConfig cfg;
  cfg.embed_length = 1;
  EXPECT_THROW(ssa_denoise(s, cfg), InvalidArgument);
  cfg.embed_length = 40;
  EXPECT_THROW(ssa_denoise(s, cfg), InvalidArgument);
  cfg.embed_length = 10;
  cfg.rank = 11;
  EXPECT_THROW(ssa_denoise(s, cfg), InvalidArgument);
  cfg.rank = 0;
  EXPECT_THROW(ssa_denoise(s, cfg), InvalidArgument);
  AutocorrSeries tiny;
  tiny.t = {0, 1, 2, 3, 4, 5, 6};
  tiny.c.assign(7, Complex(1.0));
  EXPECT_THROW(ssa_denoise(tiny, SSAConfig{}), InvalidArgument);
}
