#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "uqcs/baselines.hpp"
#include "uqcs/error.hpp"

using namespace uqcs;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Ground {
  double energy;
  StateVector state;
  StateVector excited;
};

Ground ground_of(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  return {es.eigenvalues()[0], es.eigenvectors().col(0), es.eigenvectors().col(1)};
}

}  // namespace

TEST(Iqpe, DyadicPhaseBits) {
  const double phase = kTwoPi * 0.625;  // 0.101 in binary
  Eigen::VectorXcd d(3);
  d << std::exp(Complex(0.0, phase)), std::exp(Complex(0.0, 1.0)), std::exp(Complex(0.0, 2.0));
  const ComplexMatrix v = d.asDiagonal();
  IQPEConfig cfg;
  cfg.n_bits = 3;
  cfg.shots_per_round = 0;
  cfg.delta_t = 1.0;
  cfg.spectrum_shift = 0.0;
  const IQPEResult r = iqpe_estimate_unitary(v, test::basis_state(3, 0), cfg);
  EXPECT_EQ(r.bits, (std::vector<int>{1, 0, 1}));
  EXPECT_NEAR(r.phase, phase, 1e-12);
  EXPECT_NEAR(r.energy, phase, 1e-12);
  EXPECT_TRUE(r.reliable);
  for (double p : r.p0) EXPECT_TRUE(p < 1e-12 || p > 1.0 - 1e-12);
}

TEST(Iqpe, EightSiteChainGroundEnergy) {
  const ComplexMatrix h = build_spin_chain(test::fig3f_chain());
  const Ground g = ground_of(h);
  std::mt19937_64 gen(8);
  const StateVector psi = trial_state(g.state, test::random_state(256, gen), 0.9);
  IQPEConfig cfg;  // 11 bits, dt = 0.4, shift = 11, 1000 shots per round
  const double lsb = kTwoPi / std::ldexp(1.0, cfg.n_bits) / cfg.delta_t;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    cfg.seed = seed;
    const IQPEResult r = iqpe_estimate(h, psi, cfg);
    EXPECT_LE(std::abs(r.energy - g.energy), lsb) << "seed " << seed;
    EXPECT_EQ(r.query_depth, 2047);
  }
}

TEST(Iqpe, BrokenPtPhaseIsUnreliable) {
  const ComplexMatrix h = build_two_mode_nh(test::nh_spec(0.6));
  IQPEConfig cfg;
  cfg.n_bits = 8;
  const IQPEResult r = iqpe_estimate(h, test::basis_state(2, 0), cfg);
  EXPECT_FALSE(r.reliable);
  // The high powers are damped towards an uninformative ancilla.
  EXPECT_NEAR(r.p0.front(), 0.5, 0.05);
  cfg.shots_per_round = 0;
  EXPECT_FALSE(iqpe_estimate(h, test::basis_state(2, 0), cfg).reliable);
}

TEST(Iqpe, ExactEigenstateWithinOneStep) {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix h = test::random_hermitian(4, gen, 0.5);
    const Ground g = ground_of(h);
    IQPEConfig cfg;
    cfg.n_bits = 9;
    cfg.delta_t = 0.3;
    cfg.spectrum_shift = 3.0;
    cfg.shots_per_round = rep % 2 == 0 ? 0 : 1000;
    cfg.seed = static_cast<std::uint64_t>(rep);
    const IQPEResult r = iqpe_estimate(h, g.state, cfg);
    const double lsb = kTwoPi / std::ldexp(1.0, cfg.n_bits) / cfg.delta_t;
    EXPECT_LE(std::abs(r.energy - g.energy), lsb) << "rep " << rep;
  }
}

TEST(Iqpe, RoundSuccessAtLeastOverlapSquared) {
  const ComplexMatrix h = build_spin_chain(test::fig3_chain());
  const Ground g = ground_of(h);
  const double zeta = 0.8;
  const StateVector psi = trial_state(g.state, g.excited, zeta);
  IQPEConfig cfg;
  cfg.n_bits = 4;
  cfg.delta_t = 0.4;
  cfg.spectrum_shift = kTwoPi * 5.0 / 16.0 - g.energy * cfg.delta_t;  // ground phase 0.0101 exactly
  cfg.shots_per_round = 1;
  const std::vector<int> expected{0, 1, 0, 1};

  const int runs = 1000;
  std::vector<int> reached(4, 0);
  std::vector<int> correct(4, 0);
  for (int seed = 0; seed < runs; ++seed) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    const IQPEResult r = iqpe_estimate(h, psi, cfg);
    // Rounds run least significant first; a round counts while all earlier ones were right.
    for (int k = 3; k >= 0; --k) {
      ++reached[k];
      if (r.bits[k] != expected[k]) break;
      ++correct[k];
    }
  }
  for (int k = 0; k < 4; ++k) {
    ASSERT_GT(reached[k], 100);
    const double p = static_cast<double>(correct[k]) / reached[k];
    const double sigma = std::sqrt(zeta * zeta * (1.0 - zeta * zeta) / reached[k]);
    EXPECT_GE(p, zeta * zeta - 3.0 * sigma) << "bit " << k;
  }
}

TEST(Iqpe, QueryDepth) {
  const ComplexMatrix h = build_spin_chain(test::fig3_chain());
  for (int n : {1, 3, 7, 12}) {
    IQPEConfig cfg;
    cfg.n_bits = n;
    cfg.spectrum_shift = 2.0;
    EXPECT_EQ(iqpe_estimate(h, test::basis_state(4, 1), cfg).query_depth, (1L << n) - 1);
  }
}

TEST(Iqpe, SeedDeterminism) {
  const ComplexMatrix h = build_spin_chain(test::fig3_chain());
  IQPEConfig cfg;
  cfg.spectrum_shift = 2.0;
  cfg.query_error = 0.01;
  cfg.seed = 42;
  const StateVector psi = test::basis_state(4, 1);
  for (QueryNoisePlacement placement : {QueryNoisePlacement::per_round, QueryNoisePlacement::per_application}) {
    cfg.placement = placement;
    cfg.n_bits = placement == QueryNoisePlacement::per_round ? 11 : 7;
    const IQPEResult a = iqpe_estimate(h, psi, cfg);
    const IQPEResult b = iqpe_estimate(h, psi, cfg);
    EXPECT_EQ(a.bits, b.bits);
    EXPECT_EQ(a.p0, b.p0);
  }
}

TEST(Iqpe, Validation) {
  const ComplexMatrix h = build_spin_chain(test::fig3_chain());
  IQPEConfig cfg;
  cfg.n_bits = 0;
  EXPECT_THROW(iqpe_estimate(h, test::basis_state(4, 0), cfg), InvalidArgument);
  cfg.n_bits = 4;
  cfg.delta_t = 0.0;
  EXPECT_THROW(iqpe_estimate(h, test::basis_state(4, 0), cfg), InvalidArgument);
  cfg.delta_t = 0.4;
  EXPECT_THROW(iqpe_estimate(h, 2.0 * test::basis_state(4, 0), cfg), InvalidArgument);
  EXPECT_THROW(iqpe_estimate(h, test::basis_state(2, 0), cfg), DimensionError);
}

TEST(QueryError, ZeroIsIdentity) {
  std::mt19937_64 gen(1);
  const ComplexMatrix u = test::random_unitary(4, gen);
  Rng rng = make_stream(1, {2});
  EXPECT_EQ(max_abs(inject_query_error(u, 0.0, rng) - u), 0.0);
  EXPECT_THROW(inject_query_error(u, -0.1, rng), InvalidArgument);
}

TEST(QueryError, ElementVariance) {
  std::mt19937_64 gen(2);
  const ComplexMatrix u = test::random_unitary(4, gen);
  const double eps = 0.07;
  Rng rng = make_stream(3, {4});
  double acc = 0.0;
  long count = 0;
  Complex mean = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const ComplexMatrix d = inject_query_error(u, eps, rng) - u;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      acc += std::norm(d.data()[i]);
      mean += d.data()[i];
      ++count;
    }
  }
  EXPECT_NEAR(acc / count, eps * eps, 0.05 * eps * eps);
  EXPECT_LT(std::abs(mean / static_cast<double>(count)), 5.0 * eps / std::sqrt(static_cast<double>(count)));
}

TEST(TrialState, Overlap) {
  std::mt19937_64 gen(6);
  const StateVector t = test::random_state(8, gen);
  const StateVector o = test::random_state(8, gen);
  for (double zeta : {0.1, 0.5, 0.9, 1.0}) {
    const StateVector psi = trial_state(t, o, zeta);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(t.dot(psi)), zeta, 1e-12);
  }
  EXPECT_THROW(trial_state(t, o, 0.0), InvalidArgument);
  EXPECT_THROW(trial_state(t, o, 1.1), InvalidArgument);
  EXPECT_THROW(trial_state(t, 2.0 * t, 0.5), InvalidArgument);
  EXPECT_THROW(trial_state(t, test::random_state(4, gen), 0.5), DimensionError);
}
