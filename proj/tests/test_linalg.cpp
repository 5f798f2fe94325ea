#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"
#include "uqcs/error.hpp"
#include "uqcs/hamiltonians.hpp"
#include "uqcs/linalg.hpp"

using namespace uqcs;
using uqcs::test::random_matrix;

namespace {

ComplexMatrix id(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

TEST(Matexp, ZeroIsIdentity) {
  EXPECT_LT(max_abs(matexp(ComplexMatrix::Zero(5, 5), Complex(3.0, -2.0)) - id(5)), 1e-15);
}

TEST(Matexp, PauliXQuarterTurn) {
  const ComplexMatrix x = pauli_string("X");
  const ComplexMatrix u = matexp(x, Complex(0.0, -std::numbers::pi / 2));
  EXPECT_LT(max_abs(u - (-kI) * x), 1e-14);
}

TEST(Matexp, MatchesSubstepTaylor) {
  const ComplexMatrix h = build_spin_chain(test::fig3_chain());
  const ComplexMatrix u = matexp(h, Complex(0.0, -0.4));
  EXPECT_LT(max_abs(u - test::taylor_exp(h, Complex(0.0, -0.4), 10000)), 1e-9);
}

TEST(Matexp, InverseProperty) {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix a = random_matrix(6, gen);
    a *= 10.0 / a.cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_LT(max_abs(matexp(a) * matexp(a, -1.0) - id(6)), 1e-10);
  }
}

TEST(Matexp, UnitaryForHermitianGenerator) {
  std::mt19937_64 gen(12);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix h = test::random_hermitian(8, gen);
    const auto s = svd(matexp(h, Complex(0.0, -7.3))).s;
    EXPECT_LT((s.array() - 1.0).abs().maxCoeff(), 1e-10);
  }
}

TEST(Matexp, LongUnitaryEvolutionAccepted) {
  const ComplexMatrix h = build_spin_chain(test::fig3f_chain());
  const ComplexMatrix u = matexp(h, Complex(0.0, -24.0));
  EXPECT_LT(max_abs(u * u.adjoint() - id(256)), 1e-9);
}

TEST(Matexp, Errors) {
  EXPECT_THROW(matexp(ComplexMatrix::Zero(2, 3)), DimensionError);
  EXPECT_THROW(matexp(id(2), 1000.0), OverflowError);
}

TEST(EigGeneral, PauliZ) {
  const auto d = eig_general(pauli_string("Z"));
  ASSERT_TRUE(d.hermitian);
  EXPECT_NEAR(d.values[0].real(), -1.0, 1e-14);
  EXPECT_NEAR(d.values[1].real(), 1.0, 1e-14);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(d.left.col(i).dot(d.right.col(i))), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(d.right(1, 0)), 1.0, 1e-14);
}

TEST(EigGeneral, NonHermitianExactPhase) {
  const auto d = eig_general(build_two_mode_nh(test::nh_spec(0.4)));
  EXPECT_FALSE(d.defective);
  EXPECT_TRUE(d.bi_normalized);
  EXPECT_NEAR(d.values[0].real(), 0.7, 1e-12);
  EXPECT_NEAR(d.values[1].real(), 1.3, 1e-12);
  EXPECT_NEAR(d.values[0].imag(), 0.0, 1e-12);
}

TEST(EigGeneral, ExceptionalPointIsDefective) {
  const auto d = eig_general(build_two_mode_nh(test::nh_spec(0.5)));
  EXPECT_TRUE(d.defective);
  EXPECT_NEAR(d.values[0].real(), 1.0, 1e-6);
  EXPECT_NEAR(d.values[1].real(), 1.0, 1e-6);
  EXPECT_EQ(d.right.size(), 0);
}

TEST(EigGeneral, EigenpairResiduals) {
  std::mt19937_64 gen(3);
  const ComplexMatrix a = random_matrix(12, gen);
  const auto d = eig_general(a);
  const double na = a.norm();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    EXPECT_LT((a * d.right.col(i) - d.values[i] * d.right.col(i)).norm(), 1e-9 * na);
    EXPECT_LT((d.left.col(i).adjoint() * a - d.values[i] * d.left.col(i).adjoint()).norm(), 1e-9 * na);
  }
}

TEST(EigGeneral, HermitianValuesReal) {
  std::mt19937_64 gen(4);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix h = test::random_hermitian(10, gen);
    const auto d = eig_general(h);
    EXPECT_LE(d.values.imag().cwiseAbs().maxCoeff(), 1e-10 * h.norm());
  }
}

TEST(EigGeneral, ReconstructionRoundTrip) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> dim(2, 64);
  for (int rep = 0; rep < 100; ++rep) {
    const ComplexMatrix a = random_matrix(dim(gen), gen);
    const auto d = eig_general(a);
    ASSERT_TRUE(d.bi_normalized);
    EXPECT_LT((d.reconstruct() - a).norm(), 1e-9 * a.norm()) << "rep " << rep;
  }
}

TEST(Svd, Identity) {
  const auto r = svd(id(7));
  EXPECT_LT((r.s.array() - 1.0).abs().maxCoeff(), 1e-14);
}

TEST(Svd, RankOne) {
  std::mt19937_64 gen(6);
  const ComplexMatrix u = random_matrix(9, gen).col(0);
  const ComplexMatrix v = random_matrix(7, gen).col(0);
  const auto r = svd(u * v.adjoint());
  int above = 0;
  for (Eigen::Index i = 0; i < r.s.size(); ++i) above += r.s[i] > 1e-12;
  EXPECT_EQ(above, 1);
}

TEST(Svd, RandomReconstruction) {
  std::mt19937_64 gen(7);
  const ComplexMatrix a = random_matrix(60, gen);
  const auto r = svd(a);
  for (Eigen::Index i = 1; i < r.s.size(); ++i) EXPECT_LE(r.s[i], r.s[i - 1]);
  EXPECT_GE(r.s.minCoeff(), 0.0);
  EXPECT_LT((r.u * r.s.asDiagonal() * r.v.adjoint() - a).norm(), 1e-10 * a.norm());
}

TEST(Pauli, Magnetization) {
  const ComplexMatrix m = pauli_string("ZI") + pauli_string("IZ");
  Eigen::VectorXcd expected(4);
  expected << 2.0, 0.0, 0.0, -2.0;
  EXPECT_LT(max_abs(m - ComplexMatrix(expected.asDiagonal())), 1e-15);
}

TEST(Pauli, XIsOffDiagonal) {
  const ComplexMatrix x = pauli_string("X");
  EXPECT_EQ(x(0, 1), Complex(1.0));
  EXPECT_EQ(x(1, 0), Complex(1.0));
  EXPECT_EQ(x(0, 0), Complex(0.0));
}

TEST(Pauli, InvolutionEightSites) {
  const ComplexMatrix z = pauli_string("ZZZZZZZZ");
  EXPECT_LT(max_abs(z * z - id(256)), 1e-15);
}

TEST(Pauli, SiteOneIsLeftmost) {
  EXPECT_LT(max_abs(pauli_string("XZ") - kron(pauli_string("X"), pauli_string("Z"))), 1e-15);
}

TEST(Pauli, UnknownLabel) { EXPECT_THROW(pauli_string("XQ"), InvalidArgument); }
