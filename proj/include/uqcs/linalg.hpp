#pragma once

#include <complex>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace uqcs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Largest operator dimension any routine accepts (12 qubits).
inline constexpr Eigen::Index kMaxDim = 4096;

// exp(scale * a) by scaling and squaring with a degree-13 Pade approximant.
// OverflowError when the 1-norm of the Hermitian part of scale*a exceeds
// kMatexpNormLimit (the result could leave double range). Unitary
// generators (anti-Hermitian scale*a) are never rejected.
inline constexpr double kMatexpNormLimit = 700.0;
ComplexMatrix matexp(const ComplexMatrix& a, Complex scale = 1.0);

/// Eigen-decomposition in the dual (biorthogonal) basis,
///   A = sum_i values[i] |r_i><l_i|,   <l_i|r_j> = delta_ij.
///
/// Right vectors are unit-norm columns; left vectors carry the
/// bi-normalization scale, so |<l_i|psi>|^2 is the spectral weight of
/// psi on the i-th eigen-direction. For Hermitian input the two sets
/// coincide and values are real.
///
/// When the eigenvector matrix is numerically singular (an exceptional
/// point) `defective` is set, `condition` reports the relative minimal
/// singular value, and both vector matrices are left empty.
struct DualEigenDecomposition {
  Eigen::VectorXcd values;
  ComplexMatrix right;
  ComplexMatrix left;
  bool bi_normalized = false;
  bool defective = false;
  bool hermitian = false;
  double condition = 1.0;

  ComplexMatrix reconstruct() const;
};

// Relative minimal singular value of the eigenvector matrix below which
// the input is reported as defective.
inline constexpr double kDefectiveThreshold = 1e-6;

DualEigenDecomposition eig_general(const ComplexMatrix& a);

struct SvdResult {
  ComplexMatrix u;
  Eigen::VectorXd s;  // non-negative, descending
  ComplexMatrix v;
};

// Thin SVD, a = u * diag(s) * v^dagger.
SvdResult svd(const ComplexMatrix& a);

// Kronecker product of single-site Paulis; site 1 is the leftmost factor
// (most significant bit). Labels are I, X, Y, Z (case-insensitive).
ComplexMatrix pauli_string(std::string_view labels);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12);

// Maximum absolute entry.
double max_abs(const ComplexMatrix& a);

}  // namespace uqcs
