#include "uqcs/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "uqcs/error.hpp"

namespace uqcs {

namespace {

void require_square(const ComplexMatrix& a, const char* where) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(where) + ": matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
  if (a.rows() > kMaxDim) {
    throw DimensionError(std::string(where) + ": dimension " + std::to_string(a.rows()) +
                         " exceeds limit " + std::to_string(kMaxDim));
  }
}

double one_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_abs(a));
  return max_abs(a - a.adjoint()) <= rel_tol * scale;
}

ComplexMatrix matexp(const ComplexMatrix& a, Complex scale) {
  require_square(a, "matexp");
  if (!a.allFinite()) throw InvalidArgument("matexp: input has non-finite entries");
  const ComplexMatrix scaled = scale * a;
  // ||exp(X)|| <= exp(mu(X)) with mu the largest eigenvalue of (X + X^dagger)/2,
  // itself bounded by the 1-norm of that Hermitian part.
  const double growth = one_norm(0.5 * (scaled + scaled.adjoint()));
  if (growth > kMatexpNormLimit) {
    throw OverflowError("matexp: growth bound " + std::to_string(growth) + " exceeds the supported range");
  }
  ComplexMatrix out = scaled.exp();
  if (!out.allFinite()) throw OverflowError("matexp: result overflowed");
  return out;
}

ComplexMatrix DualEigenDecomposition::reconstruct() const {
  if (defective) throw InvalidArgument("reconstruct: decomposition is defective");
  return right * values.asDiagonal() * left.adjoint();
}

DualEigenDecomposition eig_general(const ComplexMatrix& a) {
  require_square(a, "eig_general");
  if (!a.allFinite()) throw InvalidArgument("eig_general: input has non-finite entries");

  DualEigenDecomposition out;
  if (is_hermitian(a, 1e-14)) {
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
    if (es.info() != Eigen::Success) throw ConvergenceError("eig_general: Hermitian solver did not converge");
    out.values = es.eigenvalues().cast<Complex>();
    out.right = es.eigenvectors();
    out.left = out.right;
    out.bi_normalized = true;
    out.hermitian = true;
    return out;
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> es;
  es.setMaxIterations(60 * std::max<Eigen::Index>(a.rows(), 1));
  es.compute(a, true);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eig_general: QR iteration hit the iteration cap");
  }

  // Deterministic ordering: ascending real part, then imaginary part.
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (ev[x].real() != ev[y].real()) return ev[x].real() < ev[y].real();
    return ev[x].imag() < ev[y].imag();
  });

  out.values.resize(n);
  ComplexMatrix right(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = ev[order[static_cast<std::size_t>(k)]];
    right.col(k) = es.eigenvectors().col(order[static_cast<std::size_t>(k)]).normalized();
  }

  Eigen::JacobiSVD<ComplexMatrix> sv(right);
  const auto& s = sv.singularValues();
  out.condition = s.size() == 0 || s[0] == 0.0 ? 0.0 : s[s.size() - 1] / s[0];
  if (out.condition < kDefectiveThreshold) {
    out.defective = true;
    return out;
  }

  // Rows of R^{-1} are the dual vectors l_i^dagger with <l_i|r_j> = delta_ij.
  out.right = std::move(right);
  out.left = out.right.inverse().adjoint();
  out.bi_normalized = true;
  return out;
}

SvdResult svd(const ComplexMatrix& a) {
  if (!a.allFinite()) throw InvalidArgument("svd: input has non-finite entries");
  Eigen::BDCSVD<ComplexMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
  if (!out.u.allFinite() || !out.v.allFinite() || !out.s.allFinite()) {
    throw ConvergenceError("svd: decomposition did not converge");
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix pauli_string(std::string_view labels) {
  if (labels.empty()) throw InvalidArgument("pauli_string: empty label sequence");
  if (labels.size() > 12) throw DimensionError("pauli_string: more than 12 sites");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : labels) {
    ComplexMatrix p(2, 2);
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, -kI, kI, 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default:
        throw InvalidArgument(std::string("pauli_string: unknown label '") + c + "'");
    }
    out = kron(out, p);
  }
  return out;
}

}  // namespace uqcs
