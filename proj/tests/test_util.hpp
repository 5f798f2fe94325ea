#pragma once

#include <random>

#include "uqcs/hamiltonians.hpp"
#include "uqcs/linalg.hpp"

namespace uqcs::test {

inline ComplexMatrix random_matrix(Eigen::Index n, std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(nd(gen), nd(gen));
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& gen, double scale = 1.0) {
  const ComplexMatrix a = random_matrix(n, gen, scale);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& gen) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, gen));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

inline StateVector random_state(Eigen::Index n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  StateVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(nd(gen), nd(gen));
  return v.normalized();
}

inline StateVector basis_state(Eigen::Index n, Eigen::Index i) {
  StateVector v = StateVector::Zero(n);
  v[i] = 1.0;
  return v;
}

inline SpinChainSpec fig3_chain() {
  SpinChainSpec s;
  s.n_sites = 2;
  s.J = {-1.0, -1.0, -1.5};
  s.h = {1.5, 0.0, 0.5};
  return s;
}

inline SpinChainSpec fig3f_chain() {
  SpinChainSpec s = fig3_chain();
  s.n_sites = 8;
  s.periodic = true;
  return s;
}

inline TwoModeNHSpec nh_spec(double g) {
  TwoModeNHSpec s;
  s.delta1 = 1.0;
  s.delta2 = 1.0;
  s.g1 = g;
  s.g2 = g;
  s.kappa = 0.5;
  return s;
}

// Substep Taylor series of exp(scale * a): 4th order per substep.
inline ComplexMatrix taylor_exp(const ComplexMatrix& a, Complex scale, int substeps) {
  const ComplexMatrix x = a * (scale / static_cast<double>(substeps));
  const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix step = id + x + x2 / 2.0 + x2 * x / 6.0 + x2 * x2 / 24.0;
  ComplexMatrix out = id;
  for (int k = 0; k < substeps; ++k) out = step * out;
  return out;
}

}  // namespace uqcs::test
