#pragma once

#include <array>
#include <map>

#include "uqcs/linalg.hpp"

namespace uqcs {

// H = sum_{bonds, a} J_a s_i^a s_{i+1}^a + sum_{i, a} h_a s_i^a  (a = x, y, z)
struct SpinChainSpec {
  int n_sites = 2;
  std::array<double, 3> J{0.0, 0.0, 0.0};
  std::array<double, 3> h{0.0, 0.0, 0.0};
  bool periodic = false;
};

// [[delta1 - i g1, kappa], [kappa, delta2 + i g2]]
struct TwoModeNHSpec {
  double delta1 = 1.0;
  double delta2 = 1.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double kappa = 0.0;
};

// H(t) = (B(t) . S)^2 for spin 3/2,
// B(t) = B (sin(theta) cos(Omega t), sin(theta) sin(Omega t), cos(theta)).
//
// Basis ordering is m descending: index 0 is m=+3/2, index 3 is m=-3/2.
struct NQRDriveSpec {
  double B = 2.0;
  double theta = 0.0;
  double Omega = 0.0;
};

// H(t) = sum_m exp(-i m Omega t) components[m].
struct FourierHamiltonian {
  Eigen::Index dim = 0;
  std::map<int, ComplexMatrix> components;
  double base_frequency = 0.0;

  ComplexMatrix at(double t) const;
  // Zero matrix for harmonics not stored.
  ComplexMatrix component(int m) const;
};

struct SpinMatrices {
  ComplexMatrix x, y, z;
};

// Spin-3/2 operators, m descending.
const SpinMatrices& spin32();

ComplexMatrix build_spin_chain(const SpinChainSpec& spec);
ComplexMatrix build_two_mode_nh(const TwoModeNHSpec& spec);
ComplexMatrix nqr_hamiltonian_at(const NQRDriveSpec& spec, double t);

// Trapezoidal quadrature with this many points per period.
inline constexpr int kFourierQuadraturePoints = 4096;
FourierHamiltonian fourier_components(const NQRDriveSpec& spec, int m_max);

// Wraps a time-independent matrix as a single m=0 component.
FourierHamiltonian static_fourier(const ComplexMatrix& h, double base_frequency);

double spectral_radius_bound(const SpinChainSpec& spec);

void validate(const SpinChainSpec& spec);
void validate(const TwoModeNHSpec& spec);
void validate(const NQRDriveSpec& spec);

}  // namespace uqcs
