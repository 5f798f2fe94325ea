#include "uqcs/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uqcs/error.hpp"

namespace uqcs {

namespace {

bool finite3(const std::array<double, 3>& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

SpinMatrices make_spin32() {
  constexpr double s = 1.5;
  ComplexMatrix plus = ComplexMatrix::Zero(4, 4);
  ComplexMatrix z = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const double m = s - k;
    z(k, k) = m;
    if (k > 0) plus(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const ComplexMatrix minus = plus.adjoint();
  return {0.5 * (plus + minus), (plus - minus) / (2.0 * kI), z};
}

}  // namespace

void validate(const SpinChainSpec& spec) {
  if (spec.n_sites < 2) throw InvalidArgument("spin chain: n_sites must be >= 2");
  if (spec.n_sites > 12) throw DimensionError("spin chain: n_sites must be <= 12");
  if (!finite3(spec.J) || !finite3(spec.h)) throw InvalidArgument("spin chain: non-finite parameter");
}

void validate(const TwoModeNHSpec& spec) {
  if (!(spec.kappa >= 0.0)) throw InvalidArgument("two-mode: kappa must be >= 0");
  for (double v : {spec.delta1, spec.delta2, spec.g1, spec.g2, spec.kappa}) {
    if (!std::isfinite(v)) throw InvalidArgument("two-mode: non-finite parameter");
  }
}

void validate(const NQRDriveSpec& spec) {
  if (!(spec.B > 0.0) || !std::isfinite(spec.B)) throw InvalidArgument("nqr: B must be > 0");
  if (!(spec.theta >= 0.0 && spec.theta <= std::numbers::pi)) {
    throw InvalidArgument("nqr: theta must lie in [0, pi]");
  }
  if (!(spec.Omega >= 0.0) || !std::isfinite(spec.Omega)) throw InvalidArgument("nqr: Omega must be >= 0");
}

const SpinMatrices& spin32() {
  static const SpinMatrices ops = make_spin32();
  return ops;
}

ComplexMatrix build_spin_chain(const SpinChainSpec& spec) {
  validate(spec);
  const int n = spec.n_sites;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto [jx, jy, jz] = spec.J;
  const auto [hx, hy, hz] = spec.h;
  const int n_bonds = spec.periodic ? n : n - 1;

  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  // Site i (0-based from the left) sits at bit n-1-i; bit 0 means spin up (z = +1).
  auto bit = [n](int site) { return Eigen::Index{1} << (n - 1 - site); };
  for (Eigen::Index s = 0; s < dim; ++s) {
    auto z = [&](int site) { return (s & bit(site)) ? -1.0 : 1.0; };
    Complex diag = 0.0;
    for (int b = 0; b < n_bonds; ++b) {
      const int i = b;
      const int j = (b + 1) % n;
      const double zz = z(i) * z(j);
      diag += jz * zz;
      // xx + yy flip both spins; s^y s^y contributes -z_i z_j.
      const Complex flip = jx - jy * zz;
      if (flip != 0.0) h(s ^ bit(i) ^ bit(j), s) += flip;
    }
    for (int i = 0; i < n; ++i) {
      diag += hz * z(i);
      // s^y |b> = i z_b |1-b>
      const Complex flip = hx + kI * hy * z(i);
      if (flip != 0.0) h(s ^ bit(i), s) += flip;
    }
    h(s, s) += diag;
  }
  return h;
}

ComplexMatrix build_two_mode_nh(const TwoModeNHSpec& spec) {
  validate(spec);
  ComplexMatrix h(2, 2);
  h << Complex(spec.delta1, -spec.g1), spec.kappa, spec.kappa, Complex(spec.delta2, spec.g2);
  return h;
}

ComplexMatrix nqr_hamiltonian_at(const NQRDriveSpec& spec, double t) {
  validate(spec);
  const auto& s = spin32();
  const double phase = spec.Omega * t;
  const double st = std::sin(spec.theta);
  const ComplexMatrix bs =
      spec.B * (st * std::cos(phase) * s.x + st * std::sin(phase) * s.y + std::cos(spec.theta) * s.z);
  return bs * bs;
}

ComplexMatrix FourierHamiltonian::component(int m) const {
  auto it = components.find(m);
  if (it == components.end()) return ComplexMatrix::Zero(dim, dim);
  return it->second;
}

ComplexMatrix FourierHamiltonian::at(double t) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& [m, c] : components) out += std::exp(-kI * (m * base_frequency * t)) * c;
  return out;
}

FourierHamiltonian fourier_components(const NQRDriveSpec& spec, int m_max) {
  validate(spec);
  if (m_max < 2) throw InvalidArgument("fourier_components: m_max must be >= 2");
  FourierHamiltonian fh;
  fh.dim = 4;
  fh.base_frequency = spec.Omega;
  if (spec.Omega == 0.0) {
    fh.components[0] = nqr_hamiltonian_at(spec, 0.0);
    return fh;
  }

  const double period = 2.0 * std::numbers::pi / spec.Omega;
  const int p = kFourierQuadraturePoints;
  std::vector<ComplexMatrix> acc(static_cast<std::size_t>(m_max + 1), ComplexMatrix::Zero(4, 4));
  for (int j = 0; j < p; ++j) {
    const double t = period * j / p;
    const ComplexMatrix h = nqr_hamiltonian_at(spec, t);
    for (int m = 0; m <= m_max; ++m) {
      acc[static_cast<std::size_t>(m)] += std::exp(kI * (2.0 * std::numbers::pi * m * j / p)) * h;
    }
  }
  const double scale = 1.0 + max_abs(acc[0]) / p;
  for (int m = 0; m <= m_max; ++m) {
    ComplexMatrix c = acc[static_cast<std::size_t>(m)] / static_cast<double>(p);
    if (max_abs(c) <= 1e-13 * scale) continue;
    if (m == 0) {
      fh.components[0] = 0.5 * (c + c.adjoint());
    } else {
      fh.components[-m] = c.adjoint();
      fh.components[m] = std::move(c);
    }
  }
  if (!fh.components.count(0)) fh.components[0] = ComplexMatrix::Zero(4, 4);
  return fh;
}

FourierHamiltonian static_fourier(const ComplexMatrix& h, double base_frequency) {
  if (h.rows() != h.cols()) throw DimensionError("static_fourier: matrix must be square");
  FourierHamiltonian fh;
  fh.dim = h.rows();
  fh.base_frequency = base_frequency;
  fh.components[0] = h;
  return fh;
}

double spectral_radius_bound(const SpinChainSpec& spec) {
  validate(spec);
  const int n_bonds = spec.periodic ? spec.n_sites : spec.n_sites - 1;
  double sj = 0.0;
  double sh = 0.0;
  for (int a = 0; a < 3; ++a) {
    sj += std::abs(spec.J[static_cast<std::size_t>(a)]);
    sh += std::abs(spec.h[static_cast<std::size_t>(a)]);
  }
  return n_bonds * sj + spec.n_sites * sh;
}

}  // namespace uqcs
