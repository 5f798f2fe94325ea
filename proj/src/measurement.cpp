#include "uqcs/measurement.hpp"

#include <cmath>

#include "uqcs/error.hpp"

namespace uqcs {

namespace {

double sample_part(double part, double magnitude, long shots, Rng& rng) {
  if (std::abs(part) <= 1.0) return binomial_mean(rng, part, shots);
  return part + standard_normal(rng) * (1.0 + magnitude) / std::sqrt(static_cast<double>(shots));
}

}  // namespace

Observable make_observable(const std::string& label, Eigen::Index dim) {
  if (label == "I") return {label, ComplexMatrix::Identity(dim, dim)};
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) throw DimensionError("observable: dimension is not a power of two");
  if (label == "M") {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
      std::string s(static_cast<std::size_t>(n), 'I');
      s[static_cast<std::size_t>(i)] = 'Z';
      m += pauli_string(s);
    }
    return {label, m};
  }
  if (static_cast<int>(label.size()) != n) {
    throw DimensionError("observable '" + label + "': expected " + std::to_string(n) + " Pauli labels");
  }
  return {label, pauli_string(label)};
}

Complex correlator_ideal(const ComplexMatrix& u_eta, const ComplexMatrix& u_eta_t, const ComplexMatrix& o,
                         const StateVector& psi) {
  const Eigen::Index d = psi.size();
  if (u_eta.rows() != d || u_eta.cols() != d || u_eta_t.rows() != d || u_eta_t.cols() != d || o.rows() != d ||
      o.cols() != d) {
    throw DimensionError("correlator: operator and state dimensions disagree");
  }
  const StateVector bra = u_eta * psi;
  const StateVector ket = o * (u_eta_t * psi);
  return bra.dot(ket);
}

Complex sample_value(Complex exact, const NoiseModel& noise, std::uint64_t k0, std::uint64_t k1, std::uint64_t k2) {
  if (noise.ideal_shots()) return exact;
  const auto purpose = static_cast<std::uint64_t>(StreamPurpose::shot);
  Rng re = make_stream(noise.seed, {purpose, k0, k1, k2, 0});
  Rng im = make_stream(noise.seed, {purpose, k0, k1, k2, 1});
  const double mag = std::abs(exact);
  return {sample_part(exact.real(), mag, noise.shots, re), sample_part(exact.imag(), mag, noise.shots, im)};
}

Complex correlator_sampled(const ComplexMatrix& u_eta, const ComplexMatrix& u_eta_t, const ComplexMatrix& o,
                           const StateVector& psi, const NoiseModel& noise, std::uint64_t eta_index,
                           std::uint64_t t_index, std::uint64_t observable_id) {
  return sample_value(correlator_ideal(u_eta, u_eta_t, o, psi), noise, eta_index, t_index, observable_id);
}

ComplexMatrix apply_gate_error(const ComplexMatrix& u, double eps_g, int n_points, Rng& rng) {
  if (!(eps_g >= 0.0)) throw InvalidArgument("apply_gate_error: eps_g must be >= 0");
  if (n_points < 2) throw InvalidArgument("apply_gate_error: N must be >= 2");
  if (eps_g == 0.0) return u;
  const double variance = eps_g / (n_points / 2.0);
  ComplexMatrix out = u;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) out(r, c) += complex_normal(rng, variance);
  }
  return out;
}

Complex trace_circuit_sample(const ComplexMatrix& h, double t, const NoiseModel& noise, std::uint64_t t_index) {
  const ComplexMatrix u = evolve_static(h, t);
  const Complex exact = u.trace() / static_cast<double>(h.rows());
  return sample_value(exact, noise, static_cast<std::uint64_t>(StreamPurpose::trace), t_index, 0);
}

std::vector<CorrelatorSample> SampleGrid::flatten() const {
  std::vector<CorrelatorSample> out;
  out.reserve(labels.size() * eta.size() * t.size());
  for (std::size_t o = 0; o < labels.size(); ++o) {
    for (std::size_t j = 0; j < eta.size(); ++j) {
      for (std::size_t k = 0; k < t.size(); ++k) {
        out.push_back({eta[j], t[k], labels[o],
                       values[o](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))});
      }
    }
  }
  return out;
}

}  // namespace uqcs
