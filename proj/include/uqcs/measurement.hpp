#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uqcs/dynamics.hpp"
#include "uqcs/linalg.hpp"
#include "uqcs/rng.hpp"
#include "uqcs/window.hpp"

namespace uqcs {

struct NoiseModel {
  double gate_error = 0.0;   // eps_g: per-element variance eps_g / (N/2) on each step unitary
  double query_error = 0.0;  // eps_q: per-element amplitude eps_q on each step unitary
  long shots = 0;            // per real/imaginary part; 0 means ideal (exact values)
  std::uint64_t seed = 0;

  bool ideal_shots() const { return shots <= 0; }
  bool noisy_gates() const { return gate_error > 0.0 || query_error > 0.0; }
};

struct Observable {
  std::string label;
  ComplexMatrix op;
};

// "I" for the identity of dimension d, otherwise a Pauli string.
Observable make_observable(const std::string& label, Eigen::Index dim);

struct CorrelatorSample {
  double eta = 0.0;
  double t = 0.0;
  std::string observable;
  Complex value;
};

// Stream purposes, used as the first key of every stream.
enum class StreamPurpose : std::uint64_t { shot = 1, gate = 2, trace = 3, iqpe = 4, query = 5, synthetic = 6 };

Complex correlator_ideal(const ComplexMatrix& u_eta, const ComplexMatrix& u_eta_t, const ComplexMatrix& o,
                         const StateVector& psi);

// Shot noise on an exact value. Each part is a binomial mean when |part| <= 1,
// otherwise value + N(0, ((1 + |value|) / sqrt(shots))^2). Parts use
// independent streams keyed by (seed, shot, keys..., part).
Complex sample_value(Complex exact, const NoiseModel& noise, std::uint64_t k0, std::uint64_t k1, std::uint64_t k2);

// Shot-sampled correlator. Gate errors are not applied here; sample_grid
// handles them since they depend on the step decomposition.
Complex correlator_sampled(const ComplexMatrix& u_eta, const ComplexMatrix& u_eta_t, const ComplexMatrix& o,
                           const StateVector& psi, const NoiseModel& noise, std::uint64_t eta_index = 0,
                           std::uint64_t t_index = 0, std::uint64_t observable_id = 0);

// U + E with E_ij ~ CN(0, eps_g / (N/2)) independently; not re-unitarized.
ComplexMatrix apply_gate_error(const ComplexMatrix& u, double eps_g, int n_points, Rng& rng);

// Tr(exp(-i H t)) / d, shot-sampled like correlator_sampled.
Complex trace_circuit_sample(const ComplexMatrix& h, double t, const NoiseModel& noise, std::uint64_t t_index = 0);

// Sampled correlators over the full (eta_j, t_k) grid for each observable.
struct SampleGrid {
  std::vector<double> eta;
  std::vector<double> t;
  std::vector<std::string> labels;
  std::vector<Eigen::MatrixXcd> values;  // values[o](j, k)

  std::vector<CorrelatorSample> flatten() const;
};

// Evolution proceeds in single steps of length dt (the window grid step).
// Without gate/query errors the states are exact; with them each step
// applies U_step + E, E fresh per step and per grid point, the eta
// segment shared between bra and ket. For Hermitian generators the noisy
// statistic is 2<a|O b> / (|a|^2 + |O b|^2), the ancilla expectation of a
// non-unitary circuit, which equals the ideal value when E = 0.
SampleGrid sample_grid(const Generator& gen, const StateVector& psi, const std::vector<Observable>& observables,
                       const WindowParams& w, const NoiseModel& noise);

}  // namespace uqcs
