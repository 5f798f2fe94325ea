#pragma once

#include <cstdint>
#include <vector>

#include "uqcs/linalg.hpp"
#include "uqcs/rng.hpp"

namespace uqcs {

enum class QueryNoisePlacement {
  per_round,        // one noisy copy of the base query per round, then squared
  per_application,  // fresh noise on every application of the base query
};

struct IQPEConfig {
  int n_bits = 11;
  long shots_per_round = 1000;  // 0 means exact ancilla probabilities
  double delta_t = 0.4;
  double spectrum_shift = 11.0;
  double query_error = 0.0;
  QueryNoisePlacement placement = QueryNoisePlacement::per_round;
  std::uint64_t seed = 0;
};

struct IQPEResult {
  double energy = 0.0;
  double phase = 0.0;  // in [0, 2 pi)
  std::vector<int> bits;  // most significant first
  std::vector<double> p0; // ancilla P(0) per round, in round order (least significant bit first)
  bool reliable = true;
  long query_depth = 0;   // 2^n_bits - 1
};

// Query unitary V = exp(i (H dt + shift)); phase bits are read least
// significant first with feedback rotations, W = V^(2^k) by repeated
// squaring. Energy = (phase - shift) / dt. A round is unreliable when the
// vote is within two binomial standard deviations of a tie (or, without
// shots, when |P0 - 1/2| < 1e-3).
IQPEResult iqpe_estimate(const ComplexMatrix& h, const StateVector& psi, const IQPEConfig& cfg);

// Same with the base query unitary supplied directly (delta_t and shift
// are used only to convert the phase to an energy).
IQPEResult iqpe_estimate_unitary(const ComplexMatrix& v, const StateVector& psi, const IQPEConfig& cfg);

// U + eps_q * CN(0, 1) elementwise.
ComplexMatrix inject_query_error(const ComplexMatrix& u, double eps_q, Rng& rng);

// zeta |target> + sqrt(1 - zeta^2) |o>, o the normalized part of `other`
// orthogonal to target.
StateVector trial_state(const StateVector& target, const StateVector& other, double zeta);

}  // namespace uqcs
