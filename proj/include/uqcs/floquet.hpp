#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "uqcs/hamiltonians.hpp"
#include "uqcs/linalg.hpp"

namespace uqcs {

// Extended-space (Sambe) matrix for H(t) = sum_m exp(-i m Omega t) H^(m):
// block (p, p) = H^(0) + p Omega, block (p, q) = H^(q - p), p, q in [-p_max, p_max].
// An eigenvector y gives the Floquet mode u(t) = sum_p exp(i p Omega t) y_p.
struct ExtendedSpaceProblem {
  FourierHamiltonian base;
  int p_max = 0;
  ComplexMatrix matrix;
};

ExtendedSpaceProblem build_extended(const FourierHamiltonian& fh, int p_max);

inline constexpr int kDefaultHarmonics = 10;

struct QuasiEnergy {
  double energy = 0.0;
  int band = 0;             // floor((energy - level_energy) / Omega + 1/2)
  int level = 0;            // index into the static reference levels
  double weight_hint = 0.0; // spectral weight of this line for the probe state, else ||y_0||^2
  double harmonic_centroid = 0.0;
};

// Eigenvalues of the extended matrix whose harmonic centroid lies within
// p_max/2 (the well-converged part), sorted ascending. Each is assigned to
// the static level nearest energy - round(centroid) * Omega.
std::vector<QuasiEnergy> quasi_energies(const ExtendedSpaceProblem& prob, const std::vector<double>& static_levels,
                                        const StateVector* probe = nullptr);

// Distinct eigenvalues of a Hermitian matrix, merging values closer than tol.
std::vector<double> distinct_levels(const ComplexMatrix& h, double tol = 1e-8);

enum class DoubletLevel { lower, upper };

struct HolonomyResult {
  ComplexMatrix wz_matrix;
  Complex wilson_trace;
  std::vector<double> eigenphases;   // of wz_matrix, in (-pi, pi]
  std::optional<double> berry_phase; // set when wz_matrix is proportional to the identity
};

// Parallel transport of the degenerate doublet of (B(phi).S)^2 around
// phi in [0, 2 pi] at fixed theta. TrackingError if the doublet stops being
// separated from the other level.
HolonomyResult wz_holonomy(const NQRDriveSpec& spec, DoubletLevel level, int n_path_steps);

// Holonomy from subspace frames along a closed loop: frames[k] is d x r with
// orthonormal columns and frames.back() spans the same subspace as
// frames.front(). Each frame is rotated to maximize overlap with its
// predecessor; the result is frames.front()^dagger * transported.back().
HolonomyResult holonomy_from_frames(const std::vector<ComplexMatrix>& frames);

// gamma = 2 pi dE / Omega wrapped to (-pi, pi].
double berry_phase_from_shift(double delta_e, double omega);

// 2 cos(pi split / Omega).
double wilson_loop_from_split(double delta_e_split, double omega);

// Wraps an angle to (-pi, pi].
double wrap_phase(double x);

}  // namespace uqcs
