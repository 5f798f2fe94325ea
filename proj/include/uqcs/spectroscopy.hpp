#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uqcs/linalg.hpp"
#include "uqcs/measurement.hpp"
#include "uqcs/window.hpp"

namespace uqcs {

struct AutocorrSeries {
  std::vector<double> t;
  std::vector<Complex> c;
  std::string label;
};

// Windowed transform on an omega grid. Keeps the windowed source terms so
// the transform can also be evaluated exactly off the grid.
struct Spectrum {
  std::vector<double> omega;
  std::vector<Complex> amplitude;
  std::string label;

  Complex at(double w) const;

  std::vector<double> src_t;
  std::vector<Complex> src_wc;  // weight_k * C(t_k)
};

struct Peak {
  double center = 0.0;
  double amplitude = 0.0;
  double width = 0.0;
  double uncertainty = 0.0;
};

struct EigenstateEstimate {
  double energy = 0.0;
  double projection_weight = 0.0;
  std::map<std::string, Complex> observables;
  std::optional<ComplexMatrix> density_matrix;
  std::optional<double> fidelity_vs_reference;
};

// C(t_k) = sum_j weight_j sample(eta_j, t_k), one series per observable.
std::vector<AutocorrSeries> autocorrelation(const SampleGrid& grid, const WindowParams& w);
AutocorrSeries autocorrelation(const SampleGrid& grid, const WindowParams& w, std::size_t observable);

Spectrum windowed_fourier(const AutocorrSeries& series, const WindowParams& w);

inline constexpr double kDefaultPeakThreshold = 0.02;

// Local maxima of Re C(omega) above rel_threshold * max, centers refined by a
// 3-point log-quadratic fit. Lines closer than about 2/tau merge into one
// peak whose uncertainty is raised to sqrt(width^2 - 1/tau^2). The
// uncertainty also covers the center shift expected from the off-line
// residual (noise floor) of the spectrum.
std::vector<Peak> find_peaks(const Spectrum& spec, double rel_threshold = kDefaultPeakThreshold,
                             std::optional<double> tau = {});

// Peaks restricted to [lo, hi] with the threshold taken relative to the
// maximum inside that range.
std::vector<Peak> find_peaks_in(const Spectrum& spec, double lo, double hi, double rel_threshold = kDefaultPeakThreshold,
                                std::optional<double> tau = {});

// max(3 sigma, rel_threshold) with sigma the shot-noise std of one spectrum value.
double dark_state_floor(const WindowParams& w, long shots, double rel_threshold = kDefaultPeakThreshold);

// C_O(E) / C_I(E). DarkStateError when Re C_I(E) < floor.
Complex estimate_observable(const Spectrum& spec_o, const Spectrum& spec_i, double energy, double floor);

// rho = (1/d) sum_P <P> P, projected to the nearest PSD unit-trace matrix.
// Needs all 4^n strings of length n.
ComplexMatrix tomography(const std::map<std::string, Complex>& pauli_expectations);

// All 4^n Pauli labels of length n, lexicographic in I, X, Y, Z.
std::vector<std::string> all_pauli_labels(int n_sites);

// (Tr sqrt(sqrt(rho0) rho sqrt(rho0)))^2.
double fidelity(const ComplexMatrix& rho0, const ComplexMatrix& rho);

}  // namespace uqcs
