#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uqcs/denoise.hpp"
#include "uqcs/dynamics.hpp"
#include "uqcs/measurement.hpp"
#include "uqcs/spectroscopy.hpp"

namespace uqcs {

struct UqcsOptions {
  WindowParams window;  // omega grid must be set
  NoiseModel noise;
  std::optional<SSAConfig> ssa;
  double rel_threshold = kDefaultPeakThreshold;
  std::optional<std::pair<double, double>> search;  // restrict peak search to [lo, hi]
  bool keep_grid = false;
};

struct UqcsOutcome {
  std::optional<SampleGrid> grid;
  std::vector<AutocorrSeries> raw_series;
  std::vector<AutocorrSeries> series;  // after SSA when enabled
  std::vector<Spectrum> spectra;
  std::vector<Peak> peaks;             // identity spectrum
  std::vector<EigenstateEstimate> estimates;  // one per peak; observables empty for dark peaks
  int ssa_rank = 0;
  double dark_floor = 0.0;

  const Spectrum& spectrum(const std::string& label) const;
};

// Full chain: sample grid, windowed diagonal sums, optional SSA, windowed
// transform, identity peaks, and observable ratios at each peak. One of the
// observables must be labelled "I".
UqcsOutcome run_uqcs(const Generator& gen, const StateVector& psi, const std::vector<Observable>& observables,
                     const UqcsOptions& opt);

// Trace-circuit series A(t_k) = Tr(exp(-i H t_k)) / d on the window grid.
AutocorrSeries trace_series(const ComplexMatrix& h, const WindowParams& w, const NoiseModel& noise);

}  // namespace uqcs
