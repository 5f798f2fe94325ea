#include "uqcs/pipeline.hpp"

#include <algorithm>

#include "uqcs/error.hpp"
#include "uqcs/parallel.hpp"

namespace uqcs {

const Spectrum& UqcsOutcome::spectrum(const std::string& label) const {
  for (const auto& s : spectra) {
    if (s.label == label) return s;
  }
  throw InvalidArgument("no spectrum for observable '" + label + "'");
}

UqcsOutcome run_uqcs(const Generator& gen, const StateVector& psi, const std::vector<Observable>& observables,
                     const UqcsOptions& opt) {
  const auto id_it = std::find_if(observables.begin(), observables.end(), [](const Observable& o) { return o.label == "I"; });
  if (id_it == observables.end()) throw InvalidArgument("run_uqcs: the identity observable 'I' is required");
  const auto id = static_cast<std::size_t>(id_it - observables.begin());

  UqcsOutcome out;
  SampleGrid grid = sample_grid(gen, psi, observables, opt.window, opt.noise);
  out.raw_series = autocorrelation(grid, opt.window);
  if (opt.keep_grid) out.grid = std::move(grid);

  if (opt.ssa) {
    out.series = ssa_denoise_family(out.raw_series, id, *opt.ssa);
    out.ssa_rank = ssa_decompose(out.raw_series[id], *opt.ssa).rank;
  } else {
    out.series = out.raw_series;
  }
  for (const auto& s : out.series) out.spectra.push_back(windowed_fourier(s, opt.window));

  const Spectrum& si = out.spectra[id];
  out.peaks = opt.search ? find_peaks_in(si, opt.search->first, opt.search->second, opt.rel_threshold, opt.window.tau)
                         : find_peaks(si, opt.rel_threshold, opt.window.tau);
  out.dark_floor = dark_state_floor(opt.window, opt.noise.shots, opt.rel_threshold);

  for (const auto& p : out.peaks) {
    EigenstateEstimate e;
    e.energy = p.center;
    e.projection_weight = p.amplitude;
    if (p.amplitude >= out.dark_floor) {
      for (std::size_t o = 0; o < observables.size(); ++o) {
        e.observables[observables[o].label] = estimate_observable(out.spectra[o], si, p.center, out.dark_floor);
      }
    }
    out.estimates.push_back(std::move(e));
  }
  return out;
}

AutocorrSeries trace_series(const ComplexMatrix& h, const WindowParams& w, const NoiseModel& noise) {
  AutocorrSeries s;
  s.label = "trace";
  s.t = w.t_grid;
  s.c.resize(s.t.size());
  parallel_for(s.t.size(), [&](std::size_t k) {
    s.c[k] = trace_circuit_sample(h, s.t[k], noise, static_cast<std::uint64_t>(k));
  });
  return s;
}

}  // namespace uqcs
