#include "uqcs/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "uqcs/baselines.hpp"
#include "uqcs/cli/output.hpp"
#include "uqcs/error.hpp"
#include "uqcs/floquet.hpp"
#include "uqcs/pipeline.hpp"

namespace uqcs::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Observable> make_observables(const std::vector<std::string>& labels, Eigen::Index dim) {
  std::vector<Observable> out;
  for (const auto& l : labels) {
    try {
      out.push_back(make_observable(l, dim));
    } catch (const DimensionError& e) {
      throw SchemaError(std::string("observables: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw SchemaError(std::string("observables: ") + e.what());
    }
  }
  return out;
}

std::optional<SSAConfig> ssa_config(const RunConfig& cfg) {
  if (!cfg.ssa.enabled) return std::nullopt;
  return SSAConfig{cfg.ssa.embed_length, cfg.ssa.rank, cfg.ssa.renormalize};
}

UqcsOptions uqcs_options(const RunConfig& cfg, const WindowParams& w) {
  UqcsOptions opt;
  opt.window = w;
  opt.noise = cfg.noise;
  opt.ssa = ssa_config(cfg);
  opt.rel_threshold = cfg.peak_threshold;
  opt.search = cfg.search;
  opt.keep_grid = cfg.write_samples;
  return opt;
}

const Peak* strongest(const std::vector<Peak>& peaks, double lo = -std::numeric_limits<double>::infinity(),
                      double hi = std::numeric_limits<double>::infinity()) {
  const Peak* best = nullptr;
  for (const auto& p : peaks) {
    if (p.center < lo || p.center >= hi) continue;
    if (!best || p.amplitude > best->amplitude) best = &p;
  }
  return best;
}

Json window_json(const WindowParams& w) {
  Json j{{"tau_time", w.tau}, {"n_points", w.n_points}, {"dt_time", w.dt}};
  if (!w.omega_grid.empty()) {
    j["omega_min_energy"] = w.omega_grid.front();
    j["omega_max_energy"] = w.omega_grid.back();
    j["omega_points"] = w.omega_grid.size();
  }
  j["warning"] = w.warning;
  return j;
}

Json estimates_json(const UqcsOutcome& out) {
  auto arr = Json::array();
  for (std::size_t i = 0; i < out.estimates.size(); ++i) {
    const auto& e = out.estimates[i];
    Json j{{"energy", e.energy}, {"projection_weight", e.projection_weight}, {"uncertainty", out.peaks[i].uncertainty}};
    j["dark"] = e.observables.empty();
    Json obs = Json::object();
    for (const auto& [label, v] : e.observables) obs[label] = complex_json(v);
    j["observables"] = obs;
    arr.push_back(j);
  }
  return arr;
}

void add_uqcs_files(Artifacts& files, const UqcsOutcome& out) {
  for (const auto& s : out.spectra) files["spectrum_" + s.label + ".csv"] = spectrum_csv(s);
  files["peaks.json"] = dump(peaks_json(out.peaks));
  if (out.grid) files["samples.csv"] = samples_csv(*out.grid);
}

std::string gain_tag(double g) { return fmt::format("{:g}", g); }

// Reference state: psi projected onto the eigenspace of h nearest e.
std::optional<StateVector> eigenspace_component(const Eigen::SelfAdjointEigenSolver<ComplexMatrix>& es,
                                                const StateVector& psi, double e) {
  const auto& vals = es.eigenvalues();
  Eigen::Index nearest = 0;
  for (Eigen::Index i = 1; i < vals.size(); ++i) {
    if (std::abs(vals[i] - e) < std::abs(vals[nearest] - e)) nearest = i;
  }
  StateVector phi = StateVector::Zero(psi.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i] - vals[nearest]) < 1e-8) phi += es.eigenvectors().col(i) * es.eigenvectors().col(i).dot(psi);
  }
  if (phi.norm() < 1e-12) return std::nullopt;
  return phi.normalized();
}

Artifacts run_spectrum(const RunConfig& cfg, bool observable_mode) {
  const Generator gen = make_generator(cfg.system);
  const WindowParams w = resolve_window(cfg, spectral_bound(cfg.system));
  const auto obs = make_observables(cfg.observables, gen.dim());
  const UqcsOutcome out = run_uqcs(gen, make_initial_state(cfg), obs, uqcs_options(cfg, w));

  Artifacts files;
  files["window.json"] = dump(window_json(w));
  add_uqcs_files(files, out);
  if (!observable_mode) {
    files["estimates.json"] = dump(estimates_json(out));
    return files;
  }

  Json result = Json::array();
  if (cfg.target_energy) {
    auto it = std::min_element(out.peaks.begin(), out.peaks.end(), [&](const Peak& a, const Peak& b) {
      return std::abs(a.center - *cfg.target_energy) < std::abs(b.center - *cfg.target_energy);
    });
    const Spectrum& si = out.spectrum("I");
    // Without an identity peak within two widths the target itself is probed.
    double energy = *cfg.target_energy;
    if (it != out.peaks.end() && std::abs(it->center - energy) <= 2.0 * it->width) energy = it->center;
    Json j{{"energy", energy}, {"projection_weight", si.at(energy).real()}};
    Json values = Json::object();
    for (const auto& o : obs) values[o.label] = complex_json(estimate_observable(out.spectrum(o.label), si, energy, out.dark_floor));
    j["observables"] = values;
    result.push_back(j);
  } else {
    result = estimates_json(out);
  }
  files["observables.json"] = dump(result);
  return files;
}

Artifacts run_tomography(const RunConfig& cfg) {
  if (cfg.system.model != "spin_chain") throw SchemaError("tomography requires a spin_chain system");
  const int n = cfg.system.chain.n_sites;
  if (n > 4) throw SchemaError("tomography supports at most 4 sites");
  const ComplexMatrix h = system_matrix(cfg.system);
  const Generator gen = Generator::fixed(h);
  const WindowParams w = resolve_window(cfg, spectral_bound(cfg.system));
  const std::string all_i(static_cast<std::size_t>(n), 'I');
  std::vector<std::string> labels{"I"};
  for (const auto& l : all_pauli_labels(n)) {
    if (l != all_i) labels.push_back(l);
  }
  const StateVector psi = make_initial_state(cfg);
  UqcsOptions opt = uqcs_options(cfg, w);
  opt.keep_grid = false;
  const UqcsOutcome out = run_uqcs(gen, psi, make_observables(labels, gen.dim()), opt);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  Json arr = Json::array();
  for (const auto& e : out.estimates) {
    if (e.observables.empty()) continue;
    std::map<std::string, Complex> expectations;
    for (const auto& [label, v] : e.observables) expectations[label == "I" ? all_i : label] = v;
    const ComplexMatrix rho = tomography(expectations);
    Json j{{"energy", e.energy}, {"projection_weight", e.projection_weight}, {"density_matrix", matrix_json(rho)}};
    if (auto phi = eigenspace_component(es, psi, e.energy)) {
      const ComplexMatrix rho0 = (*phi) * phi->adjoint();
      j["fidelity"] = fidelity(rho0, rho);
    } else {
      j["fidelity"] = nullptr;
    }
    arr.push_back(j);
  }
  Artifacts files;
  files["window.json"] = dump(window_json(w));
  files["spectrum_I.csv"] = spectrum_csv(out.spectrum("I"));
  files["peaks.json"] = dump(peaks_json(out.peaks));
  files["tomography.json"] = dump(arr);
  return files;
}

Artifacts run_pt_scan(const RunConfig& cfg) {
  if (cfg.system.model != "two_mode_nh") throw SchemaError("pt-scan requires a two_mode_nh system");
  if (cfg.gain_values.empty()) throw SchemaError("pt-scan requires pt_scan.gain_values_energy");
  Artifacts files;
  Json scan = Json::array();
  for (double g : cfg.gain_values) {
    SystemConfig sys = cfg.system;
    sys.nh.g1 = g;
    sys.nh.g2 = g;
    const ComplexMatrix h = build_two_mode_nh(sys.nh);
    const WindowParams w = resolve_window(cfg, spectral_bound(sys));
    AutocorrSeries series = trace_series(h, w, cfg.noise);
    if (auto ssa = ssa_config(cfg)) series = ssa_denoise(series, *ssa);
    Spectrum spec = windowed_fourier(series, w);
    spec.label = "trace";
    const auto peaks = cfg.search ? find_peaks_in(spec, cfg.search->first, cfg.search->second, cfg.peak_threshold, w.tau)
                                  : find_peaks(spec, cfg.peak_threshold, w.tau);
    const std::string tag = gain_tag(g);
    files["spectrum_g" + tag + ".csv"] = spectrum_csv(spec);
    files["peaks_g" + tag + ".json"] = dump(peaks_json(peaks));

    const auto dec = eig_general(h);
    Json eigs = Json::array();
    for (Eigen::Index i = 0; i < dec.values.size(); ++i) eigs.push_back(complex_json(dec.values[i]));
    scan.push_back({{"gain_energy", g},
                    {"n_points", w.n_points},
                    {"peaks", peaks_json(peaks)},
                    {"eigenvalues", eigs},
                    {"exceptional", dec.defective}});
  }
  files["pt_scan.json"] = dump(scan);
  return files;
}

Artifacts run_floquet(const RunConfig& cfg) {
  if (cfg.system.model != "nqr") throw SchemaError("floquet requires an nqr system");
  const NQRDriveSpec& spec = cfg.system.nqr;
  if (!(spec.Omega > 0.0)) throw SchemaError("floquet requires omega_drive > 0");
  const Generator gen = make_generator(cfg.system);
  const WindowParams w = resolve_window(cfg, spectral_bound(cfg.system));
  const StateVector psi = make_initial_state(cfg);
  const UqcsOutcome out = run_uqcs(gen, psi, make_observables(cfg.observables, gen.dim()), uqcs_options(cfg, w));

  const FourierHamiltonian fh = fourier_components(spec, 2);
  const std::vector<double> levels = distinct_levels(nqr_hamiltonian_at(spec, 0.0), 1e-8);
  const auto quasi = quasi_energies(build_extended(fh, cfg.floquet.harmonics), levels, &psi);

  const DoubletLevel level = cfg.initial_state.nqr_doublet && *cfg.initial_state.nqr_doublet == "upper"
                                 ? DoubletLevel::upper
                                 : DoubletLevel::lower;
  const double es = levels[level == DoubletLevel::upper && levels.size() > 1 ? 1 : 0];
  // Transform frequencies are only defined modulo 2 pi / dt.
  const double alias = 2.0 * std::numbers::pi / w.dt;
  const double es_folded = es - alias * std::round(es / alias);
  const double lo = es_folded - 0.5 * spec.Omega;
  const double hi = es_folded + 0.5 * spec.Omega;

  Json uqcs_j;
  uqcs_j["static_level_energy"] = es;
  uqcs_j["band0_window_energy"] = {lo, hi};
  std::vector<Peak> band0;
  for (const auto& p : out.peaks) {
    if (p.center >= lo && p.center < hi) band0.push_back(p);
  }
  std::sort(band0.begin(), band0.end(), [](const Peak& a, const Peak& b) { return a.amplitude > b.amplitude; });
  if (!band0.empty()) {
    uqcs_j["energy_shift"] = band0[0].center - es_folded;
    uqcs_j["berry_phase_rad"] = berry_phase_from_shift(band0[0].center - es_folded, spec.Omega);
  } else {
    uqcs_j["energy_shift"] = nullptr;
    uqcs_j["berry_phase_rad"] = nullptr;
  }
  if (band0.size() >= 2) {
    const double split = std::abs(band0[0].center - band0[1].center);
    uqcs_j["split_energy"] = split;
    uqcs_j["wilson_trace"] = wilson_loop_from_split(split, spec.Omega);
  } else {
    uqcs_j["split_energy"] = nullptr;
    uqcs_j["wilson_trace"] = nullptr;
  }

  const HolonomyResult hol = wz_holonomy(spec, level, cfg.floquet.path_steps);
  Json oracle{{"wilson_trace", complex_json(hol.wilson_trace)},
              {"eigenphases_rad", hol.eigenphases},
              {"wz_matrix", matrix_json(hol.wz_matrix)}};
  oracle["berry_phase_rad"] = hol.berry_phase ? Json(*hol.berry_phase) : Json(nullptr);

  Artifacts files;
  files["window.json"] = dump(window_json(w));
  add_uqcs_files(files, out);
  files["estimates.json"] = dump(estimates_json(out));
  files["quasi_energies.csv"] = quasi_energy_csv(quasi);
  files["holonomy.json"] = dump(Json{{"level", level == DoubletLevel::upper ? "upper" : "lower"},
                                     {"uqcs", uqcs_j},
                                     {"adiabatic", oracle}});
  return files;
}

std::string read_qetu_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("benchmark.qetu_csv: cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "method,eps_q,query_depth,energy_estimate,error") {
    throw SchemaError("benchmark.qetu_csv: header must be method,eps_q,query_depth,energy_estimate,error");
  }
  std::string rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (std::count(line.begin(), line.end(), ',') != 4) throw SchemaError("benchmark.qetu_csv: malformed row '" + line + "'");
    rows += line + "\n";
  }
  return rows;
}

Artifacts run_benchmark(const RunConfig& cfg) {
  const ComplexMatrix h = system_matrix(cfg.system);
  if (cfg.system.model == "nqr" || !is_hermitian(h, 1e-10)) throw SchemaError("benchmark requires a static Hermitian system");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const double e0 = es.eigenvalues()[0];
  const StateVector target = es.eigenvectors().col(0);
  const StateVector psi = trial_state(target, make_initial_state(cfg), cfg.benchmark.trial_overlap);
  const Generator gen = Generator::fixed(h);
  const WindowParams w = resolve_window(cfg, spectral_bound(cfg.system));
  const auto obs = make_observables({"I"}, gen.dim());
  const auto& b = cfg.benchmark;
  const double shifted = e0 * b.delta_t + b.spectrum_shift;
  if (!(shifted > 0.0 && shifted < 2.0 * std::numbers::pi)) {
    throw SchemaError(fmt::format("benchmark: ground phase E0 * delta_t + spectrum_shift = {:.6g} lies outside (0, 2 pi)",
                                  shifted));
  }

  std::string csv = "method,eps_q,query_depth,energy_estimate,error\n";
  Json summary = Json::array();
  for (double eps : b.eps_q_values) {
    UqcsOptions opt = uqcs_options(cfg, w);
    opt.keep_grid = false;
    opt.noise.query_error = eps;
    const UqcsOutcome out = run_uqcs(gen, psi, obs, opt);
    const Peak* p = strongest(out.peaks);
    const double eu = p ? p->center : kNaN;
    csv += fmt::format("uqcs,{:.12g},{},{:.12g},{:.12g}\n", eps, w.n_points, eu, std::abs(eu - e0));

    IQPEConfig ic;
    ic.n_bits = b.n_bits;
    ic.shots_per_round = b.shots_per_round;
    ic.delta_t = b.delta_t;
    ic.spectrum_shift = b.spectrum_shift;
    ic.query_error = eps;
    ic.placement = b.placement;
    ic.seed = cfg.noise.seed;
    const IQPEResult r = iqpe_estimate(h, psi, ic);
    csv += fmt::format("iqpe,{:.12g},{},{:.12g},{:.12g}\n", eps, r.query_depth, r.energy, std::abs(r.energy - e0));
    summary.push_back({{"eps_q", eps}, {"uqcs_energy", p ? Json(eu) : Json(nullptr)}, {"iqpe_energy", r.energy},
                       {"iqpe_bits", r.bits}, {"iqpe_reliable", r.reliable}});
  }
  if (b.qetu_csv) csv += read_qetu_rows(*b.qetu_csv);

  Artifacts files;
  files["window.json"] = dump(window_json(w));
  files["benchmark.csv"] = csv;
  files["benchmark.json"] = dump(Json{{"exact_ground_energy", e0}, {"runs", summary}});
  return files;
}

double rms_diff(const AutocorrSeries& a, const AutocorrSeries& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) s += std::norm(a.c[i] - b.c[i]);
  return std::sqrt(s / static_cast<double>(a.c.size()));
}

Artifacts run_denoise_demo(const RunConfig& cfg) {
  const Generator gen = make_generator(cfg.system);
  const WindowParams w = resolve_window(cfg, spectral_bound(cfg.system));
  UqcsOptions opt = uqcs_options(cfg, w);
  opt.ssa.reset();
  opt.keep_grid = false;
  const UqcsOutcome out = run_uqcs(gen, make_initial_state(cfg), make_observables({"I"}, gen.dim()), opt);
  const AutocorrSeries& raw = out.raw_series.front();

  AutocorrSeries noisy = raw;
  Rng rng = make_stream(cfg.noise.seed, {static_cast<std::uint64_t>(StreamPurpose::synthetic)});
  const double var = cfg.demo.noise_sigma * cfg.demo.noise_sigma;
  for (auto& c : noisy.c) c += complex_normal(rng, var);

  const SSAResult den = ssa_decompose(noisy, SSAConfig{cfg.ssa.embed_length, cfg.ssa.rank, cfg.ssa.renormalize});

  Artifacts files;
  files["window.json"] = dump(window_json(w));
  files["series_raw.csv"] = series_csv(raw);
  files["series_noisy.csv"] = series_csv(noisy);
  files["series_denoised.csv"] = series_csv(den.series);
  files["spectrum_raw.csv"] = spectrum_csv(windowed_fourier(raw, w));
  files["spectrum_noisy.csv"] = spectrum_csv(windowed_fourier(noisy, w));
  files["spectrum_denoised.csv"] = spectrum_csv(windowed_fourier(den.series, w));
  std::vector<double> sv(den.singular_values.data(), den.singular_values.data() + den.singular_values.size());
  files["denoise.json"] = dump(Json{{"embed_length", den.embed_length},
                                    {"rank", den.rank},
                                    {"scale", den.scale},
                                    {"singular_values", sv},
                                    {"rms_error_noisy", rms_diff(noisy, raw)},
                                    {"rms_error_denoised", rms_diff(den.series, raw)}});
  return files;
}

}  // namespace

Generator make_generator(const SystemConfig& sys) {
  if (sys.model == "nqr") return Generator::driven_nqr(sys.nqr, sys.substeps_per_unit_time);
  return Generator::fixed(system_matrix(sys));
}

ComplexMatrix system_matrix(const SystemConfig& sys) {
  if (sys.model == "spin_chain") return build_spin_chain(sys.chain);
  if (sys.model == "two_mode_nh") return build_two_mode_nh(sys.nh);
  if (sys.model == "nqr") return nqr_hamiltonian_at(sys.nqr, 0.0);
  throw SchemaError("unknown system model '" + sys.model + "'");
}

double spectral_bound(const SystemConfig& sys) {
  if (sys.model == "spin_chain") return spectral_radius_bound(sys.chain);
  if (sys.model == "nqr") return 2.25 * sys.nqr.B * sys.nqr.B;
  Eigen::JacobiSVD<ComplexMatrix> sv(system_matrix(sys));
  return sv.singularValues()[0];
}

StateVector make_initial_state(const RunConfig& cfg) {
  const Eigen::Index dim = system_matrix(cfg.system).rows();
  const StateConfig& s = cfg.initial_state;
  StateVector psi = StateVector::Zero(dim);
  if (s.nqr_doublet) {
    if (cfg.system.model != "nqr") throw SchemaError("initial_state.nqr_doublet requires an nqr system");
    psi[*s.nqr_doublet == "upper" ? 3 : 1] = 1.0;
    return matexp(spin32().y, Complex(0.0, -cfg.system.nqr.theta)) * psi;
  }
  if (s.basis) {
    const std::string& b = *s.basis;
    if (b.empty() || b.size() > 12 || (Eigen::Index{1} << b.size()) != dim) {
      throw SchemaError(fmt::format("initial_state.basis '{}' does not match dimension {}", b, dim));
    }
    Eigen::Index idx = 0;
    for (char c : b) {
      if (c != '0' && c != '1') throw SchemaError("initial_state.basis must contain only 0 and 1");
      idx = 2 * idx + (c - '0');
    }
    psi[idx] = 1.0;
    return psi;
  }
  const long idx = s.index.value_or(0);
  if (idx < 0 || idx >= dim) throw SchemaError(fmt::format("initial_state.index {} out of range for dimension {}", idx, dim));
  psi[idx] = 1.0;
  return psi;
}

WindowParams resolve_window(const RunConfig& cfg, double r_bound) {
  const WindowConfig& wc = cfg.window;
  WindowParams w;
  try {
    if (wc.n_points) {
      if (!wc.tau) throw SchemaError("window.n_points requires window.tau_time");
      w = make_window(*wc.tau, *wc.n_points);
    } else {
      w = choose_grid(r_bound, wc.tau, wc.eps1, wc.delta_e_min);
    }
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("window: ") + e.what());
  }
  const double step = wc.omega_step.value_or(0.05 / w.tau);
  if (wc.omega_min) {
    set_omega_grid(w, *wc.omega_min, *wc.omega_max, step);
  } else if (cfg.experiment == "floquet") {
    const double nyq = std::numbers::pi / w.dt;
    set_omega_grid(w, -nyq, nyq, step);
  } else {
    set_omega_grid(w, -1.2 * r_bound, 1.2 * r_bound, step);
  }
  return w;
}

Artifacts run_experiment(const RunConfig& cfg) {
  if (cfg.experiment == "spectrum") return run_spectrum(cfg, false);
  if (cfg.experiment == "observable") return run_spectrum(cfg, true);
  if (cfg.experiment == "tomography") return run_tomography(cfg);
  if (cfg.experiment == "pt-scan") return run_pt_scan(cfg);
  if (cfg.experiment == "floquet") return run_floquet(cfg);
  if (cfg.experiment == "benchmark") return run_benchmark(cfg);
  if (cfg.experiment == "denoise-demo") return run_denoise_demo(cfg);
  throw SchemaError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace uqcs::cli
