#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uqcs/baselines.hpp"
#include "uqcs/hamiltonians.hpp"
#include "uqcs/measurement.hpp"

namespace uqcs::cli {

using Json = nlohmann::json;

inline const std::vector<std::string> kExperiments = {"spectrum",  "observable", "tomography",  "pt-scan",
                                                      "floquet",   "benchmark",  "denoise-demo"};

struct SystemConfig {
  std::string model;  // spin_chain | two_mode_nh | nqr
  SpinChainSpec chain;
  TwoModeNHSpec nh;
  NQRDriveSpec nqr;
  int substeps_per_unit_time = 0;  // nqr only; 0 = default
};

// One of: basis label ("01", "11111111"), basis index, or NQR doublet
// ("lower" / "upper", rotated by exp(-i theta S_y)).
struct StateConfig {
  std::optional<std::string> basis;
  std::optional<long> index;
  std::optional<std::string> nqr_doublet;
};

struct WindowConfig {
  std::optional<double> tau;
  std::optional<int> n_points;
  std::optional<double> eps1;
  std::optional<double> delta_e_min;
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  std::optional<double> omega_step;
};

struct SsaOptions {
  bool enabled = false;
  std::optional<int> embed_length;
  std::optional<int> rank;
  bool renormalize = false;
};

struct BenchmarkOptions {
  std::vector<double> eps_q_values{0.0};
  int n_bits = 11;
  long shots_per_round = 1000;
  double delta_t = 0.4;
  double spectrum_shift = 11.0;
  double trial_overlap = 0.9;
  QueryNoisePlacement placement = QueryNoisePlacement::per_round;
  std::optional<std::string> qetu_csv;
};

struct FloquetOptions {
  int harmonics = 10;
  int path_steps = 2000;
};

struct DemoOptions {
  double noise_sigma = 0.05;  // additive complex Gaussian on the raw series
};

struct RunConfig {
  std::string experiment;
  SystemConfig system;
  StateConfig initial_state;
  WindowConfig window;
  NoiseModel noise;
  std::vector<std::string> observables{"I"};
  SsaOptions ssa;
  double peak_threshold = 0.02;
  std::optional<std::pair<double, double>> search;
  std::optional<double> target_energy;
  std::vector<double> gain_values;
  BenchmarkOptions benchmark;
  FloquetOptions floquet;
  DemoOptions demo;
  bool write_samples = false;
};

// SchemaError on any violation (unknown keys, wrong types, out-of-range values).
RunConfig parse_config(const Json& j);
Json to_json(const RunConfig& cfg);

}  // namespace uqcs::cli
