#include "uqcs/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "uqcs/error.hpp"

namespace uqcs::cli {

namespace {

// Typed access to one JSON object; rejects keys that were never read.
class Section {
 public:
  Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  double number(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_number()) fail(key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key + " must be finite");
    return x;
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }
  std::optional<double> opt_number(const std::string& key) {
    return has(key) ? std::optional<double>(number(key)) : std::nullopt;
  }

  long integer(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_number_integer()) fail(key + " must be an integer");
    return v.get<long>();
  }
  long integer(const std::string& key, long fallback) { return has(key) ? integer(key) : fallback; }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_boolean()) fail(key + " must be a boolean");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_string()) fail(key + " must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_array()) fail(key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(key + " must be an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_array()) fail(key + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& x : v) {
      if (!x.is_string()) fail(key + " must be an array of strings");
      out.push_back(x.get<std::string>());
    }
    return out;
  }

  Section child(const std::string& key) { return Section(at(key), path_ + "." + key); }
  const Json& raw(const std::string& key) { return at(key); }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) fail("unknown key '" + k + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw SchemaError(path_ + ": " + what); }

 private:
  const Json& at(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) fail("missing key '" + key + "'");
    return j_.at(key);
  }

  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::array<double, 3> triple(Section& s, const std::string& key) {
  auto v = s.numbers(key);
  if (v.size() != 3) s.fail(key + " must have three components (x, y, z)");
  return {v[0], v[1], v[2]};
}

SystemConfig parse_system(Section s) {
  SystemConfig sys;
  sys.model = s.string("model");
  if (sys.model == "spin_chain") {
    sys.chain.n_sites = static_cast<int>(s.integer("n_sites"));
    sys.chain.J = triple(s, "coupling_energy");
    sys.chain.h = triple(s, "field_energy");
    sys.chain.periodic = s.boolean("periodic", false);
    if (sys.chain.n_sites < 2 || sys.chain.n_sites > 12) s.fail("n_sites must lie in [2, 12]");
  } else if (sys.model == "two_mode_nh") {
    sys.nh.delta1 = s.number("detuning1_energy");
    sys.nh.delta2 = s.number("detuning2_energy");
    sys.nh.g1 = s.number("loss1_energy");
    sys.nh.g2 = s.number("gain2_energy");
    sys.nh.kappa = s.number("coupling_energy");
    if (sys.nh.kappa < 0.0) s.fail("coupling_energy must be >= 0");
  } else if (sys.model == "nqr") {
    sys.nqr.B = s.number("field_magnitude");
    sys.nqr.theta = s.number("zenith_angle_rad");
    sys.nqr.Omega = s.number("omega_drive");
    sys.substeps_per_unit_time = static_cast<int>(s.integer("substeps_per_unit_time", 0));
    if (!(sys.nqr.B > 0.0)) s.fail("field_magnitude must be > 0");
    if (sys.nqr.theta < 0.0 || sys.nqr.theta > 3.14159265358979323846) s.fail("zenith_angle_rad must lie in [0, pi]");
    if (sys.nqr.Omega < 0.0) s.fail("omega_drive must be >= 0");
    if (sys.substeps_per_unit_time != 0 && sys.substeps_per_unit_time < 100) s.fail("substeps_per_unit_time must be >= 100");
  } else {
    s.fail("model must be one of spin_chain, two_mode_nh, nqr");
  }
  s.finish();
  return sys;
}

Json pair_json(const std::pair<double, double>& p) { return Json::array({p.first, p.second}); }

}  // namespace

RunConfig parse_config(const Json& j) {
  Section root(j, "config");
  RunConfig cfg;
  cfg.experiment = root.string("experiment");
  if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) == kExperiments.end()) {
    root.fail("unknown experiment '" + cfg.experiment + "'");
  }
  cfg.system = parse_system(root.child("system"));

  if (root.has("initial_state")) {
    Section s = root.child("initial_state");
    int given = 0;
    if (s.has("basis")) { cfg.initial_state.basis = s.string("basis"); ++given; }
    if (s.has("index")) { cfg.initial_state.index = s.integer("index"); ++given; }
    if (s.has("nqr_doublet")) {
      cfg.initial_state.nqr_doublet = s.string("nqr_doublet");
      if (*cfg.initial_state.nqr_doublet != "lower" && *cfg.initial_state.nqr_doublet != "upper") {
        s.fail("nqr_doublet must be 'lower' or 'upper'");
      }
      ++given;
    }
    if (given != 1) s.fail("exactly one of basis, index, nqr_doublet is required");
    s.finish();
  }

  if (root.has("window")) {
    Section s = root.child("window");
    cfg.window.tau = s.opt_number("tau_time");
    if (s.has("n_points")) cfg.window.n_points = static_cast<int>(s.integer("n_points"));
    cfg.window.eps1 = s.opt_number("eps1");
    cfg.window.delta_e_min = s.opt_number("delta_e_min_energy");
    cfg.window.omega_min = s.opt_number("omega_min_energy");
    cfg.window.omega_max = s.opt_number("omega_max_energy");
    cfg.window.omega_step = s.opt_number("omega_step_energy");
    if (cfg.window.tau && !(*cfg.window.tau > 0.0)) s.fail("tau_time must be > 0");
    if (cfg.window.n_points && (*cfg.window.n_points < 8 || *cfg.window.n_points % 2 != 0)) {
      s.fail("n_points must be even and >= 8");
    }
    if (cfg.window.eps1 && !(*cfg.window.eps1 > 0.0 && *cfg.window.eps1 < 1.0)) s.fail("eps1 must lie in (0, 1)");
    if (cfg.window.delta_e_min && !(*cfg.window.delta_e_min > 0.0)) s.fail("delta_e_min_energy must be > 0");
    if (cfg.window.omega_step && !(*cfg.window.omega_step > 0.0)) s.fail("omega_step_energy must be > 0");
    if (cfg.window.omega_min.has_value() != cfg.window.omega_max.has_value()) {
      s.fail("omega_min_energy and omega_max_energy must be given together");
    }
    if (cfg.window.omega_min && !(*cfg.window.omega_max > *cfg.window.omega_min)) {
      s.fail("omega_max_energy must exceed omega_min_energy");
    }
    s.finish();
  }
  if (!cfg.window.tau && !(cfg.window.eps1 && cfg.window.delta_e_min)) {
    root.fail("window needs tau_time, or eps1 together with delta_e_min_energy");
  }

  if (root.has("noise")) {
    Section s = root.child("noise");
    cfg.noise.gate_error = s.number("gate_error", 0.0);
    cfg.noise.query_error = s.number("query_error", 0.0);
    if (s.has("shots")) {
      const Json& v = s.raw("shots");
      if (v.is_string() && v.get<std::string>() == "ideal") {
        cfg.noise.shots = 0;
      } else if (v.is_number_integer() && v.get<long>() >= 1) {
        cfg.noise.shots = v.get<long>();
      } else {
        s.fail("shots must be a positive integer or \"ideal\"");
      }
    }
    if (s.has("seed")) {
      const Json& v = s.raw("seed");
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) s.fail("seed must be a non-negative integer");
      cfg.noise.seed = v.get<std::uint64_t>();
    }
    if (cfg.noise.gate_error < 0.0 || cfg.noise.query_error < 0.0) s.fail("error rates must be >= 0");
    s.finish();
  }

  if (root.has("observables")) {
    cfg.observables = root.strings("observables");
    if (std::find(cfg.observables.begin(), cfg.observables.end(), "I") == cfg.observables.end()) {
      cfg.observables.insert(cfg.observables.begin(), "I");
    }
  }

  if (root.has("ssa")) {
    Section s = root.child("ssa");
    cfg.ssa.enabled = s.boolean("enabled", true);
    if (s.has("embed_length")) cfg.ssa.embed_length = static_cast<int>(s.integer("embed_length"));
    if (s.has("rank")) {
      const Json& v = s.raw("rank");
      if (v.is_string() && v.get<std::string>() == "auto") {
        cfg.ssa.rank.reset();
      } else if (v.is_number_integer() && v.get<long>() >= 1) {
        cfg.ssa.rank = static_cast<int>(v.get<long>());
      } else {
        s.fail("rank must be a positive integer or \"auto\"");
      }
    }
    cfg.ssa.renormalize = s.boolean("renormalize", false);
    if (cfg.ssa.embed_length && *cfg.ssa.embed_length < 2) s.fail("embed_length must be >= 2");
    s.finish();
  }

  cfg.peak_threshold = root.number("peak_threshold", 0.02);
  if (!(cfg.peak_threshold > 0.0 && cfg.peak_threshold < 1.0)) root.fail("peak_threshold must lie in (0, 1)");
  if (root.has("search_window_energy")) {
    auto v = root.numbers("search_window_energy");
    if (v.size() != 2 || !(v[1] > v[0])) root.fail("search_window_energy must be [lo, hi] with lo < hi");
    cfg.search = std::make_pair(v[0], v[1]);
  }
  cfg.target_energy = root.opt_number("target_energy");
  cfg.write_samples = root.boolean("write_samples", false);

  if (root.has("pt_scan")) {
    Section s = root.child("pt_scan");
    cfg.gain_values = s.numbers("gain_values_energy");
    if (cfg.gain_values.empty()) s.fail("gain_values_energy must not be empty");
    s.finish();
  }
  if (root.has("benchmark")) {
    Section s = root.child("benchmark");
    auto& b = cfg.benchmark;
    if (s.has("eps_q_values")) b.eps_q_values = s.numbers("eps_q_values");
    b.n_bits = static_cast<int>(s.integer("n_bits", b.n_bits));
    b.shots_per_round = s.integer("shots_per_round", b.shots_per_round);
    b.delta_t = s.number("delta_t_time", b.delta_t);
    b.spectrum_shift = s.number("spectrum_shift", b.spectrum_shift);
    b.trial_overlap = s.number("trial_overlap", b.trial_overlap);
    if (s.has("noise_placement")) {
      const auto p = s.string("noise_placement");
      if (p == "per_round") b.placement = QueryNoisePlacement::per_round;
      else if (p == "per_application") b.placement = QueryNoisePlacement::per_application;
      else s.fail("noise_placement must be per_round or per_application");
    }
    if (s.has("qetu_csv")) b.qetu_csv = s.string("qetu_csv");
    if (b.eps_q_values.empty()) s.fail("eps_q_values must not be empty");
    for (double e : b.eps_q_values) {
      if (!(e >= 0.0)) s.fail("eps_q_values must be >= 0");
    }
    if (b.n_bits < 1 || b.n_bits > 20) s.fail("n_bits must lie in [1, 20]");
    if (b.shots_per_round < 0) s.fail("shots_per_round must be >= 0");
    if (!(b.delta_t > 0.0)) s.fail("delta_t_time must be > 0");
    if (!(b.trial_overlap > 0.0 && b.trial_overlap <= 1.0)) s.fail("trial_overlap must lie in (0, 1]");
    s.finish();
  }
  if (root.has("floquet")) {
    Section s = root.child("floquet");
    cfg.floquet.harmonics = static_cast<int>(s.integer("harmonics", cfg.floquet.harmonics));
    cfg.floquet.path_steps = static_cast<int>(s.integer("path_steps", cfg.floquet.path_steps));
    if (cfg.floquet.harmonics < 1 || cfg.floquet.harmonics > 200) s.fail("harmonics must lie in [1, 200]");
    if (cfg.floquet.path_steps < 100) s.fail("path_steps must be >= 100");
    s.finish();
  }
  if (root.has("denoise_demo")) {
    Section s = root.child("denoise_demo");
    cfg.demo.noise_sigma = s.number("noise_sigma", cfg.demo.noise_sigma);
    if (cfg.demo.noise_sigma < 0.0) s.fail("noise_sigma must be >= 0");
    s.finish();
  }
  root.finish();
  return cfg;
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["experiment"] = cfg.experiment;
  Json sys;
  sys["model"] = cfg.system.model;
  if (cfg.system.model == "spin_chain") {
    sys["n_sites"] = cfg.system.chain.n_sites;
    sys["coupling_energy"] = cfg.system.chain.J;
    sys["field_energy"] = cfg.system.chain.h;
    sys["periodic"] = cfg.system.chain.periodic;
  } else if (cfg.system.model == "two_mode_nh") {
    sys["detuning1_energy"] = cfg.system.nh.delta1;
    sys["detuning2_energy"] = cfg.system.nh.delta2;
    sys["loss1_energy"] = cfg.system.nh.g1;
    sys["gain2_energy"] = cfg.system.nh.g2;
    sys["coupling_energy"] = cfg.system.nh.kappa;
  } else {
    sys["field_magnitude"] = cfg.system.nqr.B;
    sys["zenith_angle_rad"] = cfg.system.nqr.theta;
    sys["omega_drive"] = cfg.system.nqr.Omega;
    sys["substeps_per_unit_time"] = cfg.system.substeps_per_unit_time;
  }
  j["system"] = sys;

  Json st = Json::object();
  if (cfg.initial_state.basis) st["basis"] = *cfg.initial_state.basis;
  if (cfg.initial_state.index) st["index"] = *cfg.initial_state.index;
  if (cfg.initial_state.nqr_doublet) st["nqr_doublet"] = *cfg.initial_state.nqr_doublet;
  if (!st.empty()) j["initial_state"] = st;

  Json w = Json::object();
  if (cfg.window.tau) w["tau_time"] = *cfg.window.tau;
  if (cfg.window.n_points) w["n_points"] = *cfg.window.n_points;
  if (cfg.window.eps1) w["eps1"] = *cfg.window.eps1;
  if (cfg.window.delta_e_min) w["delta_e_min_energy"] = *cfg.window.delta_e_min;
  if (cfg.window.omega_min) w["omega_min_energy"] = *cfg.window.omega_min;
  if (cfg.window.omega_max) w["omega_max_energy"] = *cfg.window.omega_max;
  if (cfg.window.omega_step) w["omega_step_energy"] = *cfg.window.omega_step;
  j["window"] = w;

  Json n;
  n["gate_error"] = cfg.noise.gate_error;
  n["query_error"] = cfg.noise.query_error;
  if (cfg.noise.ideal_shots()) n["shots"] = "ideal";
  else n["shots"] = cfg.noise.shots;
  n["seed"] = cfg.noise.seed;
  j["noise"] = n;

  j["observables"] = cfg.observables;
  Json ssa;
  ssa["enabled"] = cfg.ssa.enabled;
  if (cfg.ssa.embed_length) ssa["embed_length"] = *cfg.ssa.embed_length;
  if (cfg.ssa.rank) ssa["rank"] = *cfg.ssa.rank;
  else ssa["rank"] = "auto";
  ssa["renormalize"] = cfg.ssa.renormalize;
  j["ssa"] = ssa;

  j["peak_threshold"] = cfg.peak_threshold;
  if (cfg.search) j["search_window_energy"] = pair_json(*cfg.search);
  if (cfg.target_energy) j["target_energy"] = *cfg.target_energy;
  j["write_samples"] = cfg.write_samples;
  if (!cfg.gain_values.empty()) j["pt_scan"] = {{"gain_values_energy", cfg.gain_values}};

  if (cfg.experiment == "benchmark") {
    const auto& b = cfg.benchmark;
    Json bj;
    bj["eps_q_values"] = b.eps_q_values;
    bj["n_bits"] = b.n_bits;
    bj["shots_per_round"] = b.shots_per_round;
    bj["delta_t_time"] = b.delta_t;
    bj["spectrum_shift"] = b.spectrum_shift;
    bj["trial_overlap"] = b.trial_overlap;
    bj["noise_placement"] = b.placement == QueryNoisePlacement::per_round ? "per_round" : "per_application";
    if (b.qetu_csv) bj["qetu_csv"] = *b.qetu_csv;
    j["benchmark"] = bj;
  }
  if (cfg.experiment == "floquet") {
    j["floquet"] = {{"harmonics", cfg.floquet.harmonics}, {"path_steps", cfg.floquet.path_steps}};
  }
  if (cfg.experiment == "denoise-demo") j["denoise_demo"] = {{"noise_sigma", cfg.demo.noise_sigma}};
  return j;
}

}  // namespace uqcs::cli
