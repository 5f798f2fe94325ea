#pragma once

#include <map>
#include <string>

#include "uqcs/cli/config.hpp"
#include "uqcs/dynamics.hpp"
#include "uqcs/window.hpp"

namespace uqcs::cli {

// File name -> file contents.
using Artifacts = std::map<std::string, std::string>;

Artifacts run_experiment(const RunConfig& cfg);

// Building blocks, exposed for tests.
Generator make_generator(const SystemConfig& sys);
// Static matrix of the system (the t = 0 Hamiltonian for the driven model).
ComplexMatrix system_matrix(const SystemConfig& sys);
double spectral_bound(const SystemConfig& sys);
StateVector make_initial_state(const RunConfig& cfg);
WindowParams resolve_window(const RunConfig& cfg, double r_bound);

}  // namespace uqcs::cli
