#pragma once

#include <optional>
#include <string>
#include <vector>

namespace uqcs {

// Gaussian window G(x, tau) sampled on N points t_k = (k - N/2) dt, dt = 8 tau / N,
// covering [-4 tau, 4 tau). The same grid serves as eta grid and t grid.
//
// `weights` are G(t_k, tau) dt rescaled to sum to exactly 1, so a unit
// spectral line has peak height 1 after the windowed transform.
struct WindowParams {
  double tau = 0.0;
  int n_points = 0;
  double dt = 0.0;
  std::vector<double> t_grid;
  std::vector<double> weights;
  std::vector<double> omega_grid;
  std::string warning;  // non-empty when tau * dE_min < 5

  const std::vector<double>& eta_grid() const { return t_grid; }
  // Index of t = 0.
  int origin() const { return n_points / 2; }
};

inline constexpr int kMaxGridPoints = 4096;

// Grid with explicit N (even, >= 8).
WindowParams make_window(double tau, int n_points);

// Uniform omega grid [lo, hi] with the given step.
void set_omega_grid(WindowParams& w, double lo, double hi, double step);

// Default omega grid: step 0.05/tau over [-1.2 R, 1.2 R].
void set_default_omega_grid(WindowParams& w, double r_bound);

// Smallest N, a multiple of 10, with dt = 8 tau / N <= pi / R. When tau is
// absent it defaults to sqrt(2 ln(1/eps1)) / dE_min (both required then).
// InfeasibleGrid when N would exceed n_cap or tau * dE_min < 3.
WindowParams choose_grid(double r_bound, std::optional<double> tau, std::optional<double> eps1 = {},
                         std::optional<double> delta_e_min = {}, int n_cap = kMaxGridPoints);

}  // namespace uqcs
