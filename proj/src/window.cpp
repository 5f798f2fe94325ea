#include "uqcs/window.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "uqcs/error.hpp"

namespace uqcs {

WindowParams make_window(double tau, int n_points) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("window: tau must be > 0");
  if (n_points < 8 || n_points % 2 != 0) throw InvalidArgument("window: n_points must be even and >= 8");
  if (n_points > kMaxGridPoints) throw InfeasibleGrid("window: n_points exceeds " + std::to_string(kMaxGridPoints));
  WindowParams w;
  w.tau = tau;
  w.n_points = n_points;
  w.dt = 8.0 * tau / n_points;
  w.t_grid.resize(static_cast<std::size_t>(n_points));
  w.weights.resize(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double t = (k - n_points / 2) * w.dt;
    w.t_grid[static_cast<std::size_t>(k)] = t;
    w.weights[static_cast<std::size_t>(k)] = std::exp(-0.5 * t * t / (tau * tau));
  }
  const double total = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
  for (double& x : w.weights) x /= total;
  return w;
}

void set_omega_grid(WindowParams& w, double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) throw InvalidArgument("omega grid: need lo < hi and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  w.omega_grid.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.omega_grid[i] = lo + static_cast<double>(i) * step;
}

void set_default_omega_grid(WindowParams& w, double r_bound) {
  set_omega_grid(w, -1.2 * r_bound, 1.2 * r_bound, 0.05 / w.tau);
}

WindowParams choose_grid(double r_bound, std::optional<double> tau, std::optional<double> eps1,
                         std::optional<double> delta_e_min, int n_cap) {
  if (!(r_bound > 0.0)) throw InvalidArgument("choose_grid: R_bound must be > 0");
  if (!tau) {
    if (!eps1 || !delta_e_min) throw InvalidArgument("choose_grid: tau or (eps1, dE_min) required");
    if (!(*eps1 > 0.0 && *eps1 < 1.0)) throw InvalidArgument("choose_grid: eps1 must lie in (0, 1)");
    if (!(*delta_e_min > 0.0)) throw InvalidArgument("choose_grid: dE_min must be > 0");
    tau = std::sqrt(2.0 * std::log(1.0 / *eps1)) / *delta_e_min;
  }
  if (!(*tau > 0.0)) throw InvalidArgument("choose_grid: tau must be > 0");

  std::string warning;
  if (delta_e_min) {
    const double product = *tau * *delta_e_min;
    if (product < 3.0) {
      throw InfeasibleGrid("choose_grid: tau * dE_min = " + std::to_string(product) + " < 3");
    }
    if (product < 5.0) warning = "tau * dE_min = " + std::to_string(product) + " is below 5";
  }

  const double n_min = 8.0 * *tau * r_bound / std::numbers::pi;
  const double n = 10.0 * std::ceil(n_min / 10.0 * (1.0 - 1e-12));
  if (n > n_cap) {
    throw InfeasibleGrid("choose_grid: R * tau requires " + std::to_string(static_cast<long>(n)) +
                         " points, cap is " + std::to_string(n_cap));
  }
  WindowParams w = make_window(*tau, static_cast<int>(n));
  w.warning = std::move(warning);
  set_default_omega_grid(w, r_bound);
  return w;
}

}  // namespace uqcs
