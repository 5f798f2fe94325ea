#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "uqcs/error.hpp"
#include "uqcs/window.hpp"

using namespace uqcs;

TEST(Window, GridLayout) {
  const WindowParams w = make_window(6.0, 120);
  EXPECT_DOUBLE_EQ(w.dt, 0.4);
  ASSERT_EQ(w.t_grid.size(), 120u);
  EXPECT_DOUBLE_EQ(w.t_grid.front(), -24.0);
  EXPECT_DOUBLE_EQ(w.t_grid[static_cast<std::size_t>(w.origin())], 0.0);
  EXPECT_EQ(&w.eta_grid(), &w.t_grid);
}

TEST(Window, Normalization) {
  for (double tau : {0.5, 3.0, 6.0, 15.0}) {
    for (int n : {8, 60, 120, 150, 1000}) {
      const WindowParams w = make_window(tau, n);
      EXPECT_NEAR(std::accumulate(w.weights.begin(), w.weights.end(), 0.0), 1.0, 1e-12);
    }
  }
}

TEST(Window, GaussianShape) {
  const WindowParams w = make_window(2.0, 40);
  const double c = w.weights[static_cast<std::size_t>(w.origin())];
  for (std::size_t k = 0; k < w.t_grid.size(); ++k) {
    EXPECT_NEAR(w.weights[k] / c, std::exp(-w.t_grid[k] * w.t_grid[k] / 8.0), 1e-14);
  }
}

TEST(Window, InvalidInputs) {
  EXPECT_THROW(make_window(0.0, 120), InvalidArgument);
  EXPECT_THROW(make_window(6.0, 7), InvalidArgument);
  EXPECT_THROW(make_window(6.0, 121), InvalidArgument);
  EXPECT_THROW(make_window(6.0, 5000), InfeasibleGrid);
}

TEST(ChooseGrid, Examples) {
  WindowParams w = choose_grid(7.5, 6.0);
  EXPECT_EQ(w.n_points, 120);
  EXPECT_DOUBLE_EQ(w.dt, 0.4);
  EXPECT_LE(w.dt, 3.14159265358979 / 7.5);
  w = choose_grid(3.75, 6.0);
  EXPECT_EQ(w.n_points, 60);
  const WindowParams f = make_window(15.0, 150);
  EXPECT_DOUBLE_EQ(f.dt, 0.8);
}

TEST(ChooseGrid, NyquistHolds) {
  for (double r : {0.3, 1.0, 7.5, 9.0, 44.0}) {
    const WindowParams w = choose_grid(r, 2.0);
    EXPECT_LE(w.dt * r, 3.14159265358979 + 1e-12);
    EXPECT_EQ(w.n_points % 2, 0);
  }
}

TEST(ChooseGrid, TauFromEps) {
  const WindowParams w = choose_grid(7.5, std::nullopt, 1e-8, 1.0);
  EXPECT_NEAR(w.tau, std::sqrt(2.0 * std::log(1e8)), 1e-12);
  EXPECT_TRUE(w.warning.empty());
  EXPECT_FALSE(choose_grid(7.5, std::nullopt, 1e-4, 1.0).warning.empty());
}

TEST(ChooseGrid, ResolutionLimits) {
  EXPECT_THROW(choose_grid(7.5, 2.0, std::nullopt, 1.0), InfeasibleGrid);
  const WindowParams w = choose_grid(7.5, 4.0, std::nullopt, 1.0);
  EXPECT_FALSE(w.warning.empty());
  EXPECT_THROW(choose_grid(500.0, 20.0), InfeasibleGrid);
  EXPECT_THROW(choose_grid(7.5, std::nullopt), InvalidArgument);
}

TEST(ChooseGrid, DefaultOmegaGrid) {
  const WindowParams w = choose_grid(7.5, 6.0);
  EXPECT_NEAR(w.omega_grid.front(), -9.0, 1e-12);
  EXPECT_NEAR(w.omega_grid.back(), 9.0, 0.05 / 6.0);
  EXPECT_NEAR(w.omega_grid[1] - w.omega_grid[0], 0.05 / 6.0, 1e-12);
}
