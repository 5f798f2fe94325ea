#include "uqcs/spectroscopy.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

#include "uqcs/error.hpp"
#include "uqcs/parallel.hpp"

namespace uqcs {

namespace {

void require_window_grid(const std::vector<double>& t, const WindowParams& w, const char* where) {
  if (t.size() != w.t_grid.size()) throw DimensionError(std::string(where) + ": series length does not match the window grid");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::abs(t[k] - w.t_grid[k]) > 1e-9 * (1.0 + std::abs(w.t_grid[k]))) {
      throw DimensionError(std::string(where) + ": series times do not match the window grid");
    }
  }
}

struct QuadFit {
  double center;
  double curvature;  // second derivative
};

// Parabola through three equally spaced points (x = -1, 0, 1 in units of h).
std::optional<QuadFit> three_point(double y0, double y1, double y2, double x1, double h) {
  const double denom = y0 - 2.0 * y1 + y2;
  if (!(denom < 0.0)) return std::nullopt;
  return QuadFit{x1 + 0.5 * (y0 - y2) / denom * h, denom / (h * h)};
}

// Least-squares parabola through five points centred at x1; returns vertex.
std::optional<double> five_point_center(const double* y, double x1, double h) {
  // For x = -2..2: sum x^2 = 10, sum x^4 = 34.
  double s0 = 0, s1 = 0, s2 = 0;
  for (int i = 0; i < 5; ++i) {
    const double x = i - 2;
    s0 += y[i];
    s1 += x * y[i];
    s2 += x * x * y[i];
  }
  const double b = s1 / 10.0;
  const double c = (s2 - 2.0 * s0) / 14.0;
  if (!(c < 0.0)) return std::nullopt;
  return x1 - b / (2.0 * c) * h;
}

std::vector<Peak> peaks_in_range(const Spectrum& spec, std::size_t lo, std::size_t hi, double rel_threshold,
                                 std::optional<double> tau) {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) throw InvalidArgument("find_peaks: rel_threshold must lie in (0, 1)");
  std::vector<Peak> out;
  if (hi - lo < 3) return out;
  std::vector<double> re(spec.amplitude.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = spec.amplitude[i].real();
  const double top = *std::max_element(re.begin() + static_cast<long>(lo), re.begin() + static_cast<long>(hi));
  if (!(top > 0.0)) return out;
  const double h = spec.omega[1] - spec.omega[0];

  for (std::size_t i = lo + 1; i + 1 < hi; ++i) {
    if (!(re[i] > re[i - 1] && re[i] >= re[i + 1] && re[i] >= rel_threshold * top)) continue;
    const bool positive = re[i - 1] > 0.0 && re[i + 1] > 0.0;
    std::optional<QuadFit> fit;
    if (positive) fit = three_point(std::log(re[i - 1]), std::log(re[i]), std::log(re[i + 1]), spec.omega[i], h);
    Peak p;
    if (fit) {
      p.center = fit->center;
      p.width = 1.0 / std::sqrt(-fit->curvature);
    } else {
      const auto q = three_point(re[i - 1], re[i], re[i + 1], spec.omega[i], h);
      p.center = q ? q->center : spec.omega[i];
      p.width = q ? std::sqrt(re[i] / -q->curvature) : h;
    }
    if (positive && i >= lo + 2 && i + 2 < hi && re[i - 2] > 0.0 && re[i + 2] > 0.0) {
      double ly[5];
      for (int m = 0; m < 5; ++m) ly[m] = std::log(re[i + static_cast<std::size_t>(m) - 2]);
      if (auto c5 = five_point_center(ly, spec.omega[i], h)) p.uncertainty = std::abs(*c5 - p.center);
    } else {
      p.uncertainty = h;
    }
    // Two lines at +-s/2 fit a width w with w^2 ~ 1/tau^2 + s^2/4.
    if (tau && p.width > 1.01 / *tau) {
      p.uncertainty = std::max(p.uncertainty, std::sqrt(p.width * p.width - 1.0 / (*tau * *tau)));
    }
    p.amplitude = spec.at(p.center).real();
    out.push_back(p);
  }

  // Noise floor: RMS of the searched range more than 5 widths from every line. A
  // Gaussian line of height A moves by about floor * width / (2 A); keep 3x that.
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    const bool off_line = std::all_of(out.begin(), out.end(),
                                      [&](const Peak& p) { return std::abs(spec.omega[i] - p.center) > 5.0 * p.width; });
    if (off_line) {
      acc += std::norm(spec.amplitude[i]);
      ++count;
    }
  }
  if (count > 0) {
    const double floor = std::sqrt(acc / static_cast<double>(count));
    for (Peak& p : out) {
      if (p.amplitude > 0.0) p.uncertainty = std::max(p.uncertainty, 1.5 * floor * p.width / p.amplitude);
    }
  }
  return out;
}

}  // namespace

Complex Spectrum::at(double w) const {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < src_t.size(); ++k) acc += src_wc[k] * std::exp(kI * (w * src_t[k]));
  return acc;
}

AutocorrSeries autocorrelation(const SampleGrid& grid, const WindowParams& w, std::size_t observable) {
  if (observable >= grid.values.size()) throw InvalidArgument("autocorrelation: observable index out of range");
  require_window_grid(grid.eta, w, "autocorrelation");
  require_window_grid(grid.t, w, "autocorrelation");
  const auto& v = grid.values[observable];
  if (v.rows() != w.n_points || v.cols() != w.n_points || !v.allFinite()) {
    throw InvalidArgument("autocorrelation: sample grid is incomplete");
  }
  AutocorrSeries s;
  s.t = w.t_grid;
  s.label = grid.labels[observable];
  s.c.assign(static_cast<std::size_t>(w.n_points), Complex(0.0));
  for (int k = 0; k < w.n_points; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < w.n_points; ++j) acc += w.weights[static_cast<std::size_t>(j)] * v(j, k);
    s.c[static_cast<std::size_t>(k)] = acc;
  }
  return s;
}

std::vector<AutocorrSeries> autocorrelation(const SampleGrid& grid, const WindowParams& w) {
  std::vector<AutocorrSeries> out;
  for (std::size_t o = 0; o < grid.values.size(); ++o) out.push_back(autocorrelation(grid, w, o));
  return out;
}

Spectrum windowed_fourier(const AutocorrSeries& series, const WindowParams& w) {
  require_window_grid(series.t, w, "windowed_fourier");
  if (series.c.size() != series.t.size()) throw DimensionError("windowed_fourier: series has mismatched lengths");
  if (w.omega_grid.size() < 2) throw InvalidArgument("windowed_fourier: omega grid not set");
  Spectrum s;
  s.label = series.label;
  s.omega = w.omega_grid;
  s.src_t = series.t;
  s.src_wc.resize(series.c.size());
  for (std::size_t k = 0; k < series.c.size(); ++k) s.src_wc[k] = w.weights[k] * series.c[k];
  s.amplitude.resize(s.omega.size());
  parallel_for(s.omega.size(), [&](std::size_t i) { s.amplitude[i] = s.at(s.omega[i]); });
  return s;
}

std::vector<Peak> find_peaks(const Spectrum& spec, double rel_threshold, std::optional<double> tau) {
  return peaks_in_range(spec, 0, spec.omega.size(), rel_threshold, tau);
}

std::vector<Peak> find_peaks_in(const Spectrum& spec, double lo, double hi, double rel_threshold,
                                std::optional<double> tau) {
  const auto b = std::lower_bound(spec.omega.begin(), spec.omega.end(), lo);
  const auto e = std::upper_bound(spec.omega.begin(), spec.omega.end(), hi);
  return peaks_in_range(spec, static_cast<std::size_t>(b - spec.omega.begin()),
                        static_cast<std::size_t>(e - spec.omega.begin()), rel_threshold, tau);
}

double dark_state_floor(const WindowParams& w, long shots, double rel_threshold) {
  double sum_sq = 0.0;
  for (double x : w.weights) sum_sq += x * x;
  const double sigma = shots > 0 ? sum_sq / std::sqrt(static_cast<double>(shots)) : 0.0;
  return std::max(3.0 * sigma, rel_threshold);
}

Complex estimate_observable(const Spectrum& spec_o, const Spectrum& spec_i, double energy, double floor) {
  const Complex den = spec_i.at(energy);
  if (!(den.real() >= floor)) {
    throw DarkStateError("estimate_observable: identity amplitude " + std::to_string(den.real()) + " at E=" +
                             std::to_string(energy) + " is below the floor " + std::to_string(floor),
                         energy, den.real());
  }
  return spec_o.at(energy) / den;
}

std::vector<std::string> all_pauli_labels(int n_sites) {
  if (n_sites < 1 || n_sites > 6) throw InvalidArgument("all_pauli_labels: n_sites must lie in [1, 6]");
  static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::string> out{""};
  for (int i = 0; i < n_sites; ++i) {
    std::vector<std::string> next;
    for (const auto& s : out) {
      for (char c : kLetters) next.push_back(s + c);
    }
    out = std::move(next);
  }
  return out;
}

ComplexMatrix tomography(const std::map<std::string, Complex>& pauli_expectations) {
  if (pauli_expectations.empty()) throw InvalidArgument("tomography: no expectations given");
  const int n = static_cast<int>(pauli_expectations.begin()->first.size());
  const auto labels = all_pauli_labels(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (const auto& l : labels) {
    auto it = pauli_expectations.find(l);
    if (it == pauli_expectations.end()) throw InvalidArgument("tomography: missing Pauli string " + l);
    rho += it->second * pauli_string(l);
  }
  rho /= static_cast<double>(d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  const double total = lam.sum();
  if (!(total > 0.0)) throw InvalidArgument("tomography: reconstructed matrix has no positive part");
  lam /= total;
  return es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const ComplexMatrix& rho0, const ComplexMatrix& rho) {
  if (rho0.rows() != rho.rows() || rho0.rows() != rho0.cols() || rho.rows() != rho.cols()) {
    throw DimensionError("fidelity: density matrices must be square and of equal size");
  }
  auto hermitian_eig = [](const ComplexMatrix& m) {
    if (!is_hermitian(m, 1e-8)) throw InvalidArgument("fidelity: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    if (es.eigenvalues().minCoeff() < -1e-9) throw InvalidArgument("fidelity: input is not positive semidefinite");
    return es;
  };
  const auto e0 = hermitian_eig(rho0);
  hermitian_eig(rho);
  // Eigenvalues at rounding level are zero; their square roots would not be.
  auto root = [n = static_cast<double>(rho0.rows())](const Eigen::VectorXd& ev) {
    const double floor = 4.0 * n * std::numeric_limits<double>::epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff());
    return ev.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; }).eval();
  };
  const Eigen::VectorXd s0 = root(e0.eigenvalues());
  const ComplexMatrix sqrt0 = e0.eigenvectors() * s0.cast<Complex>().asDiagonal() * e0.eigenvectors().adjoint();
  const ComplexMatrix m = sqrt0 * rho * sqrt0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> em(0.5 * (m + m.adjoint()));
  const double tr = root(em.eigenvalues()).sum();
  return tr * tr;
}

}  // namespace uqcs
