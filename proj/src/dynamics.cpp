#include "uqcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uqcs/error.hpp"
#include "uqcs/parallel.hpp"

namespace uqcs {

namespace {

double lattice_step(const NQRDriveSpec& spec, int s) {
  if (spec.Omega > 0.0) {
    const double period = 2.0 * std::numbers::pi / spec.Omega;
    return period / std::ceil(period * s);
  }
  return 1.0 / s;
}

std::size_t steps_per_period(const NQRDriveSpec& spec, double dt) {
  if (spec.Omega <= 0.0) return 1;
  return static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi / spec.Omega / dt));
}

// Walks the lattice in one direction. Full-step matrices repeat with the
// drive period and are cached; grid and pointwise calls share this code.
class DrivenStepper {
 public:
  DrivenStepper(const NQRDriveSpec& spec, int substeps, double direction)
      : spec_(spec), dt_(lattice_step(spec, substeps)), dir_(direction),
        period_steps_(steps_per_period(spec, dt_)), u_(ComplexMatrix::Identity(4, 4)) {}

  // |t| must not decrease between calls.
  ComplexMatrix at(double t) {
    const double mag = std::abs(t);
    auto n = static_cast<std::size_t>(std::floor(mag / dt_));
    double rest = mag - static_cast<double>(n) * dt_;
    if (dt_ - rest <= 1e-12 * dt_) {
      ++n;
      rest = 0.0;
    }
    while (done_ < n) {
      u_ = full_step(done_) * u_;
      ++done_;
    }
    if (rest <= 1e-12 * std::max(1.0, mag)) return u_;
    const double a = dir_ * static_cast<double>(n) * dt_;
    const double h = dir_ * rest;
    return matexp(nqr_hamiltonian_at(spec_, a + 0.5 * h), Complex(0.0, -h)) * u_;
  }

 private:
  const ComplexMatrix& full_step(std::size_t k) {
    const std::size_t slot = k % period_steps_;
    if (cache_.size() <= slot) cache_.resize(period_steps_);
    if (cache_[slot].size() == 0) {
      const double a = dir_ * static_cast<double>(slot) * dt_;
      const double h = dir_ * dt_;
      cache_[slot] = matexp(nqr_hamiltonian_at(spec_, a + 0.5 * h), Complex(0.0, -h));
    }
    return cache_[slot];
  }

  NQRDriveSpec spec_;
  double dt_;
  double dir_;
  std::size_t period_steps_;
  ComplexMatrix u_;
  std::size_t done_ = 0;
  std::vector<ComplexMatrix> cache_;
};

int resolve_substeps(const Generator& g) {
  return g.substeps_per_unit_time > 0 ? g.substeps_per_unit_time : default_substeps(g.drive);
}

}  // namespace

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::hermitian_static: return "hermitian-static";
    case GeneratorKind::non_hermitian_static: return "non-hermitian-static";
    case GeneratorKind::driven: return "driven";
  }
  return "unknown";
}

Generator Generator::fixed(ComplexMatrix h) {
  if (h.rows() != h.cols()) throw DimensionError("generator: matrix must be square");
  Generator g;
  g.kind = is_hermitian(h) ? GeneratorKind::hermitian_static : GeneratorKind::non_hermitian_static;
  g.h = std::move(h);
  return g;
}

Generator Generator::driven_nqr(const NQRDriveSpec& spec, int substeps_per_unit_time) {
  validate(spec);
  if (substeps_per_unit_time != 0 && substeps_per_unit_time < 100) {
    throw InvalidArgument("generator: substeps_per_unit_time must be >= 100");
  }
  Generator g;
  g.kind = GeneratorKind::driven;
  g.drive = spec;
  g.substeps_per_unit_time = substeps_per_unit_time;
  return g;
}

Eigen::Index Generator::dim() const { return kind == GeneratorKind::driven ? 4 : h.rows(); }

ComplexMatrix evolve_static(const ComplexMatrix& h, double t) { return matexp(h, Complex(0.0, -t)); }

int default_substeps(const NQRDriveSpec& spec) {
  // (B.S)^2 has eigenvalues B^2/4 and 9B^2/4 for every t.
  const double norm = 2.25 * spec.B * spec.B;
  return static_cast<int>(std::ceil(std::max(100.0, 100.0 * norm)));
}

ComplexMatrix evolve_driven(const NQRDriveSpec& spec, double t, int substeps_per_unit_time) {
  validate(spec);
  if (substeps_per_unit_time < 100) throw InvalidArgument("evolve_driven: substeps_per_unit_time must be >= 100");
  if (!std::isfinite(t)) throw InvalidArgument("evolve_driven: non-finite time");
  DrivenStepper stepper(spec, substeps_per_unit_time, t < 0.0 ? -1.0 : 1.0);
  return stepper.at(t);
}

PropagatorGrid propagator_grid(const Generator& source, std::span<const double> times) {
  if (!std::is_sorted(times.begin(), times.end())) throw InvalidArgument("propagator_grid: times must be ascending");
  PropagatorGrid grid;
  grid.kind = source.kind;
  grid.times.assign(times.begin(), times.end());
  grid.operators.resize(times.size());

  if (source.is_static()) {
    parallel_for(times.size(), [&](std::size_t i) { grid.operators[i] = evolve_static(source.h, times[i]); });
    return grid;
  }

  const int s = resolve_substeps(source);
  validate(source.drive);
  const auto first_nonneg =
      static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), 0.0) - times.begin());
  DrivenStepper forward(source.drive, s, 1.0);
  for (std::size_t i = first_nonneg; i < times.size(); ++i) grid.operators[i] = forward.at(times[i]);
  DrivenStepper backward(source.drive, s, -1.0);
  for (std::size_t i = first_nonneg; i-- > 0;) grid.operators[i] = backward.at(times[i]);
  return grid;
}

}  // namespace uqcs
