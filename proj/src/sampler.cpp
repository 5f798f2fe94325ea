#include <cmath>
#include <cstdlib>

#include "uqcs/error.hpp"
#include "uqcs/measurement.hpp"
#include "uqcs/parallel.hpp"

namespace uqcs {

namespace {

// psi(m dt) for m in [m_lo, m_hi], exact (no gate noise).
std::vector<StateVector> exact_states(const Generator& gen, const StateVector& psi, double dt, int m_lo, int m_hi) {
  const auto count = static_cast<std::size_t>(m_hi - m_lo + 1);
  std::vector<StateVector> out(count);
  if (gen.kind == GeneratorKind::hermitian_static) {
    const auto dec = eig_general(gen.h);
    const Eigen::VectorXd e = dec.values.real();
    const StateVector c = dec.right.adjoint() * psi;
    parallel_for(count, [&](std::size_t i) {
      const double s = (m_lo + static_cast<int>(i)) * dt;
      const StateVector phased = (c.array() * (-kI * s * e.array()).exp()).matrix();
      out[i] = dec.right * phased;
    });
    return out;
  }
  std::vector<double> times(count);
  for (std::size_t i = 0; i < count; ++i) times[i] = (m_lo + static_cast<int>(i)) * dt;
  const PropagatorGrid grid = propagator_grid(gen, times);
  for (std::size_t i = 0; i < count; ++i) out[i] = grid.operators[i] * psi;
  return out;
}

// State carried through a noisy step sequence as exp(log_scale) * unit vector.
struct ScaledState {
  StateVector v;
  double log_scale = 0.0;

  void renormalize() {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw OverflowError("noisy evolution: state norm degenerated");
    v /= n;
    log_scale += std::log(n);
  }
};

class NoisyStepper {
 public:
  NoisyStepper(const Generator& gen, double dt, double variance) : variance_(variance) {
    hermitian_ = gen.kind == GeneratorKind::hermitian_static;
    if (hermitian_) {
      dec_ = eig_general(gen.h);
      const Eigen::ArrayXd e = dec_.values.real().array();
      forward_phase_ = (-kI * dt * e).exp();
      backward_phase_ = forward_phase_.conjugate();
    } else {
      forward_ = matexp(gen.h, Complex(0.0, -dt));
      backward_ = matexp(gen.h, Complex(0.0, dt));
    }
  }

  bool hermitian() const { return hermitian_; }

  // Working basis: eigenbasis for Hermitian generators (noise is
  // unitarily invariant in distribution), computational otherwise.
  StateVector to_basis(const StateVector& psi) const { return hermitian_ ? StateVector(dec_.right.adjoint() * psi) : psi; }
  ComplexMatrix op_to_basis(const ComplexMatrix& o) const {
    return hermitian_ ? ComplexMatrix(dec_.right.adjoint() * o * dec_.right) : o;
  }

  void advance(ScaledState& s, int steps, Rng& rng) const {
    const bool fwd = steps >= 0;
    for (int i = 0; i < std::abs(steps); ++i) {
      if (hermitian_) {
        s.v.array() *= fwd ? forward_phase_ : backward_phase_;
      } else {
        s.v = (fwd ? forward_ : backward_) * s.v;
      }
      // E v for E with iid CN(0, var) entries is CN(0, var |v|^2) per component; |v| = 1 here.
      for (Eigen::Index r = 0; r < s.v.size(); ++r) s.v[r] += complex_normal(rng, variance_);
      s.renormalize();
    }
  }

 private:
  double variance_;
  bool hermitian_ = false;
  DualEigenDecomposition dec_;
  Eigen::ArrayXcd forward_phase_, backward_phase_;
  ComplexMatrix forward_, backward_;
};

}  // namespace

SampleGrid sample_grid(const Generator& gen, const StateVector& psi, const std::vector<Observable>& observables,
                       const WindowParams& w, const NoiseModel& noise) {
  const Eigen::Index d = gen.dim();
  if (psi.size() != d) throw DimensionError("sample_grid: state dimension does not match the generator");
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw InvalidArgument("sample_grid: initial state must be normalized");
  for (const auto& o : observables) {
    if (o.op.rows() != d || o.op.cols() != d) throw DimensionError("sample_grid: observable '" + o.label + "' has wrong dimension");
  }
  if (noise.gate_error < 0.0 || noise.query_error < 0.0) throw InvalidArgument("sample_grid: error rates must be >= 0");

  const int n = w.n_points;
  const int origin = w.origin();
  SampleGrid grid;
  grid.eta = w.t_grid;
  grid.t = w.t_grid;
  for (const auto& o : observables) grid.labels.push_back(o.label);
  grid.values.assign(observables.size(), Eigen::MatrixXcd(n, n));

  auto finish = [&](std::size_t o, int j, int k, Complex exact) {
    grid.values[o](j, k) = sample_value(exact, noise, static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(k), o);
  };

  if (!noise.noisy_gates()) {
    const int m_lo = -2 * origin;
    const int m_hi = 2 * (n - 1 - origin);
    const auto states = exact_states(gen, psi, w.dt, m_lo, m_hi);
    for (std::size_t o = 0; o < observables.size(); ++o) {
      std::vector<StateVector> kets(states.size());
      parallel_for(states.size(), [&](std::size_t i) { kets[i] = observables[o].op * states[i]; });
      parallel_for(static_cast<std::size_t>(n), [&](std::size_t js) {
        const int j = static_cast<int>(js);
        const int mj = j - origin;
        for (int k = 0; k < n; ++k) {
          const int mk = k - origin;
          const auto bra = static_cast<std::size_t>(mj - m_lo);
          const auto ket = static_cast<std::size_t>(mj + mk - m_lo);
          finish(o, j, k, states[bra].dot(kets[ket]));
        }
      });
    }
    return grid;
  }

  if (!gen.is_static()) throw InvalidArgument("sample_grid: gate/query errors require a static generator");
  const double variance = noise.gate_error / (n / 2.0) + noise.query_error * noise.query_error;
  const NoisyStepper stepper(gen, w.dt, variance);
  const StateVector start = stepper.to_basis(psi);
  std::vector<ComplexMatrix> ops;
  std::vector<bool> is_identity;
  for (const auto& o : observables) {
    is_identity.push_back(o.op.isIdentity(0.0));
    ops.push_back(is_identity.back() ? ComplexMatrix() : stepper.op_to_basis(o.op));
  }

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t js) {
    const int j = static_cast<int>(js);
    for (int k = 0; k < n; ++k) {
      Rng rng = make_stream(noise.seed, {static_cast<std::uint64_t>(StreamPurpose::gate), js,
                                         static_cast<std::uint64_t>(k)});
      ScaledState a{start, 0.0};
      stepper.advance(a, j - origin, rng);
      ScaledState b = a;
      stepper.advance(b, k - origin, rng);
      for (std::size_t o = 0; o < observables.size(); ++o) {
        const StateVector ob = is_identity[o] ? b.v : StateVector(ops[o] * b.v);
        const Complex overlap = a.v.dot(ob);
        const double x = a.log_scale - b.log_scale;
        Complex value;
        if (stepper.hermitian()) {
          value = std::abs(x) > 700.0 ? Complex(0.0)
                                      : 2.0 * overlap / (std::exp(x) + std::exp(-x) * ob.squaredNorm());
        } else {
          const double ls = a.log_scale + b.log_scale;
          if (ls > 700.0) throw OverflowError("sample_grid: non-Hermitian noisy amplitude overflowed");
          value = std::exp(ls) * overlap;
        }
        finish(o, j, k, value);
      }
    }
  });
  return grid;
}

}  // namespace uqcs
