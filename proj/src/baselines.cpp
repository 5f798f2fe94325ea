#include "uqcs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uqcs/error.hpp"
#include "uqcs/measurement.hpp"

namespace uqcs {

namespace {

// Vector tracked as exp(log_scale) * v.
struct Scaled {
  StateVector v;
  double log_scale = 0.0;
};

// Ancilla expectation 2 <psi|w> / (1 + |w|^2) for w = exp(log_scale) v.
Complex normalized_statistic(const StateVector& psi, const Scaled& w) {
  const double n = w.v.norm();
  if (!(n > 0.0)) return 0.0;
  const double ls = w.log_scale + std::log(n);
  if (ls > 350.0) return 0.0;
  if (ls < -350.0) return 0.0;
  const StateVector unit = w.v / n;
  const double s = std::exp(ls);
  return 2.0 * s * psi.dot(unit) / (1.0 + s * s);
}

// Squares m in place, keeping max |entry| at 1 and accumulating the log scale.
void square_scaled(ComplexMatrix& m, double& log_scale) {
  m = (m * m).eval();
  log_scale *= 2.0;
  const double top = max_abs(m);
  if (!(top > 0.0) || !std::isfinite(top)) throw OverflowError("iqpe: query power degenerated");
  m /= top;
  log_scale += std::log(top);
}

struct QueryModel {
  virtual ~QueryModel() = default;
  // W psi for W = V^(2^k), V possibly noisy.
  virtual Scaled apply_power(int k, const StateVector& psi, Rng& rng) const = 0;
};

// Exact powers via the dual eigendecomposition of V.
class SpectralQuery : public QueryModel {
 public:
  explicit SpectralQuery(const ComplexMatrix& v) : dec_(eig_general(v)) {
    if (dec_.defective) throw ConvergenceError("iqpe: query unitary is defective");
  }
  explicit SpectralQuery(DualEigenDecomposition dec) : dec_(std::move(dec)) {}
  Scaled apply_power(int k, const StateVector& psi, Rng&) const override {
    const StateVector c = dec_.left.adjoint() * psi;
    const double p = std::ldexp(1.0, k);
    // v_n^p = exp(p log v_n); factor out the largest modulus.
    Eigen::VectorXcd logs(c.size());
    double top = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      logs[i] = p * std::log(dec_.values[i]);
      top = std::max(top, logs[i].real());
    }
    StateVector coeff(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) coeff[i] = c[i] * std::exp(logs[i] - top);
    return {dec_.right * coeff, top};
  }

 private:
  DualEigenDecomposition dec_;
};

class NoisyQuery : public QueryModel {
 public:
  NoisyQuery(ComplexMatrix v, double eps, QueryNoisePlacement placement)
      : v_(std::move(v)), eps_(eps), placement_(placement) {}
  Scaled apply_power(int k, const StateVector& psi, Rng& rng) const override {
    if (placement_ == QueryNoisePlacement::per_round) {
      ComplexMatrix w = inject_query_error(v_, eps_, rng);
      double log_scale = 0.0;
      for (int i = 0; i < k; ++i) square_scaled(w, log_scale);
      return {w * psi, log_scale};
    }
    Scaled out{psi, 0.0};
    const long applications = 1L << k;
    for (long i = 0; i < applications; ++i) {
      out.v = inject_query_error(v_, eps_, rng) * out.v;
      const double n = out.v.norm();
      if (!(n > 0.0) || !std::isfinite(n)) throw OverflowError("iqpe: state norm degenerated");
      out.v /= n;
      out.log_scale += std::log(n);
    }
    return out;
  }

 private:
  ComplexMatrix v_;
  double eps_;
  QueryNoisePlacement placement_;
};

IQPEResult run_iqpe(const QueryModel& query, const StateVector& psi, const IQPEConfig& cfg) {
  if (cfg.n_bits < 1 || cfg.n_bits > 30) throw InvalidArgument("iqpe: n_bits must lie in [1, 30]");
  if (!(cfg.delta_t > 0.0)) throw InvalidArgument("iqpe: delta_t must be > 0");
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw InvalidArgument("iqpe: trial state must be normalized");

  IQPEResult out;
  out.query_depth = (1L << cfg.n_bits) - 1;
  out.bits.assign(static_cast<std::size_t>(cfg.n_bits), 0);
  double tail = 0.0;  // 0.b_{k+1} b_{k+2} ... as a fraction, built from the least significant end
  const double two_pi = 2.0 * std::numbers::pi;
  for (int round = 0; round < cfg.n_bits; ++round) {
    const int k = cfg.n_bits - 1 - round;  // power 2^k reads bit index k (0-based, most significant is 0)
    Rng rng = make_stream(cfg.seed, {static_cast<std::uint64_t>(StreamPurpose::iqpe), static_cast<std::uint64_t>(round)});
    const Scaled w = query.apply_power(k, psi, rng);
    const Complex stat = normalized_statistic(psi, w);
    const double omega = -two_pi * tail / 2.0;
    const double p0 = std::clamp(0.5 * (1.0 + (std::exp(Complex(0.0, omega)) * stat).real()), 0.0, 1.0);
    out.p0.push_back(p0);

    int bit = 0;
    if (cfg.shots_per_round > 0) {
      Rng shot_rng = make_stream(cfg.seed, {static_cast<std::uint64_t>(StreamPurpose::shot), 0xb17ULL,
                                            static_cast<std::uint64_t>(round)});
      const double mean = binomial_mean(shot_rng, 2.0 * p0 - 1.0, cfg.shots_per_round);
      const double frac0 = 0.5 * (1.0 + mean);
      bit = frac0 >= 0.5 ? 0 : 1;
      if (std::abs(frac0 - 0.5) <= 2.0 * std::sqrt(0.25 / static_cast<double>(cfg.shots_per_round))) {
        out.reliable = false;
      }
    } else {
      bit = p0 >= 0.5 ? 0 : 1;
      if (std::abs(p0 - 0.5) < 1e-3) out.reliable = false;
    }
    out.bits[static_cast<std::size_t>(k)] = bit;
    tail = (bit + tail) / 2.0;
  }
  out.phase = two_pi * tail;
  out.energy = (out.phase - cfg.spectrum_shift) / cfg.delta_t;
  return out;
}

}  // namespace

ComplexMatrix inject_query_error(const ComplexMatrix& u, double eps_q, Rng& rng) {
  if (!(eps_q >= 0.0)) throw InvalidArgument("inject_query_error: eps_q must be >= 0");
  if (eps_q == 0.0) return u;
  ComplexMatrix out = u;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) out(r, c) += eps_q * complex_normal(rng, 1.0);
  }
  return out;
}

IQPEResult iqpe_estimate_unitary(const ComplexMatrix& v, const StateVector& psi, const IQPEConfig& cfg) {
  if (v.rows() != v.cols() || v.rows() != psi.size()) throw DimensionError("iqpe: query and state dimensions disagree");
  if (cfg.query_error > 0.0) return run_iqpe(NoisyQuery(v, cfg.query_error, cfg.placement), psi, cfg);
  return run_iqpe(SpectralQuery(v), psi, cfg);
}

IQPEResult iqpe_estimate(const ComplexMatrix& h, const StateVector& psi, const IQPEConfig& cfg) {
  if (h.rows() != h.cols() || h.rows() != psi.size()) throw DimensionError("iqpe: generator and state dimensions disagree");
  if (!(cfg.delta_t > 0.0)) throw InvalidArgument("iqpe: delta_t must be > 0");
  if (cfg.query_error == 0.0 && is_hermitian(h)) {
    // V shares the eigenvectors of H.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("iqpe: eigensolver failed");
    DualEigenDecomposition dec;
    dec.values = (kI * (cfg.delta_t * es.eigenvalues().cast<Complex>().array() + cfg.spectrum_shift)).exp().matrix();
    dec.right = es.eigenvectors();
    dec.left = es.eigenvectors();
    dec.bi_normalized = true;
    dec.hermitian = true;
    return run_iqpe(SpectralQuery(std::move(dec)), psi, cfg);
  }
  const ComplexMatrix shifted =
      cfg.delta_t * h + cfg.spectrum_shift * ComplexMatrix::Identity(h.rows(), h.cols());
  const ComplexMatrix v = matexp(shifted, kI);
  return iqpe_estimate_unitary(v, psi, cfg);
}

StateVector trial_state(const StateVector& target, const StateVector& other, double zeta) {
  if (target.size() != other.size()) throw DimensionError("trial_state: dimension mismatch");
  if (!(zeta > 0.0 && zeta <= 1.0)) throw InvalidArgument("trial_state: zeta must lie in (0, 1]");
  const StateVector t = target.normalized();
  StateVector o = other - t * t.dot(other);
  const double n = o.norm();
  if (zeta < 1.0 && n < 1e-12) throw InvalidArgument("trial_state: other state is parallel to the target");
  if (zeta == 1.0) return t;
  return zeta * t + std::sqrt(1.0 - zeta * zeta) * (o / n);
}

}  // namespace uqcs
