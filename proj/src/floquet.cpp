#include "uqcs/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uqcs/error.hpp"

namespace uqcs {

double wrap_phase(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x, two_pi);
  if (y <= -std::numbers::pi) y += two_pi;
  if (y > std::numbers::pi) y -= two_pi;
  return y;
}

namespace {

HolonomyResult summarize(ComplexMatrix phi) {
  HolonomyResult out;
  out.wilson_trace = phi.trace();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(phi, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.eigenphases.push_back(wrap_phase(std::arg(es.eigenvalues()[i])));
  std::sort(out.eigenphases.begin(), out.eigenphases.end());
  const Complex mean = out.wilson_trace / static_cast<double>(phi.rows());
  const ComplexMatrix off = phi - mean * ComplexMatrix::Identity(phi.rows(), phi.cols());
  if (max_abs(off) <= 1e-3) out.berry_phase = wrap_phase(std::arg(mean));
  out.wz_matrix = std::move(phi);
  return out;
}

// Unitary factor of the polar decomposition.
ComplexMatrix unitary_part(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> sv(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (sv.singularValues().minCoeff() < 1e-8) throw TrackingError("holonomy: consecutive frames are nearly orthogonal");
  return sv.matrixU() * sv.matrixV().adjoint();
}

}  // namespace

ExtendedSpaceProblem build_extended(const FourierHamiltonian& fh, int p_max) {
  if (p_max < 1) throw InvalidArgument("build_extended: p_max must be >= 1");
  const Eigen::Index d = fh.dim;
  const int blocks = 2 * p_max + 1;
  if (d * blocks > kMaxDim) throw DimensionError("build_extended: extended dimension exceeds limit");
  ExtendedSpaceProblem prob;
  prob.base = fh;
  prob.p_max = p_max;
  prob.matrix = ComplexMatrix::Zero(d * blocks, d * blocks);
  for (int a = 0; a < blocks; ++a) {
    for (int b = 0; b < blocks; ++b) {
      const int m = b - a;
      auto it = fh.components.find(m);
      if (it != fh.components.end()) prob.matrix.block(a * d, b * d, d, d) = it->second;
    }
    const double shift = (a - p_max) * fh.base_frequency;
    prob.matrix.block(a * d, a * d, d, d).diagonal().array() += shift;
  }
  return prob;
}

std::vector<double> distinct_levels(const ComplexMatrix& h, double tol) {
  if (!is_hermitian(h, 1e-10)) throw InvalidArgument("distinct_levels: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()[i];
    if (out.empty() || e - out.back() > tol) out.push_back(e);
  }
  return out;
}

std::vector<QuasiEnergy> quasi_energies(const ExtendedSpaceProblem& prob, const std::vector<double>& static_levels,
                                        const StateVector* probe) {
  if (static_levels.empty()) throw InvalidArgument("quasi_energies: static reference levels required");
  const Eigen::Index d = prob.base.dim;
  const double omega = prob.base.base_frequency;
  if (probe && probe->size() != d) throw DimensionError("quasi_energies: probe state dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(prob.matrix);
  if (es.info() != Eigen::Success) throw ConvergenceError("quasi_energies: eigensolver failed");

  std::vector<QuasiEnergy> out;
  const int blocks = 2 * prob.p_max + 1;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto y = es.eigenvectors().col(i);
    double centroid = 0.0;
    for (int a = 0; a < blocks; ++a) centroid += (a - prob.p_max) * y.segment(a * d, d).squaredNorm();
    if (std::abs(centroid) > 0.5 * prob.p_max) continue;

    QuasiEnergy q;
    q.energy = es.eigenvalues()[i];
    q.harmonic_centroid = centroid;
    const double unshifted = q.energy - std::round(centroid) * omega;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < static_levels.size(); ++l) {
      const double dist = std::abs(unshifted - static_levels[l]);
      if (dist < best) {
        best = dist;
        q.level = static_cast<int>(l);
      }
    }
    const double ref = static_levels[static_cast<std::size_t>(q.level)];
    q.band = omega > 0.0 ? static_cast<int>(std::floor((q.energy - ref) / omega + 0.5)) : 0;
    const double zero_block = y.segment(prob.p_max * d, d).squaredNorm();
    if (probe) {
      Complex overlap = 0.0;
      for (int a = 0; a < blocks; ++a) overlap += y.segment(a * d, d).dot(*probe);
      q.weight_hint = std::norm(overlap) * zero_block;
    } else {
      q.weight_hint = zero_block;
    }
    out.push_back(q);
  }
  std::sort(out.begin(), out.end(), [](const QuasiEnergy& a, const QuasiEnergy& b) { return a.energy < b.energy; });
  return out;
}

HolonomyResult holonomy_from_frames(const std::vector<ComplexMatrix>& frames) {
  if (frames.size() < 2) throw InvalidArgument("holonomy: need at least two frames");
  ComplexMatrix transported = frames.front();
  for (std::size_t k = 1; k < frames.size(); ++k) {
    const ComplexMatrix& f = frames[k];
    if (f.rows() != transported.rows() || f.cols() != transported.cols()) {
      throw DimensionError("holonomy: frames have inconsistent shapes");
    }
    transported = f * unitary_part(f.adjoint() * transported);
  }
  return summarize(frames.front().adjoint() * transported);
}

HolonomyResult wz_holonomy(const NQRDriveSpec& spec, DoubletLevel level, int n_path_steps) {
  validate(spec);
  if (n_path_steps < 100) throw InvalidArgument("wz_holonomy: n_path_steps must be >= 100");
  const auto& s = spin32();
  const double st = std::sin(spec.theta);
  const double ct = std::cos(spec.theta);
  std::vector<ComplexMatrix> frames;
  frames.reserve(static_cast<std::size_t>(n_path_steps) + 1);
  for (int k = 0; k <= n_path_steps; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_path_steps;
    const ComplexMatrix bs = spec.B * (st * std::cos(phi) * s.x + st * std::sin(phi) * s.y + ct * s.z);
    const ComplexMatrix h = bs * bs;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    const auto& e = es.eigenvalues();
    const double spread = level == DoubletLevel::lower ? e[1] - e[0] : e[3] - e[2];
    const double gap = e[2] - e[1];
    if (!(gap > 1e-6 * (1.0 + std::abs(e[3]))) || spread > 0.5 * gap) {
      throw TrackingError("wz_holonomy: doublet is not separated at phi = " + std::to_string(phi));
    }
    frames.push_back(es.eigenvectors().middleCols(level == DoubletLevel::lower ? 0 : 2, 2));
  }
  return holonomy_from_frames(frames);
}

double berry_phase_from_shift(double delta_e, double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("berry_phase_from_shift: Omega must be > 0");
  return wrap_phase(2.0 * std::numbers::pi * delta_e / omega);
}

double wilson_loop_from_split(double delta_e_split, double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("wilson_loop_from_split: Omega must be > 0");
  if (delta_e_split < 0.0 || delta_e_split > omega) throw InvalidArgument("wilson_loop_from_split: split must lie in [0, Omega]");
  return 2.0 * std::cos(std::numbers::pi * delta_e_split / omega);
}

}  // namespace uqcs
