#pragma once

#include <span>
#include <vector>

#include "uqcs/hamiltonians.hpp"
#include "uqcs/linalg.hpp"

namespace uqcs {

enum class GeneratorKind { hermitian_static, non_hermitian_static, driven };

const char* to_string(GeneratorKind kind);

// What drives the evolution: a fixed matrix, or the periodically driven NQR model.
struct Generator {
  GeneratorKind kind = GeneratorKind::hermitian_static;
  ComplexMatrix h;
  NQRDriveSpec drive;
  int substeps_per_unit_time = 0;  // driven only; 0 selects default_substeps()

  static Generator fixed(ComplexMatrix h);
  static Generator driven_nqr(const NQRDriveSpec& spec, int substeps_per_unit_time = 0);

  Eigen::Index dim() const;
  bool is_static() const { return kind != GeneratorKind::driven; }
};

struct PropagatorGrid {
  std::vector<double> times;
  std::vector<ComplexMatrix> operators;
  GeneratorKind kind = GeneratorKind::hermitian_static;
};

ComplexMatrix evolve_static(const ComplexMatrix& h, double t);

// Midpoint exponential product on the step lattice k*dt, dt = T/ceil(T*s)
// (T = 2 pi / Omega) so each period holds a whole number of steps. Times
// off the lattice finish with one partial midpoint step. Negative t
// evolves backward.
ComplexMatrix evolve_driven(const NQRDriveSpec& spec, double t, int substeps_per_unit_time);

// ceil(max(100, 100 * max_t ||H(t)||_2)).
int default_substeps(const NQRDriveSpec& spec);

PropagatorGrid propagator_grid(const Generator& source, std::span<const double> times);

}  // namespace uqcs
