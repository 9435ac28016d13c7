#pragma once

#include <functional>
#include <vector>

#include "ssrom/linalg.hpp"

namespace ssrom {

// One separable load component shape * amplitude(t). An empty amplitude is
// the constant 1.
struct ForceTerm {
  Vector shape;
  std::function<double(double)> amplitude;

  double at(double t) const { return amplitude ? amplitude(t) : 1.0; }
};

// M x'' + C x' + K x = f(t) subject to B^T x = 0. A static system K x = f
// leaves mass and damping empty (0x0).
struct LinearSecondOrderSystem {
  Matrix mass;
  Matrix damping;
  Matrix stiffness;
  std::vector<ForceTerm> force;
  Matrix constraints;  // n x n_c, possibly n x 0

  Eigen::Index dim() const noexcept { return stiffness.rows(); }
  bool is_static() const noexcept { return mass.size() == 0; }
  bool has_damping() const noexcept { return damping.size() != 0; }

  Vector force_at(double t) const;

  // Shape checks, finiteness, and symmetry of M and K within 1e-10 relative.
  void validate() const;
};

LinearSecondOrderSystem make_static_system(Matrix stiffness, Vector force, Matrix constraints = {});

}  // namespace ssrom
