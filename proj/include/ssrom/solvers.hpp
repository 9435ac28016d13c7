#pragma once

#include <filesystem>
#include <vector>

#include "ssrom/system.hpp"

namespace ssrom {

// gamma = 1/2, beta = 1/4 is the average-acceleration scheme.
struct NewmarkConfig {
  double gamma = 0.5;
  double beta = 0.25;
  double dt = 0.0;
  int n_steps = 0;

  void validate() const;
};

struct Trajectory {
  Vector times;         // n_steps + 1
  Matrix displacement;  // dim x (n_steps + 1)
  Matrix velocity;
  Matrix acceleration;
};

// C = beta_h K.
Matrix rayleigh_damping(const Matrix& stiffness, double beta_h);

// Newmark-beta in acceleration form. The initial acceleration solves
// M a0 = f(0) - C v0 - K d0; the effective matrix M + gamma dt C + beta dt^2 K
// is factored once and reused for every step.
Trajectory newmark_integrate(const LinearSecondOrderSystem& system, const NewmarkConfig& config,
                             const Vector& d0, const Vector& v0);
Trajectory newmark_integrate(const LinearSecondOrderSystem& system, const NewmarkConfig& config);

// K x = f with a dense LU. Throws NumericalError with the reciprocal
// condition estimate when K is numerically singular.
Vector solve_static(const Matrix& stiffness, const Vector& force);

// K x = f on {x : B^T x = 0}. Coordinate constraints (each column of B a
// scaled unit vector) are eliminated so the constrained entries are exactly
// zero; general B goes through an orthonormal null-space basis.
Vector solve_static(const Matrix& stiffness, const Vector& force, const Matrix& constraints);

// CSV with a time column followed by d_i, v_i, a_i for each listed row.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory,
                          const std::vector<Eigen::Index>& rows);

double total_energy(const LinearSecondOrderSystem& system, const Vector& d, const Vector& v);

}  // namespace ssrom
