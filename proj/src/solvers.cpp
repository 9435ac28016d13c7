#include "ssrom/solvers.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ssrom/error.hpp"
#include "ssrom/matrix_io.hpp"

namespace ssrom {

namespace {

constexpr double kSingularRcond = 1e-14;

Eigen::PartialPivLU<Matrix> factor_or_throw(const Matrix& a, const char* what) {
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > kSingularRcond)) {
    throw NumericalError(std::string(what) + " is singular (reciprocal condition estimate " +
                         std::to_string(rcond) + ")");
  }
  return lu;
}

// Column j is a multiple of a unit vector; returns its row or -1.
Eigen::Index coordinate_row(const Matrix& b, Eigen::Index j) {
  Eigen::Index row = -1;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    if (b(i, j) != 0.0) {
      if (row >= 0) return -1;
      row = i;
    }
  }
  return row;
}

}  // namespace

void NewmarkConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("Newmark: dt must be positive");
  if (n_steps < 0) throw InputError("Newmark: n_steps must be non-negative");
  if (!(gamma >= 0.5) || !(2.0 * beta >= gamma)) {
    throw InputError("Newmark: parameters must satisfy 2*beta >= gamma >= 1/2");
  }
}

Matrix rayleigh_damping(const Matrix& stiffness, double beta_h) {
  if (!(beta_h >= 0.0)) throw InputError("rayleigh_damping: beta_h must be non-negative");
  return beta_h * stiffness;
}

Trajectory newmark_integrate(const LinearSecondOrderSystem& system, const NewmarkConfig& config,
                             const Vector& d0, const Vector& v0) {
  config.validate();
  if (system.is_static()) throw InputError("Newmark: system has no mass matrix");
  const Eigen::Index n = system.dim();
  if (d0.size() != n || v0.size() != n) throw InputError("Newmark: initial condition size mismatch");

  const double dt = config.dt;
  const double g = config.gamma;
  const double b = config.beta;
  const Matrix damping = system.has_damping() ? system.damping : Matrix::Zero(n, n);

  Trajectory out;
  const Eigen::Index steps = config.n_steps;
  out.times = Vector::LinSpaced(steps + 1, 0.0, dt * static_cast<double>(steps));
  if (steps == 0) out.times(0) = 0.0;
  out.displacement.resize(n, steps + 1);
  out.velocity.resize(n, steps + 1);
  out.acceleration.resize(n, steps + 1);

  // Time-invariant loads reduce to a few shapes; precompute their amplitudes.
  std::vector<Vector> amplitudes;
  amplitudes.reserve(system.force.size());
  for (const auto& term : system.force) {
    Vector a(steps + 1);
    for (Eigen::Index s = 0; s <= steps; ++s) a(s) = term.at(static_cast<double>(s) * dt);
    amplitudes.push_back(std::move(a));
  }
  auto load = [&](Eigen::Index s) {
    Vector f = Vector::Zero(n);
    for (std::size_t t = 0; t < system.force.size(); ++t) f += amplitudes[t](s) * system.force[t].shape;
    return f;
  };

  Vector d = d0;
  Vector v = v0;
  const auto mass_lu = factor_or_throw(system.mass, "Newmark: mass matrix");
  Vector a = mass_lu.solve(load(0) - damping * v - system.stiffness * d);
  out.displacement.col(0) = d;
  out.velocity.col(0) = v;
  out.acceleration.col(0) = a;
  if (steps == 0) return out;

  const Matrix effective = system.mass + g * dt * damping + b * dt * dt * system.stiffness;
  const auto effective_lu = factor_or_throw(effective, "Newmark: effective matrix");

  for (Eigen::Index s = 1; s <= steps; ++s) {
    const Vector d_pred = d + dt * v + (0.5 - b) * dt * dt * a;
    const Vector v_pred = v + (1.0 - g) * dt * a;
    a = effective_lu.solve(load(s) - damping * v_pred - system.stiffness * d_pred);
    d = d_pred + b * dt * dt * a;
    v = v_pred + g * dt * a;
    out.displacement.col(s) = d;
    out.velocity.col(s) = v;
    out.acceleration.col(s) = a;
  }
  if (!out.displacement.allFinite() || !out.velocity.allFinite()) {
    throw NumericalError("Newmark: trajectory became non-finite");
  }
  return out;
}

Trajectory newmark_integrate(const LinearSecondOrderSystem& system, const NewmarkConfig& config) {
  const Vector zero = Vector::Zero(system.dim());
  return newmark_integrate(system, config, zero, zero);
}

Vector solve_static(const Matrix& stiffness, const Vector& force) {
  if (stiffness.rows() != stiffness.cols() || stiffness.rows() != force.size()) {
    throw InputError("solve_static: dimension mismatch");
  }
  const auto lu = factor_or_throw(stiffness, "solve_static: stiffness");
  Vector x = lu.solve(force);
  const double fnorm = force.norm();
  if (fnorm > 0.0 && (stiffness * x - force).norm() > 1e-9 * fnorm) {
    throw NumericalError("solve_static: residual above 1e-9 relative (ill-conditioned stiffness)");
  }
  return x;
}

Vector solve_static(const Matrix& stiffness, const Vector& force, const Matrix& constraints) {
  const Eigen::Index n = stiffness.rows();
  if (constraints.cols() == 0) return solve_static(stiffness, force);
  if (constraints.rows() != n) throw InputError("solve_static: constraint rows do not match stiffness");

  std::vector<bool> fixed(static_cast<std::size_t>(n), false);
  bool coordinate = true;
  for (Eigen::Index j = 0; j < constraints.cols() && coordinate; ++j) {
    const Eigen::Index row = coordinate_row(constraints, j);
    if (row < 0) {
      coordinate = false;
    } else {
      fixed[static_cast<std::size_t>(row)] = true;
    }
  }

  if (coordinate) {
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!fixed[static_cast<std::size_t>(i)]) free.push_back(i);
    }
    const auto nf = static_cast<Eigen::Index>(free.size());
    Matrix kf(nf, nf);
    Vector ff(nf);
    for (Eigen::Index a = 0; a < nf; ++a) {
      ff(a) = force(free[a]);
      for (Eigen::Index b = 0; b < nf; ++b) kf(a, b) = stiffness(free[a], free[b]);
    }
    const Vector xf = solve_static(kf, ff);
    Vector x = Vector::Zero(n);
    for (Eigen::Index a = 0; a < nf; ++a) x(free[a]) = xf(a);
    return x;
  }

  const Eigen::ColPivHouseholderQR<Matrix> qr(constraints);
  const Eigen::Index rank = qr.rank();
  const Matrix q = qr.householderQ();
  const Matrix null_basis = q.rightCols(n - rank);
  const Vector y = solve_static(null_basis.transpose() * stiffness * null_basis, null_basis.transpose() * force);
  return null_basis * y;
}

double total_energy(const LinearSecondOrderSystem& system, const Vector& d, const Vector& v) {
  return 0.5 * v.dot(system.mass * v) + 0.5 * d.dot(system.stiffness * d);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory,
                          const std::vector<Eigen::Index>& rows) {
  std::vector<std::string> header{"time"};
  Matrix table(trajectory.times.size(), static_cast<Eigen::Index>(1 + 3 * rows.size()));
  table.col(0) = trajectory.times;
  Eigen::Index c = 1;
  for (Eigen::Index r : rows) {
    if (r < 0 || r >= trajectory.displacement.rows()) throw InputError("write_trajectory_csv: row out of range");
    const std::string id = std::to_string(r);
    header.insert(header.end(), {"d_" + id, "v_" + id, "a_" + id});
    table.col(c++) = trajectory.displacement.row(r).transpose();
    table.col(c++) = trajectory.velocity.row(r).transpose();
    table.col(c++) = trajectory.acceleration.row(r).transpose();
  }
  io::write_csv(path, table, header);
}

}  // namespace ssrom
