#include "ssrom/system.hpp"

#include <string>

#include "ssrom/error.hpp"

namespace ssrom {

namespace {

void check_square(const Matrix& a, Eigen::Index n, const char* name) {
  if (a.rows() != n || a.cols() != n) {
    throw InputError(std::string(name) + " is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!a.allFinite()) throw InputError(std::string(name) + " contains non-finite entries");
}

void check_symmetric(const Matrix& a, const char* name) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw InputError(std::string(name) + " is not symmetric");
  }
}

}  // namespace

Vector LinearSecondOrderSystem::force_at(double t) const {
  Vector f = Vector::Zero(dim());
  for (const auto& term : force) f += term.at(t) * term.shape;
  return f;
}

void LinearSecondOrderSystem::validate() const {
  const Eigen::Index n = dim();
  if (n < 1) throw InputError("system has no degrees of freedom");
  check_square(stiffness, n, "stiffness");
  check_symmetric(stiffness, "stiffness");
  if (!is_static()) {
    check_square(mass, n, "mass");
    check_symmetric(mass, "mass");
  }
  if (has_damping()) check_square(damping, n, "damping");
  for (const auto& term : force) {
    if (term.shape.size() != n) throw InputError("force shape length does not match system dimension");
    if (!term.shape.allFinite()) throw InputError("force shape contains non-finite entries");
  }
  if (constraints.size() != 0 && constraints.rows() != n) {
    throw InputError("constraint matrix has " + std::to_string(constraints.rows()) + " rows, expected " +
                     std::to_string(n));
  }
}

LinearSecondOrderSystem make_static_system(Matrix stiffness, Vector force, Matrix constraints) {
  LinearSecondOrderSystem system;
  system.stiffness = std::move(stiffness);
  system.force.push_back(ForceTerm{std::move(force), {}});
  system.constraints = std::move(constraints);
  system.validate();
  return system;
}

}  // namespace ssrom
