#include "ssrom/srom.hpp"

#include <exception>
#include <string>

#include "ssrom/error.hpp"

namespace ssrom {

namespace {

Matrix sandwich(const Matrix& basis, const Matrix& a) {
  if (a.size() == 0) return {};
  return basis.transpose() * a * basis;
}

std::vector<ForceTerm> project_force(const Matrix& basis, const std::vector<ForceTerm>& force) {
  std::vector<ForceTerm> out;
  out.reserve(force.size());
  for (const auto& term : force) out.push_back(ForceTerm{basis.transpose() * term.shape, term.amplitude});
  return out;
}

Eigen::PartialPivLU<Matrix> factor_reduced(const Matrix& k) {
  Eigen::PartialPivLU<Matrix> lu(k);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw NumericalError("reduced stiffness is singular (reciprocal condition estimate " + std::to_string(rcond) +
                         ")");
  }
  return lu;
}

const Matrix& channel_source(const Trajectory& t, Quantity q) {
  switch (q) {
    case Quantity::Displacement: return t.displacement;
    case Quantity::Velocity: return t.velocity;
    case Quantity::Acceleration: return t.acceleration;
  }
  return t.displacement;
}

SromEnsemble empty_ensemble(const SubspaceModel& model, const EnsembleOptions& options) {
  if (options.n_draws < 1) throw InputError("ensemble: n_draws must be positive");
  if (options.fixed_indices && model.kind() != SamplerKind::Bootstrap) {
    throw InputError("ensemble: fixed resample indices require the bootstrap sampler");
  }
  SromEnsemble e;
  e.seed = options.seed;
  e.kind = model.kind();
  e.subspace_dim = model.subspace_dim();
  e.concentration = model.concentration();
  e.reduced_dim = model.reduced_dim();
  e.draws.resize(static_cast<std::size_t>(options.n_draws), SromDraw{0, 0, {}, {}, {}});
  return e;
}

SromDraw run_draw(const TwoStageOperators& ops, const SubspaceModel& model, const DrawSolver& solver,
                  const EnsembleOptions& options, int index) {
  std::optional<SampledBasis> sample;
  if (options.fixed_indices) {
    sample.emplace(SampledBasis{sample_bootstrap(model, *options.fixed_indices), options.seed, 0});
  } else {
    sample.emplace(sample_with_redraw(model, options.seed, static_cast<std::uint64_t>(index)));
  }
  const ReducedSystem reduced = ops.reduce(sample->coordinates);
  DrawResult result = solver(reduced);
  SromDraw draw{sample->seed, sample->degenerate_attempts, sample->coordinates.basis(), {}, std::move(result.qoi)};
  if (options.keep_solutions) draw.solution = std::move(result.solution);
  return draw;
}

void finish_ensemble(SromEnsemble& e, const EnsembleOptions& options) {
  for (const auto& d : e.draws) e.degenerate_redraws += d.degenerate_attempts;
  if (e.degenerate_redraws > options.max_degenerate_fraction * options.n_draws) {
    throw NumericalError("ensemble aborted: " + std::to_string(e.degenerate_redraws) + " degenerate draws in " +
                         std::to_string(options.n_draws) + " exceeds the allowed fraction " +
                         std::to_string(options.max_degenerate_fraction));
  }
}

}  // namespace

LinearSecondOrderSystem ReducedSystem::as_system() const {
  LinearSecondOrderSystem s;
  s.mass = mass;
  s.damping = damping;
  s.stiffness = stiffness;
  s.force = force;
  return s;
}

ReducedSystem galerkin_project(const LinearSecondOrderSystem& system, const SubspaceBasis& basis) {
  if (basis.ambient_dim() != system.dim()) {
    throw InputError("galerkin_project: basis has " + std::to_string(basis.ambient_dim()) +
                     " rows, system dimension is " + std::to_string(system.dim()));
  }
  const Matrix& v = basis.basis();
  return ReducedSystem{sandwich(v, system.mass), sandwich(v, system.damping), sandwich(v, system.stiffness),
                       project_force(v, system.force), basis, std::nullopt};
}

ReducedSystem TwoStageOperators::reduce(const SubspaceBasis& coordinates) const {
  if (coordinates.ambient_dim() != rank()) {
    throw InputError("two-stage reduce: coordinates have " + std::to_string(coordinates.ambient_dim()) +
                     " rows, stage-1 rank is " + std::to_string(rank()));
  }
  const Matrix& u = coordinates.basis();
  return ReducedSystem{sandwich(u, mass),
                       sandwich(u, damping),
                       sandwich(u, stiffness),
                       project_force(u, force),
                       SubspaceBasis(left * u),
                       coordinates};
}

TwoStageOperators two_stage_reduce(const LinearSecondOrderSystem& system, const CompactSvd& svd) {
  if (svd.left.rows() != system.dim()) {
    throw InputError("two_stage_reduce: V_r has " + std::to_string(svd.left.rows()) +
                     " rows, system dimension is " + std::to_string(system.dim()));
  }
  const Matrix& v = svd.left;
  return TwoStageOperators{v, sandwich(v, system.mass), sandwich(v, system.damping),
                           sandwich(v, system.stiffness), project_force(v, system.force)};
}

Vector solve_reduced_static_projected(const ReducedSystem& reduced, const Vector& reduced_force) {
  if (reduced_force.size() != reduced.dim()) throw InputError("solve_reduced_static: force size mismatch");
  return factor_reduced(reduced.stiffness).solve(reduced_force);
}

Vector solve_reduced_static(const ReducedSystem& reduced, const Vector& ambient_force) {
  if (ambient_force.size() != reduced.basis.ambient_dim()) {
    throw InputError("solve_reduced_static: force has the wrong length");
  }
  return solve_reduced_static_projected(reduced, reduced.project(ambient_force));
}

Matrix reconstruct(const SubspaceBasis& basis, const Matrix& q, const OutputSelector& selector) {
  if (q.rows() != basis.subspace_dim()) throw InputError("reconstruct: q has the wrong number of rows");
  if (selector.rows.empty()) return basis.basis() * q;
  Matrix rows(static_cast<Eigen::Index>(selector.rows.size()), basis.subspace_dim());
  for (std::size_t i = 0; i < selector.rows.size(); ++i) {
    const Eigen::Index r = selector.rows[i];
    if (r < 0 || r >= basis.ambient_dim()) {
      throw InputError("reconstruct: selector row " + std::to_string(r) + " out of range");
    }
    rows.row(static_cast<Eigen::Index>(i)) = basis.basis().row(r);
  }
  return rows * q;
}

Vector reconstruct(const SubspaceBasis& basis, const Vector& q, const OutputSelector& selector) {
  return reconstruct(basis, Matrix(q), selector).col(0);
}

SubspaceBasis leading_coordinates(Eigen::Index r, int k) {
  return SubspaceBasis(Matrix::Identity(r, k));
}

DrawSolver make_static_solver(const TwoStageOperators& ops, const std::vector<Vector>& ambient_loads,
                              OutputSelector selector) {
  std::vector<Vector> stage1;
  stage1.reserve(ambient_loads.size());
  for (const auto& f : ambient_loads) stage1.push_back(ops.project(f));
  return [ambient = ambient_loads, stage1 = std::move(stage1), selector = std::move(selector)](
             const ReducedSystem& reduced) {
    const auto lu = factor_reduced(reduced.stiffness);
    DrawResult out;
    out.solution.resize(reduced.dim(), static_cast<Eigen::Index>(ambient.size()));
    for (std::size_t c = 0; c < ambient.size(); ++c) {
      const Vector projected = reduced.coordinates ? Vector(reduced.coordinates->basis().transpose() * stage1[c])
                                                   : reduced.project(ambient[c]);
      out.solution.col(static_cast<Eigen::Index>(c)) = lu.solve(projected);
    }
    const Matrix x = reconstruct(reduced.basis, out.solution, selector);
    for (Eigen::Index c = 0; c < x.cols(); ++c) out.qoi.push_back(x.col(c));
    return out;
  };
}

std::vector<Vector> monitor(const Trajectory& trajectory, const std::vector<MonitoredDof>& channels) {
  std::vector<Vector> out;
  for (const auto& ch : channels) {
    const Matrix& src = channel_source(trajectory, ch.quantity);
    if (ch.row < 0 || ch.row >= src.rows()) throw InputError("monitor: row out of range");
    out.push_back(src.row(ch.row).transpose());
  }
  return out;
}

std::vector<Vector> monitor(const Trajectory& reduced, const SubspaceBasis& basis,
                            const std::vector<MonitoredDof>& channels) {
  std::vector<Vector> out;
  for (const auto& ch : channels) {
    const Matrix series = reconstruct(basis, channel_source(reduced, ch.quantity), OutputSelector{{ch.row}});
    out.push_back(series.row(0).transpose());
  }
  return out;
}

DrawSolver make_dynamic_solver(const NewmarkConfig& config, std::vector<MonitoredDof> channels) {
  config.validate();
  return [config, channels = std::move(channels)](const ReducedSystem& reduced) {
    const Trajectory q = newmark_integrate(reduced.as_system(), config);
    DrawResult out;
    out.qoi = monitor(q, reduced.basis, channels);
    out.solution = q.displacement;
    return out;
  };
}

SampledBasis sample_with_redraw(const SubspaceModel& model, std::uint64_t seed, std::uint64_t draw,
                                int max_attempts) {
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t s = derive_seed(seed, draw, static_cast<std::uint64_t>(attempt));
    Rng rng(s);
    try {
      return SampledBasis{sample_reduced(model, rng), s, attempt};
    } catch (const NumericalError&) {
      if (attempt + 1 >= max_attempts) throw;
    }
  }
}

Matrix SromEnsemble::qoi_matrix(std::size_t channel) const {
  if (draws.empty() || channel >= channels()) throw InputError("qoi_matrix: channel out of range");
  const Eigen::Index t = draws.front().qoi[channel].size();
  Matrix out(static_cast<Eigen::Index>(draws.size()), t);
  for (std::size_t i = 0; i < draws.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = draws[i].qoi[channel].transpose();
  return out;
}

nlohmann::json SromEnsemble::manifest() const {
  std::vector<std::uint64_t> seeds;
  for (const auto& d : draws) seeds.push_back(d.seed);
  return {{"sampler", std::string(to_string(kind))},
          {"seed", seed},
          {"subspace_dim", subspace_dim},
          {"concentration", concentration},
          {"reduced_dim", reduced_dim},
          {"n_draws", draws.size()},
          {"degenerate_redraws", degenerate_redraws},
          {"channels", channels()},
          {"draw_seeds", seeds}};
}

SromEnsemble build_ensemble(const TwoStageOperators& ops, const SubspaceModel& model, const DrawSolver& solver,
                            const EnsembleOptions& options) {
  SromEnsemble e = empty_ensemble(model, options);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < options.n_draws; ++i) {
    try {
      e.draws[static_cast<std::size_t>(i)] = run_draw(ops, model, solver, options, i);
    } catch (...) {
#pragma omp critical(ssrom_ensemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  finish_ensemble(e, options);
  return e;
}

SromEnsemble build_ensemble(const LinearSecondOrderSystem& system, const SubspaceModel& model,
                            const DrawSolver& solver, const EnsembleOptions& options) {
  return build_ensemble(two_stage_reduce(system, model.svd()), model, solver, options);
}

SromEnsemble build_ensemble_serial(const TwoStageOperators& ops, const SubspaceModel& model,
                                   const DrawSolver& solver, const EnsembleOptions& options) {
  SromEnsemble e = empty_ensemble(model, options);
  for (int i = 0; i < options.n_draws; ++i) e.draws[static_cast<std::size_t>(i)] = run_draw(ops, model, solver, options, i);
  finish_ensemble(e, options);
  return e;
}

}  // namespace ssrom
