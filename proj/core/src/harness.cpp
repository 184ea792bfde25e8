#include "liedg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

namespace liedg {

namespace {

constexpr ProblemId kProblems[] = {ProblemId::SphereRB, ProblemId::QuatRB, ProblemId::PseudoRigid};
constexpr MethodId kMethods[] = {MethodId::DgGonzalez, MethodId::DgAvf, MethodId::Colloc4, MethodId::SymAlpha0,
                                 MethodId::Heun};

std::string step_prefix(long n) { return "step " + std::to_string(n) + ": "; }

}  // namespace

std::string to_string(ProblemId id) {
  switch (id) {
    case ProblemId::SphereRB: return "sphere-rb";
    case ProblemId::QuatRB: return "quat-rb";
    case ProblemId::PseudoRigid: return "pseudo-rigid";
  }
  return "?";
}

std::string to_string(MethodId id) {
  switch (id) {
    case MethodId::DgGonzalez: return "dg-gonzalez";
    case MethodId::DgAvf: return "dg-avf";
    case MethodId::Colloc4: return "colloc4";
    case MethodId::SymAlpha0: return "sym-alpha0";
    case MethodId::Heun: return "heun";
  }
  return "?";
}

ProblemId parse_problem(const std::string& name) {
  for (ProblemId id : kProblems)
    if (to_string(id) == name) return id;
  throw InvalidSpec("unknown problem '" + name + "'");
}

MethodId parse_method(const std::string& name) {
  for (MethodId id : kMethods)
    if (to_string(id) == name) return id;
  throw InvalidSpec("unknown method '" + name + "'");
}

bool method_supported(ProblemId problem, MethodId method) {
  switch (problem) {
    case ProblemId::SphereRB:
      return method == MethodId::DgGonzalez || method == MethodId::DgAvf || method == MethodId::SymAlpha0;
    case ProblemId::QuatRB: return true;
    case ProblemId::PseudoRigid:
      return method == MethodId::DgGonzalez || method == MethodId::SymAlpha0 || method == MethodId::Heun;
  }
  return false;
}

std::vector<MethodId> supported_methods(ProblemId problem) {
  std::vector<MethodId> out;
  for (MethodId m : kMethods)
    if (method_supported(problem, m)) out.push_back(m);
  return out;
}

bool method_is_symmetric(MethodId method) { return method != MethodId::Heun; }

ExperimentSpec ExperimentSpec::defaults(ProblemId problem, MethodId method) {
  ExperimentSpec spec;
  spec.problem = problem;
  spec.method = method;
  spec.rigid_body =
      problem == ProblemId::QuatRB ? RigidBodyParams::attitude_default() : RigidBodyParams::sphere_default();
  return spec;
}

long ExperimentSpec::steps_for(double step) const {
  const double ratio = t_end / step;
  const long n = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, std::abs(ratio)))
    throw InvalidSpec("t_end " + format_real(t_end) + " is not a multiple of h " + format_real(step));
  return n;
}

void ExperimentSpec::validate() const {
  if (!method_supported(problem, method))
    throw InvalidSpec("method " + to_string(method) + " is not available for " + to_string(problem));
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidSpec("t_end must be finite and >= 0");
  if (!(tol > 0.0)) throw InvalidSpec("tol must be positive");
  if (max_iter < 1) throw InvalidSpec("max_iter must be at least 1");
  if (problem == ProblemId::PseudoRigid) {
    pseudo_rigid.validate();
  } else {
    rigid_body.validate();
    if (rigid_body.m0.norm() == 0.0) throw InvalidSpec("initial momentum must be nonzero");
  }
}

Simulation::Simulation(const ExperimentSpec& spec) : spec_(spec), tableau_(CollocationTableau::gauss(2)) {
  spec_.validate();
  switch (spec_.problem) {
    case ProblemId::SphereRB: sphere_problem_ = sphere_rigid_body(spec_.rigid_body, spec_.center); break;
    case ProblemId::QuatRB: group_problem_ = quaternion_rigid_body(spec_.rigid_body); break;
    case ProblemId::PseudoRigid: group_problem_ = pseudo_rigid_body(spec_.pseudo_rigid); break;
  }
  cfg_.solver_tol = spec_.tol;
  cfg_.max_iter = spec_.max_iter;
  cfg_.stage_quadrature_nodes = spec_.stage_quadrature_nodes;
  cfg_.solver = spec_.solver;
  cfg_.scheme.quadrature_nodes = spec_.avf_nodes;
  switch (spec_.method) {
    case MethodId::DgAvf: cfg_.scheme.tag = DiffScheme::AVF; break;
    case MethodId::SymAlpha0: cfg_.scheme.tag = DiffScheme::MidpointUncorrected; break;
    default: cfg_.scheme.tag = DiffScheme::Gonzalez; break;
  }
}

Vec Simulation::initial_state() const {
  if (sphere_problem_) return sphere_problem_->initial.coords();
  return group_problem_->initial.data();
}

Vec Simulation::step(const Vec& x, double h) const {
  StepConfig cfg = cfg_;
  cfg.h = h;
  if (sphere_problem_) return manifold_dg_step(ManifoldPoint(x), cfg, *sphere_problem_).coords();
  const GroupProblem& problem = *group_problem_;
  const GroupElement g(problem.group.kind(), x);
  switch (spec_.method) {
    case MethodId::Colloc4: return collocation_step(g, tableau_, cfg, problem).data();
    case MethodId::Heun: return heun_step(g, h, problem).data();
    default: return dg_step(g, cfg, problem).data();
  }
}

double Simulation::energy(const Vec& x) const {
  if (sphere_problem_) return sphere_problem_->integral.value(x);
  return group_problem_->integral.value(GroupElement(group_problem_->group.kind(), x));
}

double Simulation::aux(const Vec& x) const {
  if (spec_.problem == ProblemId::PseudoRigid) return Eigen::Map<const Mat3>(x.data()).determinant();
  return x.norm();
}

std::vector<std::string> Simulation::state_names() const {
  switch (spec_.problem) {
    case ProblemId::SphereRB: return {"p1", "p2", "p3"};
    case ProblemId::QuatRB: return {"q0", "q1", "q2", "q3"};
    case ProblemId::PseudoRigid: {
      std::vector<std::string> names;
      for (const char* m : {"F", "P"})
        for (int c = 1; c <= 3; ++c)
          for (int r = 1; r <= 3; ++r) names.push_back(std::string(m) + std::to_string(r) + std::to_string(c));
      return names;
    }
  }
  return {};
}

std::string Simulation::aux_name() const {
  switch (spec_.problem) {
    case ProblemId::SphereRB: return "norm_p";
    case ProblemId::QuatRB: return "norm_q";
    case ProblemId::PseudoRigid: return "det_F";
  }
  return "aux";
}

void Simulation::check_constraints(const Vec& x, long step_index) const {
  if (!x.allFinite()) throw ConstraintViolation(step_prefix(step_index) + "state is not finite");
  const double a = aux(x);
  if (spec_.problem == ProblemId::PseudoRigid) {
    if (!(a > 0.0)) throw ConstraintViolation(step_prefix(step_index) + "det F = " + format_real(a) + " <= 0");
  } else if (std::abs(a - 1.0) > 1e-12) {
    throw ConstraintViolation(step_prefix(step_index) + "norm drifted to " + format_real(a));
  }
}

namespace {

template <typename Visit>
void integrate(const Simulation& sim, double h, long steps, Visit&& visit) {
  Vec x = sim.initial_state();
  sim.check_constraints(x, 0);
  visit(0L, x);
  for (long n = 1; n <= steps; ++n) {
    try {
      x = sim.step(x, h);
    } catch (const SolverError& e) {
      throw e.with_prefix(step_prefix(n));
    } catch (const DomainError& e) {
      throw DomainError(step_prefix(n) + e.what() + "; try a smaller step size");
    }
    sim.check_constraints(x, n);
    visit(n, x);
  }
}

}  // namespace

std::vector<StepRecord> run_trajectory(const ExperimentSpec& spec) {
  const Simulation sim(spec);
  if (!(spec.h > 0.0)) throw InvalidSpec("h must be positive");
  const long steps = spec.steps_for(spec.h);
  std::vector<StepRecord> records;
  records.reserve(static_cast<std::size_t>(steps) + 1);
  double h0 = 0.0;
  integrate(sim, spec.h, steps, [&](long n, const Vec& x) {
    const double energy = sim.energy(x);
    if (n == 0) h0 = energy;
    records.push_back({static_cast<double>(n) * spec.h, x, energy, energy - h0, sim.aux(x)});
  });
  return records;
}

Vec run_to_end(const ExperimentSpec& spec, double h) {
  const Simulation sim(spec);
  if (!(h > 0.0)) throw InvalidSpec("h must be positive");
  Vec last;
  integrate(sim, h, spec.steps_for(h), [&](long, const Vec& x) { last = x; });
  return last;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidSpec("slope fit needs at least two points");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidSpec("log-log fit needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvergenceResult convergence_study(const ExperimentSpec& spec) {
  spec.validate();
  const auto& hs = spec.h_list;
  if (hs.size() < 4) throw InvalidSpec("convergence study needs at least 4 step sizes");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0)) throw InvalidSpec("step sizes must be positive");
    if (i > 0 && !(hs[i] < hs[i - 1])) throw InvalidSpec("h-list must be strictly decreasing");
  }
  if (!(spec.t_end > 0.0)) throw InvalidSpec("convergence study needs t_end > 0");

  ConvergenceResult result;
  result.h = hs;
  result.reference_method = spec.reference_method.value_or(
      method_supported(spec.problem, MethodId::Colloc4) ? MethodId::Colloc4 : spec.method);
  result.reference_h = spec.reference_h.value_or(hs.back() / 8.0);

  ExperimentSpec ref_spec = spec;
  ref_spec.method = result.reference_method;
  auto reference = std::async(std::launch::async, [&] { return run_to_end(ref_spec, result.reference_h); });
  std::vector<std::future<Vec>> runs;
  for (double h : hs) runs.push_back(std::async(std::launch::async, [&spec, h] { return run_to_end(spec, h); }));

  Vec ref;
  try {
    ref = reference.get();
  } catch (...) {
    for (auto& r : runs) r.wait();
    throw;
  }
  for (auto& r : runs) result.error.push_back((r.get() - ref).norm());
  const bool fit = std::all_of(result.error.begin(), result.error.end(), [](double e) { return e > 0.0; });
  result.slope = fit ? loglog_slope(result.h, result.error) : std::nan("");
  return result;
}

ComparisonResult compare_methods(const ExperimentSpec& spec, const std::vector<MethodId>& methods) {
  if (methods.empty()) throw InvalidSpec("compare needs at least one method");
  std::vector<std::future<std::vector<StepRecord>>> runs;
  for (MethodId m : methods) {
    ExperimentSpec s = spec;
    s.method = m;
    s.validate();
    runs.push_back(std::async(std::launch::async, [s] { return run_trajectory(s); }));
  }
  std::vector<std::vector<StepRecord>> traj;
  for (auto& r : runs) traj.push_back(r.get());
  for (const auto& t : traj)
    if (t.size() != traj.front().size()) throw InvalidSpec("compared runs are on different time grids");

  ComparisonResult out;
  out.columns.push_back("t");
  for (MethodId m : methods) out.columns.push_back("H_err_" + to_string(m));

  std::optional<std::size_t> sym, ep;
  if (spec.problem == ProblemId::PseudoRigid) {
    for (std::size_t i = 0; i < methods.size(); ++i) {
      if (methods[i] == MethodId::SymAlpha0 && !sym) sym = i;
      if (methods[i] == MethodId::DgGonzalez && !ep) ep = i;
    }
    if (sym && ep) out.columns.push_back("detF_sym_minus_ep");
  }

  for (std::size_t n = 0; n < traj.front().size(); ++n) {
    std::vector<double> row{traj.front()[n].t};
    for (const auto& t : traj) row.push_back(t[n].H_err);
    if (sym && ep) row.push_back(traj[*sym][n].aux - traj[*ep][n].aux);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace liedg
