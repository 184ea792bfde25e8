#include "liedg/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "liedg/quadrature.hpp"

namespace liedg {

namespace {

std::vector<double> lagrange_coefficients(const std::vector<double>& nodes, int j) {
  std::vector<double> poly{1.0};
  for (int m = 0; m < static_cast<int>(nodes.size()); ++m) {
    if (m == j) continue;
    const double scale = 1.0 / (nodes[j] - nodes[m]);
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k] * scale;
      next[k] -= poly[k] * nodes[m] * scale;
    }
    poly = std::move(next);
  }
  return poly;
}

double integrate_monomials(const std::vector<double>& coeffs, double tau) {
  double sum = 0.0;
  double power = tau;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    sum += coeffs[k] * power / static_cast<double>(k + 1);
    power *= tau;
  }
  return sum;
}

}  // namespace

void StepConfig::validate() const {
  if (h == 0.0 || !std::isfinite(h)) throw InvalidSpec("step size must be finite and nonzero");
  if (!(solver_tol > 0.0)) throw InvalidSpec("solver_tol must be positive");
  if (max_iter < 1) throw InvalidSpec("max_iter must be at least 1");
  if (stage_quadrature_nodes < 1 || stage_quadrature_nodes > 32)
    throw InvalidSpec("stage_quadrature_nodes must be in [1, 32]");
}

FixedPointResult fixed_point_solve(const Vec& initial_guess, const std::function<Vec(const Vec&)>& update,
                                   double tol, int max_iter) {
  FixedPointResult result{initial_guess, 0, 0.0};
  for (int it = 1; it <= max_iter; ++it) {
    Vec next = update(result.z);
    result.residual = (next - result.z).norm();
    result.iterations = it;
    const double scale = std::max(1.0, next.norm());
    if (!next.allFinite()) throw SolverError("fixed-point iteration produced non-finite values", result.residual, it);
    result.z = std::move(next);
    if (result.residual <= tol * scale) return result;
  }
  throw SolverError("fixed-point iteration did not converge", result.residual, result.iterations);
}

namespace {

// Fixed-point iteration that gives up early once the map is seen to expand.
std::optional<FixedPointResult> try_fixed_point(const Vec& initial_guess,
                                                const std::function<Vec(const Vec&)>& update, double tol,
                                                int max_iter) {
  FixedPointResult result{initial_guess, 0, 0.0};
  int growth = 0;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iter; ++it) {
    Vec next = update(result.z);
    if (!next.allFinite()) return std::nullopt;
    result.residual = (next - result.z).norm();
    result.iterations = it;
    const double scale = std::max(1.0, next.norm());
    result.z = std::move(next);
    if (result.residual <= tol * scale) return result;
    growth = result.residual > previous ? growth + 1 : 0;
    if (growth >= 2) return std::nullopt;
    previous = result.residual;
  }
  return std::nullopt;
}

}  // namespace

FixedPointResult newton_solve(const Vec& initial_guess, const std::function<Vec(const Vec&)>& update, double tol,
                              int max_iter) {
  const Eigen::Index n = initial_guess.size();
  FixedPointResult result{initial_guess, 0, 0.0};
  for (int it = 1; it <= max_iter; ++it) {
    const Vec r = update(result.z) - result.z;
    result.residual = r.norm();
    result.iterations = it;
    if (!r.allFinite()) throw SolverError("Newton iteration produced non-finite values", result.residual, it);
    if (result.residual <= tol * std::max(1.0, result.z.norm())) return result;
    Mat jac(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      Vec zk = result.z;
      const double eps = 1e-7 * std::max(1.0, std::abs(zk[k]));
      zk[k] += eps;
      jac.col(k) = (update(zk) - zk - r) / eps;
    }
    result.z -= jac.partialPivLu().solve(r);
  }
  throw SolverError("Newton iteration did not converge", result.residual, result.iterations);
}

FixedPointResult solve_increment(const Vec& initial_guess, const std::function<Vec(const Vec&)>& update,
                                 double tol, int max_iter, SolverKind kind) {
  switch (kind) {
    case SolverKind::FixedPoint: return fixed_point_solve(initial_guess, update, tol, max_iter);
    case SolverKind::Newton: return newton_solve(initial_guess, update, tol, max_iter);
    case SolverKind::Auto: break;
  }
  if (auto r = try_fixed_point(initial_guess, update, tol, max_iter)) return *r;
  return newton_solve(initial_guess, update, tol, max_iter);
}

AlgebraElement fixed_point_solve(const AlgebraElement& initial_guess,
                                 const std::function<AlgebraElement(const AlgebraElement&)>& update, double tol,
                                 int max_iter, int* iterations) {
  const FixedPointResult r = fixed_point_solve(
      initial_guess.coords, [&](const Vec& z) { return update(AlgebraElement(z)).coords; }, tol, max_iter);
  if (iterations) *iterations = r.iterations;
  return AlgebraElement(r.z);
}

BivectorForm discrete_bivector(const GroupProblem& problem, const GroupElement& x, const AlgebraElement& eta) {
  if (problem.constant_bivector) return problem.exact_bivector(x);
  return problem.exact_bivector(problem.group.compose(problem.group.exp(0.5 * eta), x));
}

GroupElement dg_step(const GroupElement& x, const StepConfig& cfg, const GroupProblem& problem) {
  cfg.validate();
  const LieGroup& group = problem.group;
  const auto update = [&](const AlgebraElement& z) {
    const GroupElement v = group.compose(group.exp(z), x);
    const Covector dbar = discrete_differential(group, problem.integral, x, v, z, cfg.scheme);
    return cfg.h * discrete_bivector(problem, x, z).contract(dbar);
  };
  const FixedPointResult r = solve_increment(
      (cfg.h * problem.field(x)).coords, [&](const Vec& z) { return update(AlgebraElement(z)).coords; },
      cfg.solver_tol, cfg.max_iter, cfg.solver);
  return group.compose(group.exp(AlgebraElement(r.z)), x);
}

ManifoldPoint manifold_dg_step(const ManifoldPoint& x, const StepConfig& cfg, const SphereProblem& problem) {
  cfg.validate();
  const auto update = [&](const Vec& qv) -> Vec {
    const ManifoldPoint q = ManifoldPoint::normalized(qv);
    const ManifoldPoint c = center(x, q, problem.center);
    CotangentVector dbar = [&] {
      switch (cfg.scheme.tag) {
        case DiffScheme::AVF: return ddiff_manifold_avf(problem.integral, x, q, c, cfg.scheme.quadrature_nodes);
        case DiffScheme::Gonzalez: return ddiff_manifold_gonzalez(problem.integral, x, q, c);
        case DiffScheme::MidpointUncorrected: return ddiff_manifold_midpoint(problem.integral, c);
      }
      throw InvalidSpec("unknown discrete differential scheme");
    }();
    const Vec w = retract_inverse(c, x).vec + cfg.h * problem.discrete_bivector(x, q).contract(dbar.vec);
    return retract(TangentVector::project(c, w)).coords();
  };
  const Vec guess = retract(TangentVector::project(x, cfg.h * problem.field(x.coords()))).coords();
  const FixedPointResult r = solve_increment(guess, update, cfg.solver_tol, cfg.max_iter, cfg.solver);
  return ManifoldPoint::normalized(r.z);
}

CollocationTableau::CollocationTableau(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size())
    throw InvalidSpec("collocation tableau needs matching, nonempty nodes and weights");
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] >= 0.0 && nodes_[i] <= 1.0)) throw InvalidSpec("collocation nodes must lie in [0, 1]");
    if (weights_[i] == 0.0) throw InvalidSpec("collocation weights must be nonzero");
    for (std::size_t k = 0; k < i; ++k)
      if (nodes_[k] == nodes_[i]) throw InvalidSpec("collocation nodes must be distinct");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidSpec("collocation weights must sum to 1");
  for (int j = 0; j < stages(); ++j) coeffs_.push_back(lagrange_coefficients(nodes_, j));
}

CollocationTableau CollocationTableau::gauss(int s) {
  const QuadratureRule rule = gauss_legendre_nodes(s);
  std::vector<double> weights(s);
  for (int j = 0; j < s; ++j) weights[j] = integrate_monomials(lagrange_coefficients(rule.nodes, j), 1.0);
  return CollocationTableau(rule.nodes, weights);
}

double CollocationTableau::lagrange(int j, double tau) const {
  const auto& a = coeffs_.at(j);
  double value = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) value = value * tau + *it;
  return value;
}

double CollocationTableau::lagrange_integral(int j, double tau) const {
  return integrate_monomials(coeffs_.at(j), tau);
}

AlgebraElement CollocationState::sigma(const CollocationTableau& tableau, double h, double tau) const {
  AlgebraElement out = AlgebraElement::zero(slopes.front().size());
  for (int j = 0; j < tableau.stages(); ++j) out += (h * tableau.lagrange_integral(j, tau)) * slopes[j];
  return out;
}

GroupElement collocation_step(const GroupElement& x0, const CollocationTableau& tableau, const StepConfig& cfg,
                              const GroupProblem& problem, CollocationState* state_out) {
  cfg.validate();
  const LieGroup& group = problem.group;
  const int s = tableau.stages();
  const int n = group.algebra_dim();
  const QuadratureRule& rule = gauss_legendre_cached(cfg.stage_quadrature_nodes);
  const double h = cfg.h;

  const auto unpack = [&](const Vec& packed) {
    CollocationState st;
    for (int j = 0; j < s; ++j) st.slopes.emplace_back(Vec(packed.segment(j * n, n)));
    for (int j = 0; j < s; ++j) st.stages.push_back(st.sigma(tableau, h, tableau.nodes()[j]));
    return st;
  };

  const auto update = [&](const Vec& packed) -> Vec {
    const CollocationState st = unpack(packed);
    std::vector<Covector> averaged(s, Covector::zero(n));
    for (int q = 0; q < rule.size(); ++q) {
      const AlgebraElement sq = st.sigma(tableau, h, rule.nodes[q]);
      const Covector g = group.dexp_dual(sq, problem.integral.differential(group.compose(group.exp(sq), x0)));
      for (int j = 0; j < s; ++j) averaged[j] += (rule.weights[q] * tableau.lagrange(j, rule.nodes[q])) * g;
    }
    Vec next(s * n);
    for (int j = 0; j < s; ++j) {
      const AlgebraElement& sj = st.stages[j];
      const Covector dbar = (1.0 / tableau.weights()[j]) * group.dexpinv_dual(sj, averaged[j]);
      const BivectorForm omega = problem.exact_bivector(group.compose(group.exp(sj), x0));
      next.segment(j * n, n) = group.dexpinv(sj, omega.contract(dbar)).coords;
    }
    return next;
  };

  const Vec f0 = problem.field(x0).coords;
  Vec guess(s * n);
  for (int j = 0; j < s; ++j) guess.segment(j * n, n) = f0;
  const FixedPointResult r = solve_increment(guess, update, cfg.solver_tol, cfg.max_iter, cfg.solver);
  const CollocationState st = unpack(r.z);
  const GroupElement x1 = group.compose(group.exp(st.sigma(tableau, h, 1.0)), x0);
  if (state_out) *state_out = st;
  return x1;
}

GroupElement heun_step(const GroupElement& x, double h, const GroupProblem& problem) {
  const LieGroup& group = problem.group;
  const AlgebraElement k1 = problem.field(x);
  const AlgebraElement k2 = problem.field(group.compose(group.exp(h * k1), x));
  return group.compose(group.exp(0.5 * h * (k1 + k2)), x);
}

}  // namespace liedg
