#pragma once

// One-step methods.
//
//   dg_step           x' = exp(h dbarH(x, x') _| omegabar(x, x')) x
//   manifold_dg_step  x' = phi_c(phi_c^{-1}(x) + h dbarH _| omegabar), c = c(x, x')
//   collocation_step  energy-preserving Lie group collocation (Gauss nodes)
//   heun_step         explicit order-2 comparator
//
// The implicit steps are solved on the algebra increment (or on x' for the
// sphere), started from an explicit Euler guess. Plain fixed-point iteration
// is tried first; when the map is not contractive (stiff problems at large
// h) the solve restarts with Newton's method on z - update(z) using a
// finite-difference Jacobian.

#include <functional>
#include <string>
#include <vector>

#include "liedg/bivector.hpp"
#include "liedg/discrete_diff.hpp"
#include "liedg/lie_core.hpp"
#include "liedg/manifold.hpp"

namespace liedg {

enum class SolverKind {
  /// Fixed point, falling back to Newton when the residual stops shrinking.
  Auto,
  FixedPoint,
  Newton,
};

struct StepConfig {
  double h = 0.0;
  /// Increment tolerance, scaled by max(1, |z|).
  double solver_tol = 1e-14;
  int max_iter = 100;
  DiscreteDifferentialScheme scheme;
  /// Gauss nodes for the xi-integrals of the collocation stage differentials.
  int stage_quadrature_nodes = 10;
  SolverKind solver = SolverKind::Auto;

  /// Throws InvalidSpec for h = 0, tol <= 0 or max_iter < 1.
  void validate() const;
};

struct FixedPointResult {
  Vec z;
  int iterations = 0;
  double residual = 0.0;
};

/// Iterates z <- update(z) until |update(z) - z| <= tol max(1, |z|).
/// Throws SolverError with the last residual after max_iter iterations.
FixedPointResult fixed_point_solve(const Vec& initial_guess, const std::function<Vec(const Vec&)>& update,
                                   double tol, int max_iter);
/// Newton iteration on r(z) = update(z) - z with a forward-difference
/// Jacobian; same stopping rule and error behaviour as fixed_point_solve.
FixedPointResult newton_solve(const Vec& initial_guess, const std::function<Vec(const Vec&)>& update, double tol,
                              int max_iter);

/// Dispatch on kind. Auto runs fixed_point_solve and restarts with
/// newton_solve if the residual grows twice in a row or max_iter is hit.
FixedPointResult solve_increment(const Vec& initial_guess, const std::function<Vec(const Vec&)>& update,
                                 double tol, int max_iter, SolverKind kind);

AlgebraElement fixed_point_solve(const AlgebraElement& initial_guess,
                                 const std::function<AlgebraElement(const AlgebraElement&)>& update, double tol,
                                 int max_iter, int* iterations = nullptr);

/// ODE x' = f(x) x on a Lie group with first integral H and an exact
/// bivector omega with omega(x) _| R_x^* dH_x = f(x).
struct GroupProblem {
  std::string name;
  LieGroup group = LieGroup::euclidean(1);
  FirstIntegral integral;
  std::function<AlgebraElement(const GroupElement&)> field;
  ExactBivector exact_bivector;
  /// The bivector does not depend on x (skips the midpoint evaluation).
  bool constant_bivector = false;
  GroupElement initial = GroupElement::euclidean(Vec::Zero(1));
};

/// ODE on the unit sphere in R^n, dx/dt = dH _| omega.
struct SphereProblem {
  std::string name;
  ManifoldFirstIntegral integral;
  std::function<Vec(const Vec&)> field;
  /// omegabar(p, q); must be symmetric in (p, q) for a symmetric method.
  std::function<BivectorForm(const ManifoldPoint&, const ManifoldPoint&)> discrete_bivector;
  CenterChoice center = CenterChoice::Midpoint;
  ManifoldPoint initial = ManifoldPoint(Vec::Unit(3, 0));
};

/// Midpoint discrete bivector omega(exp(eta/2) x) with eta known.
BivectorForm discrete_bivector(const GroupProblem& problem, const GroupElement& x, const AlgebraElement& eta);

GroupElement dg_step(const GroupElement& x, const StepConfig& cfg, const GroupProblem& problem);

ManifoldPoint manifold_dg_step(const ManifoldPoint& x, const StepConfig& cfg, const SphereProblem& problem);

class CollocationTableau {
 public:
  /// Throws InvalidSpec unless the nodes are distinct in [0, 1], every
  /// weight is nonzero and the weights sum to 1.
  CollocationTableau(std::vector<double> nodes, std::vector<double> weights);

  /// Gauss nodes with b_j = int_0^1 l_j (the classical Gauss weights).
  static CollocationTableau gauss(int s);

  int stages() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Lagrange basis polynomial l_j(tau).
  double lagrange(int j, double tau) const;
  /// L_j(tau) = int_0^tau l_j, integrated exactly.
  double lagrange_integral(int j, double tau) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  // Monomial coefficients of l_j, lowest degree first.
  std::vector<std::vector<double>> coeffs_;
};

/// Stage data of a collocation step: sigma(tau h) = h sum_j L_j(tau) k_j.
struct CollocationState {
  std::vector<AlgebraElement> slopes;  // k_j
  std::vector<AlgebraElement> stages;  // sigma_j = sigma(c_j h)

  AlgebraElement sigma(const CollocationTableau& tableau, double h, double tau) const;
};

GroupElement collocation_step(const GroupElement& x0, const CollocationTableau& tableau, const StepConfig& cfg,
                              const GroupProblem& problem, CollocationState* state = nullptr);

/// k1 = f(x), k2 = f(exp(h k1) x), x' = exp(h (k1 + k2) / 2) x.
GroupElement heun_step(const GroupElement& x, double h, const GroupProblem& problem);

}  // namespace liedg
