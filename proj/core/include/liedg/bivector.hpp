#pragma once

// Skew bilinear forms on the dual of the algebra (or on T*M for the sphere).
//
// The form is carried by its contraction mu -> mu _| omega, a vector in the
// algebra, with omega(a, b) := <b, a _| omega>. For a skew matrix S the
// contraction is a -> S a, which reproduces x' = S grad H in R^d.

#include <functional>

#include "liedg/lie_core.hpp"
#include "liedg/manifold.hpp"

namespace liedg {

class BivectorForm {
 public:
  using Contraction = std::function<Vec(const Vec&)>;

  BivectorForm(int dim, Contraction contraction);
  /// contract(a) = S a; S must be square.
  static BivectorForm from_matrix(Mat skew);

  int dim() const { return dim_; }

  Vec contract(const Vec& mu) const;
  AlgebraElement contract(const Covector& mu) const { return AlgebraElement(contract(mu.coords)); }

  double apply(const Vec& a, const Vec& b) const { return b.dot(contract(a)); }
  double apply(const Covector& a, const Covector& b) const { return apply(a.coords, b.coords); }

  /// Dense matrix of the contraction (column k = contract(e_k)).
  Mat matrix() const;

 private:
  int dim_;
  Contraction contraction_;
};

/// (xi gamma^T - gamma xi^T) / |gamma|^2, the coordinate form of
/// grad H ^ F / |grad H|^2. Throws DomainError if |gamma| < 1e-14.
BivectorForm bivector_from_gradient(const Vec& field, const Vec& gradient);

/// Exact bivector on the sphere at p: omega_p(a, b) = (p, a x b).
BivectorForm sphere_bivector(const Vec3& p);
/// Symmetric consistent approximation ((p + q)/2, a x b).
BivectorForm omega_bar_sphere(const Vec3& p, const Vec3& q);

/// Trivialized bivector exact at x, as supplied by a problem.
using ExactBivector = std::function<BivectorForm(const GroupElement&)>;

/// omega(exp(eta / 2) u) with eta = log(v u^{-1}): symmetric in (u, v) and
/// consistent.
BivectorForm omega_bar_midpoint(const LieGroup& group, const ExactBivector& exact, const GroupElement& u,
                                const GroupElement& v);

/// Quaternion instance: omega_R(qbar), qbar = exp(eta/2) q, where
/// omega_R(q) = bivector_from_gradient(f(q), gamma(q)).
BivectorForm omega_bar_midpoint_s3(const GroupElement& q, const GroupElement& q_next,
                                   const std::function<AlgebraElement(const GroupElement&)>& field,
                                   const std::function<Covector(const GroupElement&)>& gamma);

/// Canonical form of Hamilton's equations on the 18-dim semidirect algebra:
/// (a, b) -> (b, -a) for a in the F slot and b in the P slot.
AlgebraElement darboux_contract(const Covector& mu);
BivectorForm darboux_bivector();

/// Trivialized pullback of the exact bivector to X_j = exp(sigma_j) x0.
BivectorForm omega_bar_collocation(const LieGroup& group, const GroupElement& x0, const AlgebraElement& sigma_j,
                                   const ExactBivector& exact);

}  // namespace liedg
