#pragma once

// Retraction framework on the unit sphere S^{n-1} embedded in R^n.
//
// retraction      phi_p(v)      = (p + v) / |p + v|
// inverse         phi_p^{-1}(q) = q / (p, q) - p      on the cone (p, q) > 0
// center          c(p, q)       = (p + q) / |p + q|   (geodesic midpoint)

#include <Eigen/Dense>

#include "liedg/errors.hpp"

namespace liedg {

/// Unit vector in R^n.
class ManifoldPoint {
 public:
  /// Throws ConstraintViolation unless |p| = 1 within 1e-12.
  explicit ManifoldPoint(Eigen::VectorXd p);
  /// Normalizes first; throws DomainError for the zero vector.
  static ManifoldPoint normalized(const Eigen::VectorXd& p);

  const Eigen::VectorXd& coords() const { return p_; }
  Eigen::Index dim() const { return p_.size(); }

 private:
  Eigen::VectorXd p_;
};

/// Vector of R^n orthogonal to its base point.
struct TangentVector {
  /// Throws ConstraintViolation unless |(base, vec)| <= 1e-12 max(1, |vec|).
  TangentVector(ManifoldPoint base, Eigen::VectorXd vec);
  /// Orthogonal projection of an arbitrary ambient vector onto T_base.
  static TangentVector project(const ManifoldPoint& base, const Eigen::VectorXd& v);

  ManifoldPoint base;
  Eigen::VectorXd vec;
};

/// Covector at a point, represented by its Riesz vector in T_base under the
/// Euclidean metric.
using CotangentVector = TangentVector;

/// Points closer to antipodal than this (in (p, q)) are rejected.
inline constexpr double kConeGuard = 1e-8;

ManifoldPoint retract(const TangentVector& v);
TangentVector retract_inverse(const ManifoldPoint& p, const ManifoldPoint& q);

/// Geodesic midpoint; solves phi_c^{-1}(p) + phi_c^{-1}(q) = 0.
ManifoldPoint center(const ManifoldPoint& p, const ManifoldPoint& q);

enum class CenterChoice { Midpoint, First };
ManifoldPoint center(const ManifoldPoint& p, const ManifoldPoint& q, CenterChoice choice);

/// T_u phi_c applied to w: (I - s s^T) w / |c + u| with s = (c + u)/|c + u|.
Eigen::VectorXd retraction_tangent_map(const ManifoldPoint& c, const TangentVector& u, const Eigen::VectorXd& w);

}  // namespace liedg
