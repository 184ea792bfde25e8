#include "liedg/manifold.hpp"

#include <cmath>

namespace liedg {

ManifoldPoint::ManifoldPoint(Eigen::VectorXd p) : p_(std::move(p)) {
  if (p_.size() < 2) throw InvalidSpec("sphere points need at least two coordinates");
  if (!p_.allFinite() || std::abs(p_.norm() - 1.0) > 1e-12)
    throw ConstraintViolation("manifold point is not of unit length");
}

ManifoldPoint ManifoldPoint::normalized(const Eigen::VectorXd& p) {
  const double n = p.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero or non-finite vector");
  return ManifoldPoint(p / n);
}

TangentVector::TangentVector(ManifoldPoint b, Eigen::VectorXd v) : base(std::move(b)), vec(std::move(v)) {
  if (vec.size() != base.dim()) throw KindMismatch("tangent vector dimension mismatch");
  if (std::abs(base.coords().dot(vec)) > 1e-12 * std::max(1.0, vec.norm()))
    throw ConstraintViolation("tangent vector is not orthogonal to its base point");
}

TangentVector TangentVector::project(const ManifoldPoint& base, const Eigen::VectorXd& v) {
  const Eigen::VectorXd& p = base.coords();
  return TangentVector(base, v - p.dot(v) * p);
}

ManifoldPoint retract(const TangentVector& v) {
  const Eigen::VectorXd s = v.base.coords() + v.vec;
  const double n = s.norm();
  if (n <= kConeGuard) throw DomainError("retract: p + v vanishes");
  return ManifoldPoint(s / n);
}

TangentVector retract_inverse(const ManifoldPoint& p, const ManifoldPoint& q) {
  if (p.dim() != q.dim()) throw KindMismatch("retract_inverse: dimension mismatch");
  const double pq = p.coords().dot(q.coords());
  if (pq <= kConeGuard) throw DomainError("retract_inverse: q is outside the cone of p");
  Eigen::VectorXd v = q.coords() / pq - p.coords();
  // Remove the O(eps) normal component left by rounding.
  v -= p.coords().dot(v) * p.coords();
  return TangentVector(p, std::move(v));
}

ManifoldPoint center(const ManifoldPoint& p, const ManifoldPoint& q) {
  if (p.dim() != q.dim()) throw KindMismatch("center: dimension mismatch");
  if (p.coords().dot(q.coords()) <= kConeGuard - 1.0) throw DomainError("center: antipodal points");
  const Eigen::VectorXd s = p.coords() + q.coords();
  return ManifoldPoint(s / s.norm());
}

ManifoldPoint center(const ManifoldPoint& p, const ManifoldPoint& q, CenterChoice choice) {
  return choice == CenterChoice::Midpoint ? center(p, q) : p;
}

Eigen::VectorXd retraction_tangent_map(const ManifoldPoint& c, const TangentVector& u, const Eigen::VectorXd& w) {
  if (w.size() != c.dim()) throw KindMismatch("retraction_tangent_map: dimension mismatch");
  const Eigen::VectorXd s = c.coords() + u.vec;
  const double n = s.norm();
  if (n <= kConeGuard) throw DomainError("retraction_tangent_map: c + u vanishes");
  const Eigen::VectorXd unit = s / n;
  return (w - unit.dot(w) * unit) / n;
}

}  // namespace liedg
