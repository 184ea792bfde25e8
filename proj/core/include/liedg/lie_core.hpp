#pragma once

// Lie groups used by the integrators: unit quaternions, SO(3), GL+(3),
// SL(3), the semidirect product GL+(3) x gl(3)* and R^d under addition.
//
// Conventions
//  * Right trivialization throughout: a tangent vector at x is xi . x with
//    xi in the algebra, and d/dt exp(s(t)) = dexp_s(s') . exp(s).
//  * Algebra coordinates: 3-vectors for s^3 ([0,v]) and so(3) (hat(w)),
//    column-major 3x3 matrices for gl(3)/sl(3), the pair (xi, mu) stacked
//    as 18 numbers for the semidirect algebra, plain vectors for R^d.
//  * The dual is identified with the algebra through the Euclidean dot
//    product of the coordinates (the trace pairing tr(A^T B) for matrices).

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <utility>

#include "liedg/errors.hpp"

namespace liedg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

enum class GroupKind { UnitQuaternion, SO3, GLPlus3, SL3, SemidirectGL3, Euclidean };

std::string to_string(GroupKind kind);

namespace detail {

// Coordinate array with vector-space arithmetic; Tag keeps algebra elements
// and covectors from being mixed up.
template <typename Tag>
struct Coordinates {
  Vec coords;

  Coordinates() = default;
  explicit Coordinates(Vec c) : coords(std::move(c)) {}

  Eigen::Index size() const { return coords.size(); }
  double norm() const { return coords.norm(); }
  double squared_norm() const { return coords.squaredNorm(); }

  static Coordinates zero(Eigen::Index n) { return Coordinates(Vec::Zero(n)); }

  Coordinates& operator+=(const Coordinates& o) {
    coords += o.coords;
    return *this;
  }
  Coordinates& operator-=(const Coordinates& o) {
    coords -= o.coords;
    return *this;
  }
  Coordinates& operator*=(double s) {
    coords *= s;
    return *this;
  }
  friend Coordinates operator+(Coordinates a, const Coordinates& b) { return a += b; }
  friend Coordinates operator-(Coordinates a, const Coordinates& b) { return a -= b; }
  friend Coordinates operator-(Coordinates a) {
    a.coords = -a.coords;
    return a;
  }
  friend Coordinates operator*(double s, Coordinates a) { return a *= s; }
  friend Coordinates operator*(Coordinates a, double s) { return a *= s; }
};

struct AlgebraTag {};
struct CovectorTag {};

}  // namespace detail

/// Element of the Lie algebra in the fixed coordinate basis.
using AlgebraElement = detail::Coordinates<detail::AlgebraTag>;
/// Element of the dual of the Lie algebra in the dual basis.
using Covector = detail::Coordinates<detail::CovectorTag>;

/// <mu, xi>.
double pairing(const Covector& mu, const AlgebraElement& xi);

/// Index lowering with the coordinate inner product.
inline Covector flat(const AlgebraElement& xi) { return Covector(xi.coords); }
/// Index raising with the coordinate inner product.
inline AlgebraElement sharp(const Covector& mu) { return AlgebraElement(mu.coords); }

/// A point on one of the supported groups, stored as its embedded
/// representation: R^4 quaternion, column-major 3x3 matrix, (F, P) as 18
/// numbers, or the vector itself for R^d.
class GroupElement {
 public:
  GroupElement(GroupKind kind, Vec data);

  static GroupElement quaternion(const Vec4& q);
  static GroupElement rotation(const Mat3& r);
  static GroupElement gl3(const Mat3& f);
  static GroupElement sl3(const Mat3& f);
  static GroupElement semidirect(const Mat3& f, const Mat3& p);
  static GroupElement euclidean(const Vec& x);

  GroupKind kind() const { return kind_; }
  const Vec& data() const { return data_; }

  Vec4 quaternion() const;
  /// Matrix part: the element itself for matrix groups, F for (F, P).
  Mat3 matrix() const;
  /// P of a semidirect element.
  Mat3 momentum() const;

 private:
  GroupKind kind_;
  Vec data_;
};

/// Runtime description of a group; every operation dispatches on kind().
/// All members are pure functions.
class LieGroup {
 public:
  explicit LieGroup(GroupKind kind, int euclidean_dim = 0);

  static LieGroup unit_quaternions() { return LieGroup(GroupKind::UnitQuaternion); }
  static LieGroup so3() { return LieGroup(GroupKind::SO3); }
  static LieGroup gl_plus3() { return LieGroup(GroupKind::GLPlus3); }
  static LieGroup sl3() { return LieGroup(GroupKind::SL3); }
  static LieGroup semidirect_gl3() { return LieGroup(GroupKind::SemidirectGL3); }
  static LieGroup euclidean(int d) { return LieGroup(GroupKind::Euclidean, d); }

  GroupKind kind() const { return kind_; }
  int algebra_dim() const;
  int representation_dim() const;

  GroupElement identity() const;
  AlgebraElement zero() const;

  GroupElement compose(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;

  GroupElement exp(const AlgebraElement& xi) const;
  /// Principal logarithm; throws DomainError off the principal branch.
  AlgebraElement log(const GroupElement& g) const;

  /// Lie bracket [xi, eta].
  AlgebraElement bracket(const AlgebraElement& xi, const AlgebraElement& eta) const;
  /// ad*_xi mu, defined by <ad*_xi mu, eta> = <mu, [xi, eta]>.
  Covector coad(const AlgebraElement& xi, const Covector& mu) const;

  AlgebraElement dexp(const AlgebraElement& xi, const AlgebraElement& eta) const;
  AlgebraElement dexpinv(const AlgebraElement& xi, const AlgebraElement& eta) const;
  Covector dexp_dual(const AlgebraElement& xi, const Covector& mu) const;
  Covector dexpinv_dual(const AlgebraElement& xi, const Covector& mu) const;

  /// Throws unless g belongs to this group and satisfies its constraints
  /// (unit norm within 1e-12, det > 0, det = 1 within 1e-10).
  void check_member(const GroupElement& g) const;

 private:
  void require_kind(const GroupElement& g) const;
  void require_dim(const AlgebraElement& xi) const;
  void require_dim(const Covector& mu) const;

  GroupKind kind_;
  int euclidean_dim_;
};

// Quaternion and rotation helpers.

/// hat(q) v = q x v.
Mat3 hat(const Vec3& q);
/// Inverse of hat on skew matrices.
Vec3 vee(const Mat3& m);
/// Quaternion product [p0 q0 - p.q, p0 q + q0 p + p x q].
Vec4 quat_mul(const Vec4& p, const Vec4& q);
/// Conjugate [q0, -q].
Vec4 quat_conj(const Vec4& q);
/// Euler-Rodriguez map I + 2 q0 hat(q) + 2 hat(q)^2.
Mat3 euler_rodriguez(const Vec4& q);
Mat3 euler_rodriguez(const GroupElement& q);

// Matrix functions for 3x3 matrices.

/// Scaling and squaring with a Taylor kernel.
Mat3 matrix_exp(const Mat3& a);
/// Principal logarithm by inverse scaling and squaring (Denman-Beavers
/// square roots, then a Gregory series). Throws DomainError for matrices
/// with non-positive real eigenvalues.
Mat3 matrix_log(const Mat3& a);
/// Principal square root via the Denman-Beavers iteration.
Mat3 matrix_sqrt(const Mat3& a);

}  // namespace liedg
