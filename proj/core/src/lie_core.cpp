#include "liedg/lie_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <array>
#include <cmath>
#include <numbers>

namespace liedg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSeriesCap = 30;
constexpr double kSeriesTol = 1e-16;

// B_k / k! for k = 0..30.
constexpr std::array<double, 31> kBernoulliOverFactorial = [] {
  std::array<double, 31> b{};
  const std::array<double, 31> bern = {
      1.0,
      -0.5,
      1.0 / 6.0,
      0.0,
      -1.0 / 30.0,
      0.0,
      1.0 / 42.0,
      0.0,
      -1.0 / 30.0,
      0.0,
      5.0 / 66.0,
      0.0,
      -691.0 / 2730.0,
      0.0,
      7.0 / 6.0,
      0.0,
      -3617.0 / 510.0,
      0.0,
      43867.0 / 798.0,
      0.0,
      -174611.0 / 330.0,
      0.0,
      854513.0 / 138.0,
      0.0,
      -236364091.0 / 2730.0,
      0.0,
      8553103.0 / 6.0,
      0.0,
      -23749461029.0 / 870.0,
      0.0,
      8615841276005.0 / 14322.0,
  };
  double fact = 1.0;
  for (int k = 0; k <= 30; ++k) {
    if (k > 0) fact *= k;
    b[k] = bern[k] / fact;
  }
  return b;
}();

Mat3 as_mat3(const Vec& v, Eigen::Index offset = 0) {
  return Eigen::Map<const Mat3>(v.data() + offset);
}

Vec flatten(const Mat3& m) { return Eigen::Map<const Vec>(m.data(), 9); }

Vec flatten(const Mat3& a, const Mat3& b) {
  Vec v(18);
  v.head<9>() = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(a.data());
  v.tail<9>() = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(b.data());
  return v;
}

Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }

// ad*_xi mu for gl(3) under the trace pairing.
Mat3 gl_coad(const Mat3& xi, const Mat3& mu) {
  return xi.transpose() * mu - mu * xi.transpose();
}

double checked_det(const Mat3& m, const char* what) {
  const double d = m.determinant();
  if (!(d > 0.0)) throw DomainError(std::string(what) + ": determinant is not positive");
  return d;
}

// Closed-form coefficient pairs for s^3 / so(3), with A = ad_xi and
// phi the rotation angle.
struct RotationCoefficients {
  double a1, a2;
};

RotationCoefficients dexp_coefficients(double phi) {
  if (phi < 1e-4) {
    const double p2 = phi * phi;
    return {0.5 - p2 / 24.0 + p2 * p2 / 720.0, 1.0 / 6.0 - p2 / 120.0 + p2 * p2 / 5040.0};
  }
  return {(1.0 - std::cos(phi)) / (phi * phi), (phi - std::sin(phi)) / (phi * phi * phi)};
}

double dexpinv_coefficient(double phi) {
  if (phi < 1e-4) {
    const double p2 = phi * phi;
    return 1.0 / 12.0 + p2 / 720.0 + p2 * p2 / 30240.0;
  }
  const double half = 0.5 * phi;
  return (1.0 - half * std::cos(half) / std::sin(half)) / (phi * phi);
}

// ad scaling: ad_v = 2 hat(v) on s^3, hat(w) on so(3).
double rotation_ad_scale(GroupKind kind) { return kind == GroupKind::UnitQuaternion ? 2.0 : 1.0; }

Mat3 rotation_dexp_matrix(GroupKind kind, const Vec3& xi) {
  const Mat3 a = rotation_ad_scale(kind) * hat(xi);
  const double phi = rotation_ad_scale(kind) * xi.norm();
  const auto c = dexp_coefficients(phi);
  return Mat3::Identity() + c.a1 * a + c.a2 * a * a;
}

Mat3 rotation_dexpinv_matrix(GroupKind kind, const Vec3& xi) {
  const double phi = rotation_ad_scale(kind) * xi.norm();
  if (phi >= kTwoPi) throw DomainError("dexpinv: algebra element beyond the singularity radius");
  const Mat3 a = rotation_ad_scale(kind) * hat(xi);
  return Mat3::Identity() - 0.5 * a + dexpinv_coefficient(phi) * a * a;
}

// Upper bound on the spectral radius of ad_xi for gl(3) and the semidirect
// algebra (block triangular, so the xi block decides).
double matrix_ad_bound(const Mat3& xi) { return 2.0 * xi.norm(); }

template <typename Op>
Vec phi_series(const Vec& eta, Op&& apply_ad) {
  Vec sum = eta;
  Vec term = eta;
  for (int k = 1; k <= kSeriesCap; ++k) {
    term = apply_ad(term) / static_cast<double>(k + 1);
    sum += term;
    if (term.norm() <= kSeriesTol * std::max(1.0, sum.norm())) break;
  }
  return sum;
}

// Inverts the phi series by a dense solve; used when the Bernoulli series
// converges too slowly (spectral radius of ad near 2 pi).
template <typename Op>
Vec solve_phi(const Vec& eta, Op&& apply_ad) {
  const Eigen::Index n = eta.size();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index j = 0; j < n; ++j) d.col(j) = phi_series(Vec::Unit(n, j), apply_ad);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(d);
  if (!(std::abs(lu.determinant()) > 1e-12))
    throw DomainError("dexpinv: algebra element beyond the singularity radius");
  return lu.solve(eta);
}

template <typename Op>
Vec bernoulli_series(const Vec& eta, Op&& apply_ad) {
  Vec sum = eta;
  Vec power = eta;  // ad^k eta
  for (int k = 1; k <= kSeriesCap; ++k) {
    power = apply_ad(power);
    const double coeff = kBernoulliOverFactorial[k];
    if (coeff == 0.0) continue;
    const Vec term = coeff * power;
    sum += term;
    if (term.norm() <= kSeriesTol * std::max(1.0, sum.norm())) return sum;
  }
  return solve_phi(eta, apply_ad);
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::UnitQuaternion: return "UnitQuaternion";
    case GroupKind::SO3: return "SO3";
    case GroupKind::GLPlus3: return "GLplus3";
    case GroupKind::SL3: return "SL3";
    case GroupKind::SemidirectGL3: return "Semidirect(GLplus3)";
    case GroupKind::Euclidean: return "EuclideanRd";
  }
  return "unknown";
}

double pairing(const Covector& mu, const AlgebraElement& xi) {
  if (mu.size() != xi.size()) throw KindMismatch("pairing: dimension mismatch");
  return mu.coords.dot(xi.coords);
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(GroupKind kind, Vec data) : kind_(kind), data_(std::move(data)) {
  Eigen::Index expected = -1;
  switch (kind_) {
    case GroupKind::UnitQuaternion: expected = 4; break;
    case GroupKind::SO3:
    case GroupKind::GLPlus3:
    case GroupKind::SL3: expected = 9; break;
    case GroupKind::SemidirectGL3: expected = 18; break;
    case GroupKind::Euclidean: break;
  }
  if (expected >= 0 && data_.size() != expected)
    throw KindMismatch("GroupElement: wrong representation size for " + to_string(kind_));
  if (!data_.allFinite()) throw DomainError("GroupElement: non-finite entries");
}

GroupElement GroupElement::quaternion(const Vec4& q) {
  return GroupElement(GroupKind::UnitQuaternion, Vec(q));
}
GroupElement GroupElement::rotation(const Mat3& r) { return GroupElement(GroupKind::SO3, flatten(r)); }
GroupElement GroupElement::gl3(const Mat3& f) { return GroupElement(GroupKind::GLPlus3, flatten(f)); }
GroupElement GroupElement::sl3(const Mat3& f) { return GroupElement(GroupKind::SL3, flatten(f)); }
GroupElement GroupElement::semidirect(const Mat3& f, const Mat3& p) {
  return GroupElement(GroupKind::SemidirectGL3, flatten(f, p));
}
GroupElement GroupElement::euclidean(const Vec& x) { return GroupElement(GroupKind::Euclidean, x); }

Vec4 GroupElement::quaternion() const {
  if (kind_ != GroupKind::UnitQuaternion) throw KindMismatch("not a quaternion");
  return data_.head<4>();
}

Mat3 GroupElement::matrix() const {
  if (kind_ == GroupKind::UnitQuaternion || kind_ == GroupKind::Euclidean)
    throw KindMismatch("not a matrix group element");
  return as_mat3(data_);
}

Mat3 GroupElement::momentum() const {
  if (kind_ != GroupKind::SemidirectGL3) throw KindMismatch("not a semidirect element");
  return as_mat3(data_, 9);
}

// ---------------------------------------------------------------------------
// LieGroup

LieGroup::LieGroup(GroupKind kind, int euclidean_dim) : kind_(kind), euclidean_dim_(euclidean_dim) {
  if (kind_ == GroupKind::Euclidean && euclidean_dim_ <= 0)
    throw InvalidSpec("Euclidean group needs a positive dimension");
}

int LieGroup::algebra_dim() const {
  switch (kind_) {
    case GroupKind::UnitQuaternion:
    case GroupKind::SO3: return 3;
    case GroupKind::GLPlus3:
    case GroupKind::SL3: return 9;
    case GroupKind::SemidirectGL3: return 18;
    case GroupKind::Euclidean: return euclidean_dim_;
  }
  return 0;
}

int LieGroup::representation_dim() const {
  switch (kind_) {
    case GroupKind::UnitQuaternion: return 4;
    case GroupKind::SO3:
    case GroupKind::GLPlus3:
    case GroupKind::SL3: return 9;
    case GroupKind::SemidirectGL3: return 18;
    case GroupKind::Euclidean: return euclidean_dim_;
  }
  return 0;
}

void LieGroup::require_kind(const GroupElement& g) const {
  if (g.kind() != kind_ || g.data().size() != representation_dim())
    throw KindMismatch("expected " + to_string(kind_) + " element, got " + to_string(g.kind()));
}

void LieGroup::require_dim(const AlgebraElement& xi) const {
  if (xi.size() != algebra_dim()) throw KindMismatch("algebra element has wrong dimension");
  if (!xi.coords.allFinite()) throw DomainError("algebra element has non-finite coordinates");
}

void LieGroup::require_dim(const Covector& mu) const {
  if (mu.size() != algebra_dim()) throw KindMismatch("covector has wrong dimension");
}

GroupElement LieGroup::identity() const {
  switch (kind_) {
    case GroupKind::UnitQuaternion: return GroupElement::quaternion(Vec4(1, 0, 0, 0));
    case GroupKind::SO3: return GroupElement::rotation(Mat3::Identity());
    case GroupKind::GLPlus3: return GroupElement::gl3(Mat3::Identity());
    case GroupKind::SL3: return GroupElement::sl3(Mat3::Identity());
    case GroupKind::SemidirectGL3: return GroupElement::semidirect(Mat3::Identity(), Mat3::Zero());
    case GroupKind::Euclidean: return GroupElement::euclidean(Vec::Zero(euclidean_dim_));
  }
  throw KindMismatch("unknown group kind");
}

AlgebraElement LieGroup::zero() const { return AlgebraElement::zero(algebra_dim()); }

GroupElement LieGroup::compose(const GroupElement& g, const GroupElement& h) const {
  require_kind(g);
  require_kind(h);
  switch (kind_) {
    case GroupKind::UnitQuaternion: {
      const Vec4 q = quat_mul(g.quaternion(), h.quaternion());
      return GroupElement::quaternion(q.normalized());
    }
    case GroupKind::SO3:
    case GroupKind::GLPlus3:
    case GroupKind::SL3: return GroupElement(kind_, flatten(g.matrix() * h.matrix()));
    case GroupKind::SemidirectGL3: {
      const Mat3 f1 = g.matrix();
      checked_det(f1, "compose");
      const Mat3 f1_inv_t = f1.inverse().transpose();
      const Mat3 p = g.momentum() + f1_inv_t * h.momentum() * f1.transpose();
      return GroupElement::semidirect(f1 * h.matrix(), p);
    }
    case GroupKind::Euclidean: return GroupElement::euclidean(g.data() + h.data());
  }
  throw KindMismatch("unknown group kind");
}

GroupElement LieGroup::inverse(const GroupElement& g) const {
  require_kind(g);
  switch (kind_) {
    case GroupKind::UnitQuaternion: return GroupElement::quaternion(quat_conj(g.quaternion()));
    case GroupKind::SO3: return GroupElement::rotation(g.matrix().transpose());
    case GroupKind::GLPlus3:
    case GroupKind::SL3: {
      const Mat3 f = g.matrix();
      checked_det(f, "inverse");
      return GroupElement(kind_, flatten(f.inverse()));
    }
    case GroupKind::SemidirectGL3: {
      const Mat3 f = g.matrix();
      checked_det(f, "inverse");
      const Mat3 f_inv = f.inverse();
      return GroupElement::semidirect(f_inv, -f.transpose() * g.momentum() * f_inv.transpose());
    }
    case GroupKind::Euclidean: return GroupElement::euclidean(-g.data());
  }
  throw KindMismatch("unknown group kind");
}

GroupElement LieGroup::exp(const AlgebraElement& xi) const {
  require_dim(xi);
  switch (kind_) {
    case GroupKind::UnitQuaternion: {
      const Vec3 v = xi.coords;
      const double theta = v.norm();
      const double sinc = theta < 1e-8 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
      Vec4 q;
      q << std::cos(theta), sinc * v;
      return GroupElement::quaternion(q.normalized());
    }
    case GroupKind::SO3: {
      const Vec3 w = xi.coords;
      const Mat3 a = hat(w);
      const double theta = w.norm();
      double s, c;
      if (theta < 1e-4) {
        const double t2 = theta * theta;
        s = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
        c = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
      } else {
        s = std::sin(theta) / theta;
        c = (1.0 - std::cos(theta)) / (theta * theta);
      }
      return GroupElement::rotation(Mat3::Identity() + s * a + c * a * a);
    }
    case GroupKind::GLPlus3: return GroupElement::gl3(matrix_exp(as_mat3(xi.coords)));
    case GroupKind::SL3: {
      const Mat3 m = as_mat3(xi.coords);
      if (std::abs(m.trace()) > 1e-12 * std::max(1.0, m.norm()))
        throw DomainError("sl(3) element must be trace free");
      return GroupElement::sl3(matrix_exp(m));
    }
    case GroupKind::SemidirectGL3: {
      const Mat3 x = as_mat3(xi.coords);
      const LieGroup gl = LieGroup::gl_plus3();
      const Covector mu(xi.coords.tail<9>());
      const Covector p = gl.dexp_dual(AlgebraElement(-xi.coords.head<9>()), mu);
      return GroupElement::semidirect(matrix_exp(x), as_mat3(p.coords));
    }
    case GroupKind::Euclidean: return GroupElement::euclidean(xi.coords);
  }
  throw KindMismatch("unknown group kind");
}

AlgebraElement LieGroup::log(const GroupElement& g) const {
  require_kind(g);
  switch (kind_) {
    case GroupKind::UnitQuaternion: {
      const Vec4 q = g.quaternion().normalized();
      if (1.0 + q(0) <= 1e-12) throw DomainError("quaternion log: q0 = -1 is off the principal branch");
      const Vec3 v = q.tail<3>();
      const double n = v.norm();
      if (n == 0.0) return AlgebraElement(Vec::Zero(3));
      return AlgebraElement(Vec(v * (std::atan2(n, q(0)) / n)));
    }
    case GroupKind::SO3: {
      const Mat3 r = g.matrix();
      const Vec3 axis2 = vee(r - r.transpose());  // 2 sin(theta) n
      const double s = 0.5 * axis2.norm();
      const double c = 0.5 * (r.trace() - 1.0);
      const double theta = std::atan2(s, c);
      if (theta < 1e-4) {
        const double t2 = theta * theta;
        return AlgebraElement(Vec(0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * axis2));
      }
      if (std::numbers::pi - theta > 1e-6) return AlgebraElement(Vec(theta / (2.0 * s) * axis2));
      // Near pi the antisymmetric part carries no accuracy; read the axis from
      // the symmetric part (1 - cos) n n^T and its sign from axis2.
      if (axis2.norm() < 1e-15) throw DomainError("SO(3) log: rotation by pi is off the principal branch");
      const Mat3 b = 0.5 * (r + r.transpose()) - c * Mat3::Identity();
      Eigen::Index col = 0;
      b.diagonal().maxCoeff(&col);
      Vec3 n = b.col(col).normalized();
      if (n.dot(axis2) < 0.0) n = -n;
      return AlgebraElement(Vec(theta * n));
    }
    case GroupKind::GLPlus3:
    case GroupKind::SL3: return AlgebraElement(flatten(matrix_log(g.matrix())));
    case GroupKind::SemidirectGL3: {
      const Mat3 x = matrix_log(g.matrix());
      const LieGroup gl = LieGroup::gl_plus3();
      const Vec xv = flatten(x);
      const Covector mu = gl.dexpinv_dual(AlgebraElement(Vec(-xv)), Covector(flatten(g.momentum())));
      Vec out(18);
      out << xv, mu.coords;
      return AlgebraElement(out);
    }
    case GroupKind::Euclidean: return AlgebraElement(g.data());
  }
  throw KindMismatch("unknown group kind");
}

AlgebraElement LieGroup::bracket(const AlgebraElement& xi, const AlgebraElement& eta) const {
  require_dim(xi);
  require_dim(eta);
  switch (kind_) {
    case GroupKind::UnitQuaternion:
      return AlgebraElement(Vec(2.0 * Vec3(xi.coords).cross(Vec3(eta.coords))));
    case GroupKind::SO3: return AlgebraElement(Vec(Vec3(xi.coords).cross(Vec3(eta.coords))));
    case GroupKind::GLPlus3:
    case GroupKind::SL3: return AlgebraElement(flatten(commutator(as_mat3(xi.coords), as_mat3(eta.coords))));
    case GroupKind::SemidirectGL3: {
      // [(x, m), (y, n)] = ([x, y], ad*_y m - ad*_x n)
      const Mat3 x = as_mat3(xi.coords), m = as_mat3(xi.coords, 9);
      const Mat3 y = as_mat3(eta.coords), n = as_mat3(eta.coords, 9);
      return AlgebraElement(flatten(commutator(x, y), gl_coad(y, m) - gl_coad(x, n)));
    }
    case GroupKind::Euclidean: return zero();
  }
  throw KindMismatch("unknown group kind");
}

Covector LieGroup::coad(const AlgebraElement& xi, const Covector& mu) const {
  require_dim(xi);
  require_dim(mu);
  switch (kind_) {
    case GroupKind::UnitQuaternion:
      return Covector(Vec(2.0 * Vec3(mu.coords).cross(Vec3(xi.coords))));
    case GroupKind::SO3: return Covector(Vec(Vec3(mu.coords).cross(Vec3(xi.coords))));
    case GroupKind::GLPlus3:
    case GroupKind::SL3: return Covector(flatten(gl_coad(as_mat3(xi.coords), as_mat3(mu.coords))));
    case GroupKind::SemidirectGL3: {
      // Adjoint of the bracket above under the stacked trace pairing.
      const Mat3 x = as_mat3(xi.coords), m = as_mat3(xi.coords, 9);
      const Mat3 a = as_mat3(mu.coords), b = as_mat3(mu.coords, 9);
      return Covector(flatten(gl_coad(x, a) + m * b.transpose() - b.transpose() * m, -commutator(x, b)));
    }
    case GroupKind::Euclidean: return Covector(Vec::Zero(euclidean_dim_));
  }
  throw KindMismatch("unknown group kind");
}

AlgebraElement LieGroup::dexp(const AlgebraElement& xi, const AlgebraElement& eta) const {
  require_dim(xi);
  require_dim(eta);
  switch (kind_) {
    case GroupKind::UnitQuaternion:
    case GroupKind::SO3:
      return AlgebraElement(Vec(rotation_dexp_matrix(kind_, xi.coords) * Vec3(eta.coords)));
    case GroupKind::GLPlus3:
    case GroupKind::SL3:
    case GroupKind::SemidirectGL3:
      return AlgebraElement(phi_series(eta.coords, [&](const Vec& v) { return bracket(xi, AlgebraElement(v)).coords; }));
    case GroupKind::Euclidean: return eta;
  }
  throw KindMismatch("unknown group kind");
}

AlgebraElement LieGroup::dexpinv(const AlgebraElement& xi, const AlgebraElement& eta) const {
  require_dim(xi);
  require_dim(eta);
  switch (kind_) {
    case GroupKind::UnitQuaternion:
    case GroupKind::SO3:
      return AlgebraElement(Vec(rotation_dexpinv_matrix(kind_, xi.coords) * Vec3(eta.coords)));
    case GroupKind::GLPlus3:
    case GroupKind::SL3:
    case GroupKind::SemidirectGL3:
      if (matrix_ad_bound(as_mat3(xi.coords)) >= kTwoPi)
        throw DomainError("dexpinv: algebra element beyond the singularity radius");
      return AlgebraElement(
          bernoulli_series(eta.coords, [&](const Vec& v) { return bracket(xi, AlgebraElement(v)).coords; }));
    case GroupKind::Euclidean: return eta;
  }
  throw KindMismatch("unknown group kind");
}

Covector LieGroup::dexp_dual(const AlgebraElement& xi, const Covector& mu) const {
  require_dim(xi);
  require_dim(mu);
  switch (kind_) {
    case GroupKind::UnitQuaternion:
    case GroupKind::SO3:
      return Covector(Vec(rotation_dexp_matrix(kind_, xi.coords).transpose() * Vec3(mu.coords)));
    case GroupKind::GLPlus3:
    case GroupKind::SL3:
    case GroupKind::SemidirectGL3:
      return Covector(phi_series(mu.coords, [&](const Vec& v) { return coad(xi, Covector(v)).coords; }));
    case GroupKind::Euclidean: return mu;
  }
  throw KindMismatch("unknown group kind");
}

Covector LieGroup::dexpinv_dual(const AlgebraElement& xi, const Covector& mu) const {
  require_dim(xi);
  require_dim(mu);
  switch (kind_) {
    case GroupKind::UnitQuaternion:
    case GroupKind::SO3:
      return Covector(Vec(rotation_dexpinv_matrix(kind_, xi.coords).transpose() * Vec3(mu.coords)));
    case GroupKind::GLPlus3:
    case GroupKind::SL3:
    case GroupKind::SemidirectGL3:
      if (matrix_ad_bound(as_mat3(xi.coords)) >= kTwoPi)
        throw DomainError("dexpinv: algebra element beyond the singularity radius");
      return Covector(bernoulli_series(mu.coords, [&](const Vec& v) { return coad(xi, Covector(v)).coords; }));
    case GroupKind::Euclidean: return mu;
  }
  throw KindMismatch("unknown group kind");
}

void LieGroup::check_member(const GroupElement& g) const {
  require_kind(g);
  switch (kind_) {
    case GroupKind::UnitQuaternion:
      if (std::abs(g.quaternion().norm() - 1.0) > 1e-12) throw ConstraintViolation("quaternion is not unit");
      return;
    case GroupKind::SO3: {
      const Mat3 r = g.matrix();
      if ((r.transpose() * r - Mat3::Identity()).norm() > 1e-12 || r.determinant() <= 0.0)
        throw ConstraintViolation("matrix is not a rotation");
      return;
    }
    case GroupKind::GLPlus3:
      if (!(g.matrix().determinant() > 0.0)) throw ConstraintViolation("det F is not positive");
      return;
    case GroupKind::SL3:
      if (std::abs(g.matrix().determinant() - 1.0) > 1e-10) throw ConstraintViolation("det F != 1");
      return;
    case GroupKind::SemidirectGL3:
      if (!(g.matrix().determinant() > 0.0)) throw ConstraintViolation("det F is not positive");
      return;
    case GroupKind::Euclidean: return;
  }
}

// ---------------------------------------------------------------------------
// Quaternion helpers

Mat3 hat(const Vec3& q) {
  Mat3 m;
  m << 0.0, -q(2), q(1),
       q(2), 0.0, -q(0),
       -q(1), q(0), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

Vec4 quat_mul(const Vec4& p, const Vec4& q) {
  const Vec3 pv = p.tail<3>(), qv = q.tail<3>();
  Vec4 r;
  r(0) = p(0) * q(0) - pv.dot(qv);
  r.tail<3>() = p(0) * qv + q(0) * pv + pv.cross(qv);
  return r;
}

Vec4 quat_conj(const Vec4& q) { return Vec4(q(0), -q(1), -q(2), -q(3)); }

Mat3 euler_rodriguez(const Vec4& q) {
  const Mat3 h = hat(q.tail<3>());
  return Mat3::Identity() + 2.0 * q(0) * h + 2.0 * h * h;
}

Mat3 euler_rodriguez(const GroupElement& q) { return euler_rodriguez(q.quaternion()); }

// ---------------------------------------------------------------------------
// Matrix functions

Mat3 matrix_exp(const Mat3& a) {
  if (!a.allFinite()) throw DomainError("matrix_exp: non-finite input");
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat3 x = a / std::ldexp(1.0, squarings);
  Mat3 sum = Mat3::Identity();
  Mat3 term = Mat3::Identity();
  for (int k = 1; k <= 16; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Mat3 matrix_sqrt(const Mat3& a) {
  Mat3 y = a;
  Mat3 z = Mat3::Identity();
  for (int k = 0; k < 100; ++k) {
    const Mat3 y_inv = y.inverse();
    const Mat3 y_next = 0.5 * (y + z.inverse());
    z = 0.5 * (z + y_inv);
    const double change = (y_next - y).norm();
    y = y_next;
    if (change <= 1e-15 * y.norm()) return y;
  }
  throw DomainError("matrix_sqrt: Denman-Beavers iteration did not converge");
}

Mat3 matrix_log(const Mat3& a) {
  if (!a.allFinite()) throw DomainError("matrix_log: non-finite input");
  const Eigen::EigenSolver<Mat3> eig(a, false);
  const double scale = std::max(1.0, a.norm());
  for (const auto& lambda : eig.eigenvalues()) {
    if (std::abs(lambda.imag()) <= 1e-14 * scale && lambda.real() <= 0.0)
      throw DomainError("matrix_log: eigenvalue on the closed negative real axis");
  }
  Mat3 x = a;
  int roots = 0;
  while ((x - Mat3::Identity()).cwiseAbs().colwise().sum().maxCoeff() > 0.25) {
    if (++roots > 60) throw DomainError("matrix_log: too many square roots");
    x = matrix_sqrt(x);
  }
  // log(X) = 2 atanh(Y), Y = (X - I)(X + I)^{-1}
  const Mat3 y = (x - Mat3::Identity()) * (x + Mat3::Identity()).inverse();
  const Mat3 y2 = y * y;
  Mat3 power = y;
  Mat3 sum = y;
  for (int k = 1; k < 40; ++k) {
    power = power * y2;
    const Mat3 term = power / static_cast<double>(2 * k + 1);
    sum += term;
    if (term.norm() <= 1e-17 * std::max(1.0, sum.norm())) break;
  }
  return std::ldexp(2.0, roots) * sum;
}

}  // namespace liedg
