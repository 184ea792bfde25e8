#include "liedg/problems.hpp"

#include <cmath>

namespace liedg {

namespace {

Vec stack(const Mat3& a, const Mat3& b) {
  Vec out(18);
  out.head<9>() = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(a.data());
  out.tail<9>() = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(b.data());
  return out;
}

Mat3 checked_inverse(const Mat3& f) {
  const double det = f.determinant();
  if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) throw DomainError("deformation gradient F is singular");
  return f.inverse();
}

}  // namespace

void RigidBodyParams::validate() const {
  for (int i = 0; i < 3; ++i)
    if (!(inertia[i] > 0.0) || !std::isfinite(inertia[i])) throw InvalidSpec("inertia entries must be positive");
  if (!m0.allFinite()) throw InvalidSpec("initial momentum must be finite");
}

RigidBodyParams RigidBodyParams::sphere_default() {
  RigidBodyParams p;
  p.inertia = Vec3(1.0, 2.0, 3.0);
  p.m0 = Vec3(1.0, 0.4, 0.6);
  return p;
}

RigidBodyParams RigidBodyParams::attitude_default() {
  RigidBodyParams p;
  p.inertia = Vec3(1.0, 5.0, 60.0);
  p.m0 = p.inertia.cwiseProduct(Vec3(1.0, 0.5, -1.0));
  return p;
}

double sphere_rb_energy(const Vec3& inertia, const Vec3& p) { return 0.5 * p.dot(p.cwiseQuotient(inertia)); }

Vec3 sphere_rb_field(const Vec3& inertia, const Vec3& p) { return p.cross(p.cwiseQuotient(inertia)); }

Vec3 sphere_rb_gradient(const Vec3& inertia, const Vec3& p) { return p.cwiseQuotient(inertia); }

Vec3 sphere_rb_gonzalez_closed_form(const Vec3& inertia, const Vec3& p, const Vec3& q) {
  const Vec3 m = 0.5 * (p + q);
  const double mn = m.norm();
  const Vec3 d = q - p;
  const double d2 = d.squaredNorm();
  Vec3 out = m.cwiseQuotient(inertia);
  if (d2 > 0.0) {
    const double dh = sphere_rb_energy(inertia, q) - sphere_rb_energy(inertia, p);
    out += ((mn * mn - 1.0) * dh / d2) * d;
  }
  return out / mn;
}

SphereProblem sphere_rigid_body(const RigidBodyParams& params, CenterChoice center_choice) {
  params.validate();
  const Vec3 inertia = params.inertia;
  SphereProblem problem;
  problem.name = "sphere-rb";
  problem.integral.value = [inertia](const Vec& p) { return sphere_rb_energy(inertia, p); };
  problem.integral.gradient = [inertia](const Vec& p) -> Vec { return sphere_rb_gradient(inertia, p); };
  problem.field = [inertia](const Vec& p) -> Vec { return sphere_rb_field(inertia, p); };
  if (center_choice == CenterChoice::Midpoint) {
    problem.discrete_bivector = [](const ManifoldPoint& p, const ManifoldPoint& q) {
      return omega_bar_sphere(p.coords(), q.coords());
    };
  } else {
    problem.discrete_bivector = [](const ManifoldPoint& p, const ManifoldPoint&) {
      return sphere_bivector(p.coords());
    };
  }
  problem.center = center_choice;
  problem.initial = ManifoldPoint::normalized(params.m0);
  return problem;
}

double quat_energy(const RigidBodyParams& params, const Vec4& q) {
  const Mat3 r = euler_rodriguez(q);
  const Vec3 body = r.transpose() * params.m0;
  return 0.5 * body.dot(body.cwiseQuotient(params.inertia));
}

AlgebraElement quat_attitude_field(const RigidBodyParams& params, const Vec4& q) {
  const Vec3 v = 0.5 * (euler_rodriguez(quat_conj(q)) * params.m0).cwiseQuotient(params.inertia);
  Vec4 pure;
  pure << 0.0, v;
  return AlgebraElement(Vec(quat_mul(quat_mul(q, pure), quat_conj(q)).tail<3>()));
}

Vec4 quat_euclidean_gradient(const RigidBodyParams& params, const Vec4& q) {
  const Vec3 u = q.tail<3>();
  const Mat3 r = euler_rodriguez(q);
  const Vec3 omega = (r.transpose() * params.m0).cwiseQuotient(params.inertia);
  const Mat3 hu = hat(u);
  Vec4 g;
  g[0] = params.m0.dot(2.0 * hu * omega);
  for (int i = 0; i < 3; ++i) {
    const Mat3 he = hat(Vec3::Unit(i));
    const Mat3 dr = 2.0 * q[0] * he + 2.0 * (he * hu + hu * he);
    g[i + 1] = params.m0.dot(dr * omega);
  }
  return g;
}

Vec4 quat_riemannian_gradient(const RigidBodyParams& params, const Vec4& q) {
  const Vec4 g = quat_euclidean_gradient(params, q);
  return g - q * q.dot(g);
}

Covector quat_grad(const RigidBodyParams& params, const Vec4& q) {
  return Covector(Vec(quat_mul(quat_riemannian_gradient(params, q), quat_conj(q)).tail<3>()));
}

BivectorForm quat_omega_r(const RigidBodyParams& params, const Vec4& q) {
  return bivector_from_gradient(quat_attitude_field(params, q).coords, quat_grad(params, q).coords);
}

GroupProblem quaternion_rigid_body(const RigidBodyParams& params) {
  params.validate();
  GroupProblem problem;
  problem.name = "quat-rb";
  problem.group = LieGroup::unit_quaternions();
  problem.integral.value = [params](const GroupElement& x) { return quat_energy(params, x.quaternion()); };
  problem.integral.differential = [params](const GroupElement& x) { return quat_grad(params, x.quaternion()); };
  problem.field = [params](const GroupElement& x) { return quat_attitude_field(params, x.quaternion()); };
  problem.exact_bivector = [params](const GroupElement& x) { return quat_omega_r(params, x.quaternion()); };
  problem.initial = problem.group.identity();
  return problem;
}

void PseudoRigidParams::validate() const {
  if (!(mu > 0.0)) throw InvalidSpec("Lame constant mu must be positive");
  if (!(3.0 * lambda + 2.0 * mu > 0.0)) throw InvalidSpec("Lame constants need 3 lambda + 2 mu > 0");
  for (int i = 0; i < 3; ++i)
    if (!(inertia[i] > 0.0) || !std::isfinite(inertia[i])) throw InvalidSpec("inertia entries must be positive");
  if (!f0.allFinite() || !p0.allFinite()) throw InvalidSpec("initial state must be finite");
  const double det = f0.determinant();
  if (!(det > 0.0)) throw InvalidSpec("initial deformation gradient needs det F0 > 0");
  if (incompressible && std::abs(det - 1.0) > 1e-12)
    throw InvalidSpec("incompressible body needs det F0 = 1");
}

double prb_stored_energy(const PseudoRigidParams& params, const Mat3& c) {
  const Mat3 e = c - Mat3::Identity();
  const double tr = e.trace();
  return 0.5 * params.lambda * tr * tr + params.mu * (e * e).trace();
}

Mat3 prb_stored_energy_gradient(const PseudoRigidParams& params, const Mat3& c) {
  const Mat3 e = c - Mat3::Identity();
  return params.lambda * e.trace() * Mat3::Identity() + 2.0 * params.mu * e;
}

double prb_energy(const PseudoRigidParams& params, const Mat3& f, const Mat3& p) {
  const Mat3 pe = p * params.inertia.cwiseInverse().asDiagonal();
  return 0.5 * (p.transpose() * pe).trace() + prb_stored_energy(params, f.transpose() * f);
}

VariationalDerivatives prb_variational_derivs(const PseudoRigidParams& params, const Mat3& f, const Mat3& p) {
  checked_inverse(f);
  // Plus sign: this is what finite differences of H in F give.
  return {2.0 * f * prb_stored_energy_gradient(params, f.transpose() * f),
          p * params.inertia.cwiseInverse().asDiagonal()};
}

Covector prb_trivialized_differential(const PseudoRigidParams& params, const Mat3& f, const Mat3& p) {
  const VariationalDerivatives d = prb_variational_derivs(params, f, p);
  const Mat3 gamma2 = d.d_p * checked_inverse(f);
  const Mat3 gamma1 = d.d_f - (gamma2.transpose() * p - p * gamma2.transpose());
  return Covector(stack(gamma1, gamma2));
}

Covector prb_right_trivialized_dH(const PseudoRigidParams& params, const Mat3& f, const Mat3& p) {
  const VariationalDerivatives d = prb_variational_derivs(params, f, p);
  const Mat3& v = d.d_p;
  return Covector(stack(d.d_f * f.transpose() - p * v.transpose() + v.transpose() * p, v));
}

AlgebraElement prb_dg_step_assembly(const PseudoRigidParams& params, const GroupElement& x0,
                                    const AlgebraElement& eta, double h, bool with_alpha) {
  const LieGroup g = LieGroup::semidirect_gl3();
  const GroupElement mid = g.compose(g.exp(0.5 * eta), x0);
  Covector gamma = prb_trivialized_differential(params, mid.matrix(), mid.momentum());
  const double eta2 = eta.squared_norm();
  if (with_alpha && eta2 > 0.0) {
    const GroupElement x1 = g.compose(g.exp(eta), x0);
    const double dh = prb_energy(params, x1.matrix(), x1.momentum()) - prb_energy(params, x0.matrix(), x0.momentum());
    const double alpha = (dh - pairing(gamma, eta)) / eta2;
    gamma += alpha * flat(eta);
  }
  return h * darboux_contract(gamma);
}

GroupProblem pseudo_rigid_body(const PseudoRigidParams& params) {
  params.validate();
  GroupProblem problem;
  problem.name = "pseudo-rigid";
  problem.group = LieGroup::semidirect_gl3();
  problem.integral.value = [params](const GroupElement& x) { return prb_energy(params, x.matrix(), x.momentum()); };
  problem.integral.differential = [params](const GroupElement& x) {
    return prb_trivialized_differential(params, x.matrix(), x.momentum());
  };
  problem.field = [params](const GroupElement& x) {
    return darboux_contract(prb_trivialized_differential(params, x.matrix(), x.momentum()));
  };
  problem.exact_bivector = [](const GroupElement&) { return darboux_bivector(); };
  problem.constant_bivector = true;
  problem.initial = GroupElement::semidirect(params.f0, params.p0);
  return problem;
}

}  // namespace liedg
