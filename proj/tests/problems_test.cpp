#include <gtest/gtest.h>

#include <cmath>

#include "liedg/problems.hpp"
#include "test_support.hpp"

using namespace liedg;
using liedg::testing::fd_ratio;
using liedg::testing::random_unit_quaternion;
using liedg::testing::random_vec;

namespace {

Mat3 random_deformation() { return matrix_exp(0.3 * Mat3::Random()); }

Mat3 column_major(const Vec& v, int offset) { return Eigen::Map<const Mat3>(v.data() + offset); }

}  // namespace

TEST(SphereRigidBody, Examples) {
  const Vec3 inertia(1, 2, 3);
  EXPECT_EQ(sphere_rb_field(inertia, Vec3::UnitX()), Vec3::Zero());
  EXPECT_DOUBLE_EQ(sphere_rb_energy(inertia, Vec3::UnitX()), 0.5);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p = liedg::testing::random_unit3();
    EXPECT_NEAR(p.dot(sphere_rb_field(inertia, p)), 0.0, 1e-15);
    EXPECT_NEAR(sphere_rb_gradient(inertia, p).dot(sphere_rb_field(inertia, p)), 0.0, 1e-15);
    // The field is the contraction of dH with the exact bivector.
    EXPECT_LT((sphere_bivector(p).contract(Vec(sphere_rb_gradient(inertia, p))) - sphere_rb_field(inertia, p)).norm(),
              1e-15);
  }
}

TEST(SphereRigidBody, GradientMatchesFiniteDifferences) {
  const Vec3 inertia(1, 2, 3);
  const Vec3 p = liedg::testing::random_unit3(), d = random_vec(3);
  const auto f = [&](double e) { return sphere_rb_energy(inertia, p + e * d); };
  EXPECT_NEAR(liedg::testing::central_difference(f, 1e-4), sphere_rb_gradient(inertia, p).dot(d), 1e-10);
}

TEST(SphereRigidBody, ProblemDefaults) {
  const SphereProblem prob = sphere_rigid_body(RigidBodyParams::sphere_default());
  EXPECT_NEAR(prob.initial.coords().norm(), 1.0, 1e-15);
  EXPECT_GT(sphere_rb_field(Vec3(1, 2, 3), prob.initial.coords()).norm(), 0.1);
  RigidBodyParams bad;
  bad.inertia[1] = 0.0;
  EXPECT_THROW(sphere_rigid_body(bad), InvalidSpec);
}

TEST(Quaternion, EnergyAtIdentity) {
  const RigidBodyParams params = RigidBodyParams::attitude_default();
  EXPECT_DOUBLE_EQ(quat_energy(params, Vec4(1, 0, 0, 0)), 0.5 * (1.0 + 5.0 * 0.25 + 60.0));
  EXPECT_DOUBLE_EQ(quat_energy(params, Vec4(1, 0, 0, 0)), 31.125);
}

TEST(Quaternion, FieldAndDifferentialAreConsistent) {
  const RigidBodyParams params = RigidBodyParams::attitude_default();
  for (int i = 0; i < 100; ++i) {
    const Vec4 q = random_unit_quaternion();
    const Covector gamma = quat_grad(params, q);
    const AlgebraElement f = quat_attitude_field(params, q);
    // Scalar part of grad H . q_c vanishes.
    // Projection cancels against the full Euclidean gradient.
    const double scale = quat_euclidean_gradient(params, q).norm();
    EXPECT_NEAR(quat_mul(quat_riemannian_gradient(params, q), quat_conj(q))[0], 0.0, 1e-14 * scale);
    EXPECT_NEAR(pairing(gamma, f), 0.0, 1e-12 * gamma.norm() * f.norm());
  }
}

TEST(Quaternion, DifferentialMatchesFiniteDifferences) {
  const RigidBodyParams params = RigidBodyParams::attitude_default();
  const LieGroup s3 = LieGroup::unit_quaternions();
  for (int i = 0; i < 10; ++i) {
    const Vec4 q = random_unit_quaternion();
    const AlgebraElement eta(random_vec(3));
    const auto f = [&](double e) { return quat_energy(params, quat_mul(s3.exp(e * eta).quaternion(), q)); };
    const double exact = pairing(quat_grad(params, q), eta);
    EXPECT_NEAR(liedg::testing::central_difference(f, 1e-5), exact, 1e-6 * std::max(1.0, std::abs(exact)));
    EXPECT_NEAR(fd_ratio(f, exact, 2e-2), 4.0, 0.5);
  }
}

TEST(Quaternion, EuclideanGradientMatchesFiniteDifferences) {
  const RigidBodyParams params = RigidBodyParams::attitude_default();
  const Vec4 q = random_unit_quaternion();
  const Vec4 d = random_vec(4);
  const auto f = [&](double e) { return quat_energy(params, q + e * d); };
  const double exact = quat_euclidean_gradient(params, q).dot(d);
  EXPECT_NEAR(liedg::testing::central_difference(f, 1e-5), exact, 1e-6 * std::max(1.0, std::abs(exact)));
  EXPECT_NEAR(fd_ratio(f, exact, 2e-2), 4.0, 0.5);
}

TEST(Quaternion, FieldIsAngularVelocityKinematics) {
  // f(q) q = q v with v = Omega / 2.
  const RigidBodyParams params = RigidBodyParams::attitude_default();
  const Vec4 q = random_unit_quaternion();
  Vec4 fq;
  fq << 0.0, quat_attitude_field(params, q).coords;
  const Vec3 body = euler_rodriguez(quat_conj(q)) * params.m0;
  Vec4 omega;
  omega << 0.0, body.cwiseQuotient(params.inertia);
  EXPECT_LT((quat_mul(fq, q) - 0.5 * quat_mul(q, omega)).norm(), 1e-13);
}

TEST(Quaternion, HeunDriftScalesLikeHSquared) {
  const RigidBodyParams params = RigidBodyParams::attitude_default();
  const GroupProblem p = quaternion_rigid_body(params);
  const auto drift = [&](double h) {
    GroupElement x = p.initial;
    for (int n = 0; n < std::lround(0.5 / h); ++n) x = heun_step(x, h, p);
    return std::abs(p.integral.value(x) - p.integral.value(p.initial));
  };
  const double ratio = drift(1.0 / 256) / drift(1.0 / 512);
  EXPECT_GT(ratio, 3.0);
  EXPECT_GT(drift(1.0 / 64), 1e-8);
}

TEST(PseudoRigid, StoredEnergyAndGradient) {
  const PseudoRigidParams params;
  EXPECT_EQ(prb_stored_energy(params, Mat3::Identity()), 0.0);
  const VariationalDerivatives d0 = prb_variational_derivs(params, Mat3::Identity(), params.p0);
  EXPECT_EQ(d0.d_f, Mat3::Zero());
  for (int i = 0; i < 10; ++i) {
    const Mat3 f = random_deformation();
    const Mat3 c = f.transpose() * f;
    const Mat3 delta = Mat3::Random();
    const auto w = [&](double e) { return prb_stored_energy(params, c + e * delta); };
    const double exact = (prb_stored_energy_gradient(params, c).transpose() * delta).trace();
    // W is quadratic in C, so the one-sided error is exactly O(eps^2).
    const double e1 = std::abs(w(1e-3) - w(0.0) - 1e-3 * exact);
    const double e2 = std::abs(w(5e-4) - w(0.0) - 5e-4 * exact);
    EXPECT_NEAR(e1 / e2, 4.0, 0.5);
    EXPECT_GE(prb_stored_energy(params, c), 0.0);
  }
}

TEST(PseudoRigid, InitialEnergyIsKinetic) {
  const PseudoRigidParams params;
  const Vec3 p(0.2575, 0.8407, 0.2543);
  const double expected = 0.5 * (p[0] * p[0] / 1.0 + p[1] * p[1] / 2.0 + p[2] * p[2] / 3.0);
  EXPECT_NEAR(prb_energy(params, params.f0, params.p0), expected, 1e-16);
}

TEST(PseudoRigid, VariationalDerivativesMatchFiniteDifferences) {
  const PseudoRigidParams params;
  for (int i = 0; i < 10; ++i) {
    const Mat3 f = random_deformation(), p = Mat3::Random();
    const Mat3 df = Mat3::Random(), dp = Mat3::Random();
    const VariationalDerivatives d = prb_variational_derivs(params, f, p);
    const auto along_f = [&](double e) { return prb_energy(params, f + e * df, p); };
    const auto along_p = [&](double e) { return prb_energy(params, f, p + e * dp); };
    const double exact_f = (d.d_f.transpose() * df).trace();
    const double exact_p = (d.d_p.transpose() * dp).trace();
    EXPECT_NEAR(liedg::testing::central_difference(along_f, 1e-5), exact_f, 1e-6 * std::max(1.0, std::abs(exact_f)));
    EXPECT_NEAR(fd_ratio(along_f, exact_f, 1e-2), 4.0, 0.5);
    EXPECT_NEAR(liedg::testing::central_difference(along_p, 1e-5), exact_p, 1e-8);
  }
}

TEST(PseudoRigid, RightTrivializedDifferentialMatchesFiniteDifferences) {
  const PseudoRigidParams params;
  const LieGroup g = LieGroup::semidirect_gl3();
  for (int i = 0; i < 10; ++i) {
    const Mat3 f = random_deformation(), p = Mat3::Random();
    const GroupElement x = GroupElement::semidirect(f, p);
    const AlgebraElement eta(random_vec(18));
    const auto along = [&](double e) {
      const GroupElement y = g.compose(g.exp(e * eta), x);
      return prb_energy(params, y.matrix(), y.momentum());
    };
    const double exact = pairing(prb_right_trivialized_dH(params, f, p), eta);
    EXPECT_NEAR(liedg::testing::central_difference(along, 1e-5), exact, 1e-6 * std::max(1.0, std::abs(exact)));
    EXPECT_NEAR(fd_ratio(along, exact, 1e-2), 4.0, 0.5);
  }
}

TEST(PseudoRigid, TrivializedDifferentialStructure) {
  const PseudoRigidParams params;
  const LieGroup g = LieGroup::semidirect_gl3();
  const LieGroup gl = LieGroup::gl_plus3();
  for (int i = 0; i < 10; ++i) {
    const Mat3 f = random_deformation(), p = Mat3::Random();
    const Covector gamma = prb_trivialized_differential(params, f, p);
    const VariationalDerivatives d = prb_variational_derivs(params, f, p);
    const Mat3 gamma1 = column_major(gamma.coords, 0), gamma2 = column_major(gamma.coords, 9);
    EXPECT_LT((gamma2 - d.d_p * f.inverse()).norm(), 1e-13);
    const Covector coad = gl.coad(AlgebraElement(Vec(Eigen::Map<const Vec>(gamma2.data(), 9))),
                                  Covector(Vec(Eigen::Map<const Vec>(p.data(), 9))));
    EXPECT_LT((gamma1 - (d.d_f - column_major(coad.coords, 0))).norm(), 1e-12);

    // The Darboux image of gamma is the canonical flow F' = dH/dP, P' = -dH/dF.
    const GroupElement x = GroupElement::semidirect(f, p);
    const AlgebraElement xi = darboux_contract(gamma);
    const double e = 1e-6;
    const GroupElement y = g.compose(g.exp(e * xi), x), z = g.compose(g.exp(-e * xi), x);
    EXPECT_LT(((y.matrix() - z.matrix()) / (2 * e) - d.d_p).norm(), 1e-7);
    EXPECT_LT(((y.momentum() - z.momentum()) / (2 * e) + d.d_f).norm(), 1e-7 * std::max(1.0, d.d_f.norm()));

    // Both covectors annihilate the flow direction.
    EXPECT_NEAR(pairing(gamma, xi), 0.0, 1e-12 * gamma.squared_norm());
    EXPECT_NEAR(pairing(prb_right_trivialized_dH(params, f, p), xi), 0.0,
                1e-12 * std::max(1.0, gamma.squared_norm()));
  }
  const Covector at_rest = prb_trivialized_differential(params, random_deformation(), Mat3::Zero());
  EXPECT_EQ(at_rest.coords.tail(9), Vec::Zero(9));
}

TEST(PseudoRigid, AssemblyAtZeroIncrementIsDarbouxFlow) {
  const PseudoRigidParams params;
  const GroupProblem p = pseudo_rigid_body(params);
  const double h = 1.0 / 16;
  const AlgebraElement z = prb_dg_step_assembly(params, p.initial, AlgebraElement(Vec::Zero(18)), h);
  EXPECT_LT((z - h * p.field(p.initial)).norm(), 1e-16);
}

TEST(PseudoRigid, AssemblyMatchesGenericUpdate) {
  const PseudoRigidParams params;
  const GroupProblem p = pseudo_rigid_body(params);
  const LieGroup& g = p.group;
  const double h = 1.0 / 16;
  for (bool alpha : {true, false}) {
    const AlgebraElement eta(random_vec(18, 0.05));
    const GroupElement v = g.compose(g.exp(eta), p.initial);
    const DiscreteDifferentialScheme scheme{alpha ? DiffScheme::Gonzalez : DiffScheme::MidpointUncorrected, 6};
    const Covector dbar = discrete_differential(g, p.integral, p.initial, v, eta, scheme);
    const AlgebraElement generic = h * darboux_contract(dbar);
    EXPECT_LT((prb_dg_step_assembly(params, p.initial, eta, h, alpha) - generic).norm(), 1e-15);
  }
}

TEST(PseudoRigid, EnergySplitsIntoNonnegativeParts) {
  const PseudoRigidParams params;
  for (int i = 0; i < 100; ++i) {
    const Mat3 f = random_deformation(), p = Mat3::Random();
    const double w = prb_stored_energy(params, f.transpose() * f);
    const double k = prb_energy(params, f, p) - w;
    EXPECT_GE(w, 0.0);
    EXPECT_GE(k, 0.0);
    EXPECT_NEAR(k, 0.5 * (p.transpose() * p * params.inertia.cwiseInverse().asDiagonal()).trace(), 1e-14);
  }
}

TEST(PseudoRigid, ValidationAndSingularF) {
  PseudoRigidParams params;
  params.mu = 0.0;
  EXPECT_THROW(params.validate(), InvalidSpec);
  params = PseudoRigidParams();
  params.lambda = -1.0;
  EXPECT_THROW(params.validate(), InvalidSpec);
  params = PseudoRigidParams();
  params.f0 = Vec3(-1, 1, 1).asDiagonal();
  EXPECT_THROW(params.validate(), InvalidSpec);
  params = PseudoRigidParams();
  params.incompressible = true;
  params.f0 = 2.0 * Mat3::Identity();
  EXPECT_THROW(params.validate(), InvalidSpec);
  EXPECT_THROW(prb_variational_derivs(PseudoRigidParams(), Mat3::Zero(), Mat3::Identity()), DomainError);
}

TEST(Problems, FirstIntegralOrthogonality) {
  const GroupProblem quat = quaternion_rigid_body(RigidBodyParams::attitude_default());
  const GroupProblem prb = pseudo_rigid_body(PseudoRigidParams());
  for (int i = 0; i < 100; ++i) {
    const GroupElement q = GroupElement::quaternion(random_unit_quaternion());
    const Covector dq = quat.integral.differential(q);
    EXPECT_NEAR(pairing(dq, quat.field(q)), 0.0, 1e-12 * std::max(1.0, dq.squared_norm()));
    const GroupElement x = GroupElement::semidirect(random_deformation(), Mat3::Random());
    const Covector dx = prb.integral.differential(x);
    EXPECT_NEAR(pairing(dx, prb.field(x)), 0.0, 1e-12 * std::max(1.0, dx.squared_norm()));
  }
}
