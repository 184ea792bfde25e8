#pragma once

// Model systems: the free rigid body on S^2, rigid body attitude on unit
// quaternions, and the St Venant-Kirchhoff pseudo-rigid body on
// GL+(3) x gl(3)*.

#include "liedg/integrator.hpp"

namespace liedg {

struct RigidBodyParams {
  /// Diagonal of the inertia tensor.
  Vec3 inertia{1.0, 2.0, 3.0};
  /// Initial body momentum (sphere: normalized to give p0).
  Vec3 m0{1.0, 1.0, 1.0};

  /// Throws InvalidSpec unless every inertia entry is positive and finite.
  void validate() const;

  /// Sphere experiment defaults: I = diag(1, 2, 3).
  static RigidBodyParams sphere_default();
  /// Attitude experiment defaults: I = diag(1, 5, 60), m0 = I (1, 0.5, -1).
  static RigidBodyParams attitude_default();
};

// Free rigid body on the unit sphere.

/// H(p) = (p, I^{-1} p) / 2.
double sphere_rb_energy(const Vec3& inertia, const Vec3& p);
/// p x I^{-1} p.
Vec3 sphere_rb_field(const Vec3& inertia, const Vec3& p);
/// Euclidean gradient I^{-1} p of the quadratic extension.
Vec3 sphere_rb_gradient(const Vec3& inertia, const Vec3& p);
/// Closed-form Gonzalez differential for the geodesic-midpoint center, with
/// m = (p + q) / 2:
///   (I^{-1} m + (|m|^2 - 1) (H(q) - H(p)) / |q - p|^2 (q - p)) / |m|.
/// Not projected onto T_c; equal to the generic one after projection.
Vec3 sphere_rb_gonzalez_closed_form(const Vec3& inertia, const Vec3& p, const Vec3& q);

SphereProblem sphere_rigid_body(const RigidBodyParams& params, CenterChoice center = CenterChoice::Midpoint);

// Rigid body attitude on unit quaternions.

/// H(q) = m0^T E(q) I^{-1} E(q_c) m0 / 2.
double quat_energy(const RigidBodyParams& params, const Vec4& q);
/// f(q) = q . v . q_c with v = I^{-1} E(q_c) m0 / 2.
AlgebraElement quat_attitude_field(const RigidBodyParams& params, const Vec4& q);
/// Gradient of H in R^4 (H extended by the polynomial formula).
Vec4 quat_euclidean_gradient(const RigidBodyParams& params, const Vec4& q);
/// (I - q q^T) grad H.
Vec4 quat_riemannian_gradient(const RigidBodyParams& params, const Vec4& q);
/// Trivialized differential gamma = grad H . q_c (vector part).
Covector quat_grad(const RigidBodyParams& params, const Vec4& q);
/// omega_R(q) = (xi gamma^T - gamma xi^T) / |gamma|^2.
BivectorForm quat_omega_r(const RigidBodyParams& params, const Vec4& q);

GroupProblem quaternion_rigid_body(const RigidBodyParams& params);

// Pseudo-rigid body.

struct PseudoRigidParams {
  double lambda = 1.0 / 3.0;
  double mu = 1.0;
  /// Diagonal of the inertia tensor E.
  Vec3 inertia{1.0, 2.0, 3.0};
  Mat3 f0 = Mat3::Identity();
  Mat3 p0 = Vec3(0.2575, 0.8407, 0.2543).asDiagonal();
  /// F in SL(3): only asserts det F0 = 1; no projection is applied.
  bool incompressible = false;

  /// Throws InvalidSpec unless mu > 0, 3 lambda + 2 mu > 0, E > 0,
  /// det F0 > 0 (and det F0 = 1 within 1e-12 when incompressible).
  void validate() const;
};

/// W(C) = lambda (tr(C - I))^2 / 2 + mu tr((C - I)^2).
double prb_stored_energy(const PseudoRigidParams& params, const Mat3& c);
/// grad W(C) = lambda tr(C - I) I + 2 mu (C - I).
Mat3 prb_stored_energy_gradient(const PseudoRigidParams& params, const Mat3& c);
/// H = tr(P^T P E^{-1}) / 2 + W(F^T F).
double prb_energy(const PseudoRigidParams& params, const Mat3& f, const Mat3& p);

struct VariationalDerivatives {
  Mat3 d_f;  // dH/dF = 2 F grad W(F^T F)
  Mat3 d_p;  // dH/dP = P E^{-1}
};
/// Throws DomainError for singular F.
VariationalDerivatives prb_variational_derivs(const PseudoRigidParams& params, const Mat3& f, const Mat3& p);

/// (gamma1, gamma2) stacked as an 18-vector: gamma2 = (dH/dP) F^{-1},
/// gamma1 = dH/dF - ad*_{gamma2} P. The Darboux form maps it to the
/// right-trivialized canonical vector field (gamma2, -gamma1).
Covector prb_trivialized_differential(const PseudoRigidParams& params, const Mat3& f, const Mat3& p);

/// Differential of H along t -> Exp(t (xi, mu)) (F, P):
/// (dH/dF F^T - P V^T + V^T P, V) with V = dH/dP.
Covector prb_right_trivialized_dH(const PseudoRigidParams& params, const Mat3& f, const Mat3& p);

/// One evaluation of the energy-preserving step map: given (F0, P0) and a
/// candidate (F1, P1) = Exp(eta)(F0, P0), returns
/// h (gamma2 + alpha eta_P, -gamma1 - alpha eta_F) with gamma taken at
/// Exp(eta/2)(F0, P0). with_alpha = false gives the alpha = 0 comparator.
AlgebraElement prb_dg_step_assembly(const PseudoRigidParams& params, const GroupElement& x0,
                                    const AlgebraElement& eta, double h, bool with_alpha = true);

GroupProblem pseudo_rigid_body(const PseudoRigidParams& params);

}  // namespace liedg
