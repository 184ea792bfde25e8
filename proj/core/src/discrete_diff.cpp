#include "liedg/discrete_diff.hpp"

#include "liedg/quadrature.hpp"

namespace liedg {

namespace {

Covector avf_along(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                   const AlgebraElement& eta, int nodes) {
  const QuadratureRule& rule = gauss_legendre_cached(nodes);
  Covector sum = Covector::zero(group.algebra_dim());
  for (int i = 0; i < rule.size(); ++i) {
    const GroupElement x = group.compose(group.exp(rule.nodes[i] * eta), u);
    sum += rule.weights[i] * H.differential(x);
  }
  return sum;
}

Covector gonzalez_with(const FirstIntegral& H, const GroupElement& u, const GroupElement& v,
                       const AlgebraElement& eta, const GroupElement& c) {
  // log(u u^-1) is only zero up to rounding for matrix groups.
  if (u.data() == v.data()) return H.differential(u);
  const Covector dc = H.differential(c);
  const double eta2 = eta.squared_norm();
  if (eta2 == 0.0) return dc;
  const double defect = H.value(v) - H.value(u) - pairing(dc, eta);
  return dc + (defect / eta2) * flat(eta);
}

}  // namespace

CotangentVector ManifoldFirstIntegral::differential(const ManifoldPoint& p) const {
  return TangentVector::project(p, gradient(p.coords()));
}

Covector ddiff_avf(const LieGroup& group, const FirstIntegral& H, const GroupElement& u, const GroupElement& v,
                   int quadrature_nodes) {
  const AlgebraElement eta = group.log(group.compose(v, group.inverse(u)));
  return avf_along(group, H, u, eta, quadrature_nodes);
}

Covector ddiff_gonzalez(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                        const GroupElement& v) {
  const AlgebraElement eta = group.log(group.compose(v, group.inverse(u)));
  const GroupElement c = group.compose(group.exp(0.5 * eta), u);
  return gonzalez_with(H, u, v, eta, c);
}

Covector ddiff_gonzalez(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                        const GroupElement& v, const GroupElement& c) {
  const AlgebraElement eta = group.log(group.compose(v, group.inverse(u)));
  return gonzalez_with(H, u, v, eta, c);
}

Covector discrete_differential(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                               const GroupElement& v, const DiscreteDifferentialScheme& scheme) {
  const AlgebraElement eta = group.log(group.compose(v, group.inverse(u)));
  return discrete_differential(group, H, u, v, eta, scheme);
}

Covector discrete_differential(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                               const GroupElement& v, const AlgebraElement& eta,
                               const DiscreteDifferentialScheme& scheme) {
  switch (scheme.tag) {
    case DiffScheme::AVF: return avf_along(group, H, u, eta, scheme.quadrature_nodes);
    case DiffScheme::Gonzalez: {
      if (u.data() == v.data()) return H.differential(u);
      return gonzalez_with(H, u, v, eta, group.compose(group.exp(0.5 * eta), u));
    }
    case DiffScheme::MidpointUncorrected: return H.differential(group.compose(group.exp(0.5 * eta), u));
  }
  throw InvalidSpec("unknown discrete differential scheme");
}

Covector ddiff_avf_riemannian_s3(const std::function<Vec4(const Vec4&)>& riemannian_gradient,
                                 const GroupElement& q, const GroupElement& q_next, int quadrature_nodes) {
  const LieGroup s3 = LieGroup::unit_quaternions();
  const AlgebraElement eta = s3.log(s3.compose(q_next, s3.inverse(q)));
  const QuadratureRule& rule = gauss_legendre_cached(quadrature_nodes);
  Vec3 sum = Vec3::Zero();
  for (int i = 0; i < rule.size(); ++i) {
    const Vec4 qs = s3.compose(s3.exp(rule.nodes[i] * eta), q).quaternion();
    const Vec4 gamma = quat_mul(riemannian_gradient(qs), quat_conj(qs));
    sum += rule.weights[i] * gamma.tail<3>();
  }
  return Covector(Vec(sum));
}

CotangentVector ddiff_manifold_gonzalez(const ManifoldFirstIntegral& H, const ManifoldPoint& p,
                                        const ManifoldPoint& q, const ManifoldPoint& c) {
  const CotangentVector dc = H.differential(c);
  const Eigen::VectorXd eta = retract_inverse(c, q).vec - retract_inverse(c, p).vec;
  const double eta2 = eta.squaredNorm();
  if (eta2 == 0.0) return dc;
  const double defect = H(q) - H(p) - dc.vec.dot(eta);
  return TangentVector::project(c, dc.vec + (defect / eta2) * eta);
}

CotangentVector ddiff_manifold_avf(const ManifoldFirstIntegral& H, const ManifoldPoint& p,
                                   const ManifoldPoint& q, const ManifoldPoint& c, int quadrature_nodes) {
  const TangentVector v = retract_inverse(c, p);
  const TangentVector w = retract_inverse(c, q);
  const QuadratureRule& rule = gauss_legendre_cached(quadrature_nodes);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(c.dim());
  for (int i = 0; i < rule.size(); ++i) {
    const double s = rule.nodes[i];
    const TangentVector g(c, (1.0 - s) * v.vec + s * w.vec);
    const ManifoldPoint x = retract(g);
    // T phi_c is symmetric, so its transpose acts on the gradient directly.
    sum += rule.weights[i] * retraction_tangent_map(c, g, H.gradient(x.coords()));
  }
  return TangentVector::project(c, sum);
}

CotangentVector ddiff_manifold_midpoint(const ManifoldFirstIntegral& H, const ManifoldPoint& c) {
  return H.differential(c);
}

}  // namespace liedg
