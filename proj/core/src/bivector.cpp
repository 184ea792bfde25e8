#include "liedg/bivector.hpp"

namespace liedg {

BivectorForm::BivectorForm(int dim, Contraction contraction) : dim_(dim), contraction_(std::move(contraction)) {
  if (dim_ <= 0 || !contraction_) throw InvalidSpec("BivectorForm needs a dimension and a contraction");
}

BivectorForm BivectorForm::from_matrix(Mat skew) {
  if (skew.rows() != skew.cols()) throw KindMismatch("bivector matrix must be square");
  const int n = static_cast<int>(skew.rows());
  return BivectorForm(n, [s = std::move(skew)](const Vec& a) -> Vec { return s * a; });
}

Vec BivectorForm::contract(const Vec& mu) const {
  if (mu.size() != dim_) throw KindMismatch("bivector contraction: dimension mismatch");
  return contraction_(mu);
}

Mat BivectorForm::matrix() const {
  Mat m(dim_, dim_);
  for (int k = 0; k < dim_; ++k) m.col(k) = contract(Vec(Vec::Unit(dim_, k)));
  return m;
}

BivectorForm bivector_from_gradient(const Vec& field, const Vec& gradient) {
  if (field.size() != gradient.size()) throw KindMismatch("bivector_from_gradient: dimension mismatch");
  const double g2 = gradient.squaredNorm();
  if (std::sqrt(g2) < 1e-14) throw DomainError("bivector_from_gradient: gradient vanishes (equilibrium)");
  return BivectorForm::from_matrix((field * gradient.transpose() - gradient * field.transpose()) / g2);
}

BivectorForm sphere_bivector(const Vec3& p) {
  return BivectorForm(3, [p](const Vec& a) -> Vec { return p.cross(Vec3(a)); });
}

BivectorForm omega_bar_sphere(const Vec3& p, const Vec3& q) { return sphere_bivector(0.5 * (p + q)); }

BivectorForm omega_bar_midpoint(const LieGroup& group, const ExactBivector& exact, const GroupElement& u,
                                const GroupElement& v) {
  const AlgebraElement eta = group.log(group.compose(v, group.inverse(u)));
  return exact(group.compose(group.exp(0.5 * eta), u));
}

BivectorForm omega_bar_midpoint_s3(const GroupElement& q, const GroupElement& q_next,
                                   const std::function<AlgebraElement(const GroupElement&)>& field,
                                   const std::function<Covector(const GroupElement&)>& gamma) {
  const ExactBivector omega_r = [&](const GroupElement& x) {
    return bivector_from_gradient(field(x).coords, gamma(x).coords);
  };
  return omega_bar_midpoint(LieGroup::unit_quaternions(), omega_r, q, q_next);
}

AlgebraElement darboux_contract(const Covector& mu) {
  if (mu.size() != 18) throw KindMismatch("darboux_contract expects an 18-dim covector");
  Vec out(18);
  out.head<9>() = mu.coords.tail<9>();
  out.tail<9>() = -mu.coords.head<9>();
  return AlgebraElement(out);
}

BivectorForm darboux_bivector() {
  return BivectorForm(18, [](const Vec& a) -> Vec { return darboux_contract(Covector(a)).coords; });
}

BivectorForm omega_bar_collocation(const LieGroup& group, const GroupElement& x0, const AlgebraElement& sigma_j,
                                   const ExactBivector& exact) {
  return exact(group.compose(group.exp(sigma_j), x0));
}

}  // namespace liedg
