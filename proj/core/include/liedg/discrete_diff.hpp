#pragma once

// Trivialized discrete differentials. For u, v in G with eta = log(v u^{-1})
// every scheme here returns a covector dbar satisfying
//
//   H(v) - H(u) = <dbar(u, v), eta>          (discrete chain rule)
//   dbar(x, x)  = R_x^* dH_x                 (consistency)
//
// exactly (Gonzalez) or up to quadrature error (AVF). The manifold variants
// replace eta by phi_c^{-1}(q) - phi_c^{-1}(p) for a center point c.

#include <functional>

#include "liedg/lie_core.hpp"
#include "liedg/manifold.hpp"

namespace liedg {

/// H together with its right-trivialized differential x -> R_x^* dH_x.
struct FirstIntegral {
  std::function<double(const GroupElement&)> value;
  std::function<Covector(const GroupElement&)> differential;
};

/// H on a sphere, given by an extension to R^n and its Euclidean gradient.
struct ManifoldFirstIntegral {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;

  double operator()(const ManifoldPoint& p) const { return value(p.coords()); }
  /// dH|_p restricted to T_p (tangential part of the gradient).
  CotangentVector differential(const ManifoldPoint& p) const;
};

enum class DiffScheme {
  AVF,
  Gonzalez,
  /// Gonzalez without the chain-rule correction term (alpha = 0). Symmetric
  /// and consistent but not integral preserving; used as a comparator.
  MidpointUncorrected,
};

struct DiscreteDifferentialScheme {
  DiffScheme tag = DiffScheme::Gonzalez;
  int quadrature_nodes = 6;
};

/// int_0^1 R^*_{l(s)} dH_{l(s)} ds along l(s) = exp(s eta) u.
Covector ddiff_avf(const LieGroup& group, const FirstIntegral& H, const GroupElement& u, const GroupElement& v,
                   int quadrature_nodes = 6);

/// R_c^* dH_c + (H(v) - H(u) - <R_c^* dH_c, eta>) / (eta, eta) eta^flat with
/// c = exp(eta / 2) u. Falls back to R_u^* dH_u when eta = 0.
Covector ddiff_gonzalez(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                        const GroupElement& v);
/// As above with a caller-chosen c.
Covector ddiff_gonzalez(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                        const GroupElement& v, const GroupElement& c);

/// Dispatch on scheme. When eta = log(v u^{-1}) is already known (v was
/// built as exp(eta) u) pass it to skip the logarithm.
Covector discrete_differential(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                               const GroupElement& v, const DiscreteDifferentialScheme& scheme);
Covector discrete_differential(const LieGroup& group, const FirstIntegral& H, const GroupElement& u,
                               const GroupElement& v, const AlgebraElement& eta,
                               const DiscreteDifferentialScheme& scheme);

/// AVF differential on S^3 built by averaging gamma(s) = grad H|_{q(s)} . q_c(s)
/// along q(s) = exp(s log(q' q_c)) q. riemannian_gradient maps a unit
/// quaternion to grad H in R^4.
Covector ddiff_avf_riemannian_s3(const std::function<Vec4(const Vec4&)>& riemannian_gradient,
                                 const GroupElement& q, const GroupElement& q_next, int quadrature_nodes = 6);

/// dH|_c + (H(q) - H(p) - <dH|_c, eta>) / (eta, eta) eta with
/// eta = phi_c^{-1}(q) - phi_c^{-1}(p).
CotangentVector ddiff_manifold_gonzalez(const ManifoldFirstIntegral& H, const ManifoldPoint& p,
                                        const ManifoldPoint& q, const ManifoldPoint& c);

/// int_0^1 (T phi_c)^* dH|_{phi_c(g(s))} ds, g(s) = (1 - s) phi_c^{-1}(p) + s phi_c^{-1}(q).
CotangentVector ddiff_manifold_avf(const ManifoldFirstIntegral& H, const ManifoldPoint& p,
                                   const ManifoldPoint& q, const ManifoldPoint& c, int quadrature_nodes = 6);

/// Uncorrected comparator: dH|_c.
CotangentVector ddiff_manifold_midpoint(const ManifoldFirstIntegral& H, const ManifoldPoint& c);

}  // namespace liedg
