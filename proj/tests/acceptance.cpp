// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "liedg/harness.hpp"
#include "test_support.hpp"

namespace {

using namespace liedg;
namespace lt = liedg::testing;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int failures = 0;

void report(int id, const char* title, const Verdict& v) {
  std::printf("%s criterion %d: %s -- %s\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

ExperimentSpec pseudo_rigid(MethodId method, double h) {
  ExperimentSpec spec = ExperimentSpec::defaults(ProblemId::PseudoRigid, method);
  spec.h = h;
  spec.t_end = 500.0;
  spec.tol = 1e-14;
  return spec;
}

double max_abs_h_err(const std::vector<StepRecord>& records) {
  double worst = 0.0;
  for (const auto& r : records) worst = std::max(worst, std::abs(r.H_err));
  return worst;
}

// Criteria 1-3 and the det F half of 9 share these runs.
struct PseudoRigidRuns {
  std::vector<StepRecord> ep, sym, heun;
};

Verdict energy_preservation(const PseudoRigidRuns& runs) {
  const double worst = max_abs_h_err(runs.ep);
  return {worst <= 1e-10, "dg-gonzalez h=1/16 on [0,500], " + std::to_string(runs.ep.size() - 1) +
                              " steps: max|H_err| = " + sci(worst) + " (need <= 1e-10)"};
}

Verdict alpha_zero(const PseudoRigidRuns& runs) {
  const double worst = max_abs_h_err(runs.sym);
  return {worst >= 1e-4 && worst <= 1e-2,
          "sym-alpha0 h=1/16 on [0,500]: max|H_err| = " + sci(worst) + " (need in [1e-4, 1e-2])"};
}

Verdict heun_drift(const PseudoRigidRuns& runs) {
  const double heun = max_abs_h_err(runs.heun);
  const double sym = max_abs_h_err(runs.sym);
  return {heun >= 10.0 * sym, "heun h=1/32 max|H_err| = " + sci(heun) + " vs sym-alpha0 " + sci(sym) +
                                  ", ratio " + fixed(heun / sym, 1) + " (need >= 10)"};
}

const std::vector<double> kConvergenceSteps = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};

ExperimentSpec attitude(MethodId method) {
  ExperimentSpec spec = ExperimentSpec::defaults(ProblemId::QuatRB, method);
  spec.t_end = 1.0;
  spec.h_list = kConvergenceSteps;
  spec.reference_method = MethodId::Colloc4;
  spec.reference_h = std::ldexp(1.0, -10);
  return spec;
}

std::string ratios(const ConvergenceResult& r) {
  std::string out;
  for (std::size_t i = 1; i < r.error.size(); ++i)
    out += (i > 1 ? " " : "") + fixed(std::log2(r.error[i - 1] / r.error[i]), 2);
  return out;
}

Verdict convergence_orders() {
  const ConvergenceResult avf = convergence_study(attitude(MethodId::DgAvf));
  const ConvergenceResult col = convergence_study(attitude(MethodId::Colloc4));
  const bool ok2 = std::abs(avf.slope - 2.0) <= 0.2;
  const bool ok4 = std::abs(col.slope - 4.0) <= 0.2;
  return {ok2 && ok4, "quat-rb t_end=1, h=2^-3..2^-7, ref colloc4 h=2^-10: dg-avf slope " + fixed(avf.slope) +
                          " (need 2.0 +- 0.2), colloc4 slope " + fixed(col.slope) +
                          " (need 4.0 +- 0.2); successive log2 ratios dg-avf [" + ratios(avf) + "], colloc4 [" +
                          ratios(col) + "]"};
}

Verdict sphere_check() {
  ExperimentSpec spec = ExperimentSpec::defaults(ProblemId::SphereRB, MethodId::DgGonzalez);
  spec.h = 0.05;
  spec.t_end = 500.0;
  const auto records = run_trajectory(spec);
  double norm = 0.0;
  for (const auto& r : records) norm = std::max(norm, std::abs(r.aux - 1.0));
  const double h_err = max_abs_h_err(records);
  return {h_err <= 1e-12 && norm <= 1e-12 && records.size() == 10001,
          "I=diag(1,2,3), p0 ~ (1,0.4,0.6), 10^4 steps h=0.05: max|H_err| = " + sci(h_err) +
              ", max| |p|-1 | = " + sci(norm) + " (need both <= 1e-12)"};
}

Vec random_state(ProblemId problem) {
  switch (problem) {
    case ProblemId::SphereRB: return lt::random_unit3();
    case ProblemId::QuatRB: return lt::random_unit_quaternion();
    case ProblemId::PseudoRigid: {
      const Mat3 f = matrix_exp(0.1 * Mat3::Random());
      const Mat3 p = 0.5 * Mat3::Random();
      return GroupElement::semidirect(f, p).data();
    }
  }
  return {};
}

Verdict symmetry() {
  const double h = 1.0 / 16;
  Verdict v;
  for (ProblemId problem : {ProblemId::SphereRB, ProblemId::QuatRB, ProblemId::PseudoRigid}) {
    for (MethodId method : supported_methods(problem)) {
      if (!method_is_symmetric(method)) continue;
      const Simulation sim(ExperimentSpec::defaults(problem, method));
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const Vec x = random_state(problem);
        worst = std::max(worst, (sim.step(sim.step(x, h), -h) - x).norm());
      }
      const bool ok = worst <= 1e-12;
      v.pass = v.pass && ok;
      v.detail += (v.detail.empty() ? "" : ", ") + to_string(problem) + "/" + to_string(method) + " " + sci(worst) +
                  (ok ? "" : " [over]");
    }
  }
  v.detail = "h=1/16, 100 random states, max |step(-h) step(h) x - x|: " + v.detail + " (need <= 1e-12)";
  return v;
}

constexpr double kGonzalezTol = 1e-13;
constexpr double kAvfTol = 1e-12;
constexpr int kAvfNodes = 10;

Verdict discrete_differential_identities() {
  double gonzalez = 0.0, avf = 0.0, consistency = 0.0;
  for (const lt::Case& c : lt::cases()) {
    for (int i = 0; i < 1000; ++i) {
      const GroupElement u = lt::random_base(c.group);
      const AlgebraElement eta = lt::random_algebra(c.group, 0.25);
      const GroupElement v = c.group.compose(c.group.exp(eta), u);
      const AlgebraElement log_eta = c.group.log(c.group.compose(v, c.group.inverse(u)));
      const double scale = std::max({1.0, std::abs(c.H.value(u)), std::abs(c.H.value(v))});
      const double dh = c.H.value(v) - c.H.value(u);
      gonzalez = std::max(gonzalez, std::abs(dh - pairing(ddiff_gonzalez(c.group, c.H, u, v), log_eta)) / scale);
      avf = std::max(avf, std::abs(dh - pairing(ddiff_avf(c.group, c.H, u, v, kAvfNodes), log_eta)) / scale);
      const Covector exact = c.H.differential(u);
      const double dscale = std::max(1.0, exact.norm());
      consistency = std::max(consistency, (ddiff_gonzalez(c.group, c.H, u, u) - exact).norm() / dscale);
      consistency = std::max(consistency, (ddiff_avf(c.group, c.H, u, u, kAvfNodes) - exact).norm() / dscale);
    }
  }

  // Sphere instance with the rigid-body energy.
  const SphereProblem sphere = sphere_rigid_body(RigidBodyParams::sphere_default());
  for (int i = 0; i < 1000; ++i) {
    const ManifoldPoint p(Vec(lt::random_unit3()));
    const ManifoldPoint q = retract(TangentVector::project(p, lt::random_vec(3, 0.25)));
    const ManifoldPoint c = center(p, q);
    const Vec eta = retract_inverse(c, q).vec - retract_inverse(c, p).vec;
    const double dh = sphere.integral(q) - sphere.integral(p);
    const double scale = std::max({1.0, std::abs(sphere.integral(p)), std::abs(sphere.integral(q))});
    gonzalez = std::max(gonzalez, std::abs(dh - ddiff_manifold_gonzalez(sphere.integral, p, q, c).vec.dot(eta)) / scale);
    avf = std::max(avf,
                   std::abs(dh - ddiff_manifold_avf(sphere.integral, p, q, c, kAvfNodes).vec.dot(eta)) / scale);
    const Vec exact = sphere.integral.differential(p).vec;
    consistency = std::max(consistency, (ddiff_manifold_gonzalez(sphere.integral, p, p, p).vec - exact).norm());
    consistency =
        std::max(consistency, (ddiff_manifold_avf(sphere.integral, p, p, p, kAvfNodes).vec - exact).norm());
  }

  return {gonzalez <= kGonzalezTol && avf <= kAvfTol && consistency <= 1e-13,
          "1000 pairs on each of 6 groups and S^2: chain rule Gonzalez " + sci(gonzalez) + " (need <= 1e-13), AVF " +
              sci(avf) + " (need <= 1e-12, " + std::to_string(kAvfNodes) + " Gauss nodes), consistency " +
              sci(consistency) + " (need <= 1e-13)"};
}

// Worst |ratio - 4| of central-difference errors when eps halves.
struct RatioStats {
  double worst = 0.0;
  int samples = 0;

  void add(const std::function<double(double)>& f, double exact, double eps) {
    worst = std::max(worst, std::abs(lt::fd_ratio(f, exact, eps) - 4.0));
    ++samples;
  }
};

Verdict algebra_oracles() {
  double roundtrip = 0.0, inverse = 0.0, pairings = 0.0;
  RatioStats ratios;
  for (const lt::Case& c : lt::cases()) {
    const LieGroup& g = c.group;
    for (int i = 0; i < 1000; ++i) {
      AlgebraElement xi = lt::random_algebra(g, 1.0);
      if (xi.norm() > 1.0) xi = (1.0 / xi.norm()) * xi;
      roundtrip = std::max(roundtrip, (g.log(g.exp(xi)) - xi).norm());

      const AlgebraElement s = lt::random_algebra(g, 0.5);
      const AlgebraElement eta = lt::random_algebra(g, 1.0);
      const double escale = std::max(1.0, eta.norm());
      inverse = std::max(inverse, (g.dexp(s, g.dexpinv(s, eta)) - eta).norm() / escale);
      inverse = std::max(inverse, (g.dexpinv(s, g.dexp(s, eta)) - eta).norm() / escale);

      const Covector mu = lt::random_covector(g);
      pairings = std::max(pairings, std::abs(pairing(g.dexp_dual(s, mu), eta) - pairing(mu, g.dexp(s, eta))));
      pairings = std::max(pairings, std::abs(pairing(g.dexpinv_dual(s, mu), eta) - pairing(mu, g.dexpinv(s, eta))));
      pairings = std::max(pairings, std::abs(pairing(g.coad(s, mu), eta) - pairing(mu, g.bracket(s, eta))));
    }
    for (int i = 0; i < 20; ++i) {
      const GroupElement x = lt::random_base(g);
      const AlgebraElement eta = lt::random_algebra(g, 1.0);
      ratios.add([&](double e) { return c.H.value(g.compose(g.exp(e * eta), x)); }, pairing(c.H.differential(x), eta),
                 1e-2);
      if (g.kind() == GroupKind::Euclidean) continue;
      // dexp as the derivative of the exponential, component by component.
      const AlgebraElement xi = lt::random_algebra(g, 0.5);
      const GroupElement inv = g.inverse(g.exp(xi));
      const AlgebraElement d = g.dexp(xi, eta);
      const AlgebraElement probe = lt::random_algebra(g, 1.0);
      ratios.add([&](double e) { return probe.coords.dot(g.log(g.compose(g.exp(xi + e * eta), inv)).coords); },
                 probe.coords.dot(d.coords), 1e-2);
    }
  }

  const RigidBodyParams rb = RigidBodyParams::attitude_default();
  const PseudoRigidParams prb;
  const LieGroup s3 = LieGroup::unit_quaternions(), sd = LieGroup::semidirect_gl3();
  const SphereProblem sphere = sphere_rigid_body(RigidBodyParams::sphere_default());
  for (int i = 0; i < 20; ++i) {
    const Vec4 q = lt::random_unit_quaternion();
    const AlgebraElement w(lt::random_vec(3));
    ratios.add([&](double e) { return quat_energy(rb, quat_mul(s3.exp(e * w).quaternion(), q)); },
               pairing(quat_grad(rb, q), w), 2e-2);
    const Vec4 dq = lt::random_vec(4);
    ratios.add([&](double e) { return quat_energy(rb, q + e * dq); }, quat_euclidean_gradient(rb, q).dot(dq), 2e-2);

    const Mat3 f = matrix_exp(0.3 * Mat3::Random()), p = Mat3::Random(), df = Mat3::Random();
    ratios.add([&](double e) { return prb_energy(prb, f + e * df, p); },
               (prb_variational_derivs(prb, f, p).d_f.transpose() * df).trace(), 1e-2);
    const GroupElement x = GroupElement::semidirect(f, p);
    const AlgebraElement eta(lt::random_vec(18));
    ratios.add(
        [&](double e) {
          const GroupElement y = sd.compose(sd.exp(e * eta), x);
          return prb_energy(prb, y.matrix(), y.momentum());
        },
        pairing(prb_right_trivialized_dH(prb, f, p), eta), 1e-2);

    const ManifoldPoint sp(Vec(lt::random_unit3()));
    const Vec v = TangentVector::project(sp, lt::random_vec(3)).vec;
    ratios.add([&](double e) { return sphere.integral(retract(TangentVector(sp, e * v))); },
               sphere.integral.differential(sp).vec.dot(v), 1e-2);
  }

  const bool ok = roundtrip <= 1e-10 && inverse <= 1e-12 && pairings <= 1e-12 && ratios.worst <= 0.5;
  return {ok, "exp/log round trip " + sci(roundtrip) + " (need <= 1e-10), dexp o dexpinv " + sci(inverse) +
                  " (need <= 1e-12), dual pairings " + sci(pairings) + " (need <= 1e-12), FD eps-ratio worst |r-4| " +
                  fixed(ratios.worst) + " over " + std::to_string(ratios.samples) + " checks (need <= 0.5)"};
}

Verdict constraints(const PseudoRigidRuns& runs) {
  double min_det = INFINITY;
  for (const auto* traj : {&runs.ep, &runs.sym, &runs.heun})
    for (const auto& r : *traj) min_det = std::min(min_det, r.aux);

  double norm = 0.0;
  for (MethodId method : {MethodId::DgAvf, MethodId::Colloc4}) {
    ExperimentSpec spec = attitude(method);
    std::vector<double> steps = kConvergenceSteps;
    if (method == MethodId::Colloc4) steps.push_back(*spec.reference_h);
    for (double h : steps) {
      spec.h = h;
      for (const auto& r : run_trajectory(spec)) norm = std::max(norm, std::abs(r.aux - 1.0));
    }
  }
  return {min_det > 0.0 && norm <= 1e-12, "min det F_n over the pseudo-rigid runs = " + fixed(min_det, 6) +
                                              " (need > 0), max | |q_n|-1 | over the convergence runs = " +
                                              sci(norm) + " (need <= 1e-12)"};
}

template <typename Fn>
Verdict guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("error: ") + e.what()};
  }
}

}  // namespace

int main() {
  PseudoRigidRuns runs;
  std::string run_error;
  try {
    runs.ep = run_trajectory(pseudo_rigid(MethodId::DgGonzalez, 1.0 / 16));
    runs.sym = run_trajectory(pseudo_rigid(MethodId::SymAlpha0, 1.0 / 16));
    runs.heun = run_trajectory(pseudo_rigid(MethodId::Heun, 1.0 / 32));
  } catch (const std::exception& e) {
    run_error = e.what();
  }
  const auto with_runs = [&](auto&& check) {
    return run_error.empty() ? guarded([&] { return check(runs); }) : Verdict{false, "error: " + run_error};
  };

  report(1, "energy preservation, pseudo-rigid body", with_runs(energy_preservation));
  report(2, "alpha = 0 symmetric comparator", with_runs(alpha_zero));
  report(3, "Heun drift exceeds symmetric comparator", with_runs(heun_drift));
  report(4, "convergence orders, quaternion attitude", guarded(convergence_orders));
  report(5, "sphere rigid body energy and norm", guarded(sphere_check));
  report(6, "symmetry of symmetric methods", guarded(symmetry));
  report(7, "discrete differential identities", guarded(discrete_differential_identities));
  report(8, "algebra and analysis oracles", guarded(algebra_oracles));
  report(9, "group constraints", with_runs(constraints));

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
