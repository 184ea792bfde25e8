#pragma once

// Experiment driver: trajectories, convergence studies, method comparisons
// and their CSV output.

#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liedg/problems.hpp"

namespace liedg {

enum class ProblemId { SphereRB, QuatRB, PseudoRigid };
enum class MethodId { DgGonzalez, DgAvf, Colloc4, SymAlpha0, Heun };

std::string to_string(ProblemId id);
std::string to_string(MethodId id);
/// Throws InvalidSpec for unknown names.
ProblemId parse_problem(const std::string& name);
MethodId parse_method(const std::string& name);

/// Methods implemented for a problem:
///   sphere-rb     dg-gonzalez, dg-avf, sym-alpha0
///   quat-rb       dg-gonzalez, dg-avf, colloc4, sym-alpha0, heun
///   pseudo-rigid  dg-gonzalez, sym-alpha0, heun
bool method_supported(ProblemId problem, MethodId method);
std::vector<MethodId> supported_methods(ProblemId problem);
/// dg-gonzalez, dg-avf, sym-alpha0 and colloc4.
bool method_is_symmetric(MethodId method);

struct ExperimentSpec {
  ProblemId problem = ProblemId::SphereRB;
  MethodId method = MethodId::DgGonzalez;
  double h = 0.0;
  /// Strictly decreasing, at least 4 entries (convergence runs only).
  std::vector<double> h_list;
  double t_end = 0.0;
  std::string out;
  double tol = 1e-14;
  int max_iter = 100;
  int avf_nodes = 6;
  int stage_quadrature_nodes = 10;
  SolverKind solver = SolverKind::Auto;
  /// Convergence reference; defaults to colloc4 where available (else the
  /// method itself) at h_min / 8.
  std::optional<MethodId> reference_method;
  std::optional<double> reference_h;

  RigidBodyParams rigid_body;
  PseudoRigidParams pseudo_rigid;
  CenterChoice center = CenterChoice::Midpoint;

  /// Spec with the default parameters of the given problem.
  static ExperimentSpec defaults(ProblemId problem, MethodId method);

  /// Throws InvalidSpec (bad h, t_end, unsupported method, ...).
  void validate() const;
  /// Steps of size h needed to reach t_end: round(t_end / h).
  long steps_for(double step) const;
};

/// Uniform view of a problem/method pair with the state flattened to its
/// embedded representation (R^3, R^4, or F then P column-major in R^18).
class Simulation {
 public:
  explicit Simulation(const ExperimentSpec& spec);

  const ExperimentSpec& spec() const { return spec_; }
  Vec initial_state() const;
  /// One step of size h (h may be negative).
  Vec step(const Vec& x, double h) const;
  double energy(const Vec& x) const;
  /// |p| (sphere), |q| (quaternion) or det F (pseudo-rigid).
  double aux(const Vec& x) const;

  std::vector<std::string> state_names() const;
  std::string aux_name() const;

  /// Throws ConstraintViolation naming the step when the state leaves the
  /// group or manifold: norm off by more than 1e-12, or det F <= 0.
  void check_constraints(const Vec& x, long step_index) const;

 private:
  ExperimentSpec spec_;
  std::optional<GroupProblem> group_problem_;
  std::optional<SphereProblem> sphere_problem_;
  StepConfig cfg_;
  CollocationTableau tableau_;
};

struct StepRecord {
  double t = 0.0;
  Vec state;
  double H = 0.0;
  double H_err = 0.0;
  double aux = 0.0;
};

/// round(t_end / h) + 1 records. Integrator failures are rethrown with the
/// step index prefixed to the message.
std::vector<StepRecord> run_trajectory(const ExperimentSpec& spec);

/// Final state only; same error behaviour as run_trajectory.
Vec run_to_end(const ExperimentSpec& spec, double h);

struct ConvergenceResult {
  std::vector<double> h;
  std::vector<double> error;
  double slope = 0.0;
  MethodId reference_method = MethodId::Colloc4;
  double reference_h = 0.0;
};

/// Global error at t_end (Euclidean norm of the embedded state) against a
/// reference run, with the least-squares slope of log(error) vs log(h).
ConvergenceResult convergence_study(const ExperimentSpec& spec);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ComparisonResult {
  std::vector<std::string> columns;  // first column is t
  std::vector<std::vector<double>> rows;
};

/// Runs every method on the common grid of spec (in parallel) and returns
/// one H_err column per method. For the pseudo-rigid body with both
/// sym-alpha0 and dg-gonzalez present a det F difference column is added.
ComparisonResult compare_methods(const ExperimentSpec& spec, const std::vector<MethodId>& methods);

// CSV output: "# liedg v1", a header line, then rows with reals printed to
// 17 significant digits.

std::string format_real(double value);
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_trajectory_csv(std::ostream& os, const Simulation& sim, const std::vector<StepRecord>& records);
void write_convergence_csv(std::ostream& os, const ConvergenceResult& result);
void write_comparison_csv(std::ostream& os, const ComparisonResult& result);
/// Opens path for writing; throws InvalidSpec if it cannot be opened.
std::ofstream open_output(const std::string& path);

}  // namespace liedg
