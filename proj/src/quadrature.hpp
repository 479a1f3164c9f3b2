#pragma once

#include <functional>
#include <span>
#include <vector>

namespace expcrit {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int max_depth = 40;
  // Half-width of the symmetric exclusion window used by principal-value
  // integrals.  0 means adaptive: min(0.1, room to the nearest breakpoint,
  // support edge and origin) / 2.
  double pv_window = 0.0;

  void validate() const;
};

enum class QuadStatus { converged, max_refinement, singular_failure };

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  QuadStatus status = QuadStatus::converged;
  long evaluations = 0;

  // Accumulation of independent pieces: values add, error bounds add,
  // the worst status wins.
  QuadratureResult& operator+=(const QuadratureResult& o);
};

const char* to_string(QuadStatus s);

// Description of a 1-d integrand for the adaptive engine.
//   breakpoints: interior points where f has a kink or a sharp feature;
//                the initial panel set splits there.
//   singular:    points of integrable blowup (log-type); panels approach
//                them on a geometrically graded mesh and are never
//                evaluated at the point itself.  The unresolved innermost
//                sliver is charged to abs_error, not to the value.
struct IntegrandSpec {
  std::function<double(double)> f;
  std::vector<double> breakpoints;
  std::vector<double> singular;
};

// Adaptive Gauss-Kronrod 15(7): worst-panel-first interval bisection with
// embedded-rule error estimates, down to cfg.max_depth.
QuadratureResult integrate(const IntegrandSpec& spec, double a, double b,
                           const QuadratureConfig& cfg);

// Deterministic pairwise (binary-tree) summation.
double pairwise_sum(std::span<const double> v);

}  // namespace expcrit
