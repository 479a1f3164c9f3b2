#pragma once

#include "complexpt.hpp"
#include "quadrature.hpp"
#include "testfn.hpp"

namespace expcrit {

// Signed integrand with its own singular structure, for the raw Hilbert
// transform (used e.g. on phi', which is not a TestFunction).
struct RealFunctionSpec {
  std::function<double(double)> f;
  double support_radius = 1.0;
  std::vector<double> breakpoints;
  std::vector<double> log_singular;  // integrable blowups, graded mesh
  std::vector<double> pv_poles;      // simple poles, symmetric pairing
};

// (P phi)(z): harmonic extension via the Poisson kernel for Im z != 0;
// the boundary convention returns phi(x) exactly for real x != 0.
// z = 0 is refused.
QuadratureResult poisson(const TestFunction& phi, ComplexPoint z,
                         const QuadratureConfig& cfg);

// (H phi)(x) = (1/pi) PV int phi(t)/(x-t) dt, x != 0.
QuadratureResult hilbert(const TestFunction& phi, double x,
                         const QuadratureConfig& cfg);

// differs only by sign
QuadratureResult hilbert_inverse(const TestFunction& phi, double x,
                                 const QuadratureConfig& cfg);

// PV Hilbert transform of a raw signed function.
QuadratureResult hilbert_raw(const RealFunctionSpec& g, double x,
                             const QuadratureConfig& cfg);

// (-H phi)'(x), computed two ways:
//   difference quotient:  (1/pi) PV int (phi(t) - phi(x)) / (t-x)^2 dt
//   symmetric kernel:     (1/pi) int_0^inf (phi(x+t) + phi(x-t) - 2 phi(x)) / t^2 dt
// The symmetric form is primary; the reported error includes the cross-form
// gap, and a gap beyond 10x the combined estimates is a singular failure.
struct HilbertDerivativeDetail {
  QuadratureResult result;           // primary (symmetric form + cross gap)
  double symmetric_value = 0.0;
  double symmetric_error = 0.0;
  double difference_quotient_value = 0.0;
  double difference_quotient_error = 0.0;
  double cross_form_gap = 0.0;
  bool c2_probe_ok = true;           // kink at x: truncated one-form estimate
};

HilbertDerivativeDetail hilbert_derivative_detail(const TestFunction& phi,
                                                  double x,
                                                  const QuadratureConfig& cfg);
QuadratureResult hilbert_derivative(const TestFunction& phi, double x,
                                    const QuadratureConfig& cfg);

// | d/dx (-H phi)(x) - (-H phi')(x) |, the left side by central differences
// of hilbert at x -+ h, the right side transforming the derivative.
// Second-order in h for smooth phi.
double commutation_check(const TestFunction& phi, double x, double h,
                         const QuadratureConfig& cfg);

}  // namespace expcrit
