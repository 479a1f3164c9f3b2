#include "functional.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "transforms.hpp"

namespace expcrit {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TypeParameter::TypeParameter(Kind k, double v) : kind_(k), value_(v) {
  if (!(v > 0) || !std::isfinite(v))
    throw std::invalid_argument("type parameter must be finite and > 0");
}

double TypeParameter::density() const { return sigma_value() / kPi; }

QuadratureResult integral_of(const TestFunction& phi, const QuadratureConfig& cfg) {
  const double R = phi.support_radius();
  IntegrandSpec spec;
  spec.f = [&phi](double t) { return phi(t); };
  spec.breakpoints = phi.breakpoints();
  spec.singular = phi.singular_points();
  QuadratureResult out = integrate(spec, -R, R, cfg);
  if (out.status == QuadStatus::singular_failure)
    throw NumericError("integral of phi failed to converge");
  return out;
}

FunctionalReport evaluate(const PointSequence& seq, TypeParameter type,
                          const TestFunction& phi, const QuadratureConfig& cfg) {
  FunctionalReport rep;
  const QuadratureResult integral = integral_of(phi, cfg);

  rep.per_term.reserve(seq.size());
  std::vector<double> values;
  values.reserve(seq.size());
  double point_error = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const ComplexPoint& lam = seq.points()[i];
    const QuadratureResult r = poisson(phi, lam, cfg);
    if (r.status == QuadStatus::singular_failure)
      throw NumericError("Poisson quadrature failed at point index " +
                         std::to_string(i + 1));
    rep.per_term.push_back({lam, r.value, r.abs_error});
    values.push_back(r.value);
    point_error += r.abs_error;
  }

  rep.sum_poisson = pairwise_sum(values);
  rep.integral_term = type.density() * integral.value;
  rep.value = rep.sum_poisson - rep.integral_term;
  rep.quadrature_error = point_error + type.density() * integral.abs_error;

  if (seq.tail()) {
    const auto tb =
        seq.tail()->poisson_kernel_tail(seq.size(), phi.support_radius());
    using K = TailDescriptor::TailBound::Kind;
    switch (tb.kind) {
      case K::exact_zero:
        rep.truncation_bound = {TruncationBound::Kind::exact_zero, 0.0};
        break;
      case K::closed_form:
        rep.truncation_bound = {TruncationBound::Kind::closed_form,
                                tb.value * integral.value / kPi};
        break;
      default:
        rep.truncation_bound = {TruncationBound::Kind::unknown, 0.0};
        break;
    }
  } else {
    rep.truncation_bound = {TruncationBound::Kind::unknown, 0.0};
  }
  return rep;
}

}  // namespace expcrit
