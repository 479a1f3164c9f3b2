#pragma once

#include <vector>

#include "quadrature.hpp"
#include "sequences.hpp"
#include "testfn.hpp"

namespace expcrit {

// sigma (Bernstein type) or d (segment length); the two are tied by
// sigma = d/2, so the functional's density sigma/pi equals d/(2 pi).
class TypeParameter {
 public:
  enum class Kind { bernstein_sigma, segment_d };

  static TypeParameter sigma(double value) { return {Kind::bernstein_sigma, value}; }
  static TypeParameter segment(double value) { return {Kind::segment_d, value}; }

  Kind kind() const { return kind_; }
  double raw_value() const { return value_; }
  double sigma_value() const {
    return kind_ == Kind::bernstein_sigma ? value_ : value_ / 2;
  }
  double segment_length() const { return 2 * sigma_value(); }
  double density() const;  // sigma / pi

 private:
  TypeParameter(Kind k, double v);
  Kind kind_;
  double value_;
};

struct PerTerm {
  ComplexPoint point;
  double poisson_value = 0.0;
  double abs_error = 0.0;
};

struct TruncationBound {
  enum class Kind { exact_zero, closed_form, unknown };
  Kind kind = Kind::unknown;
  double value = 0.0;
};

struct FunctionalReport {
  double sum_poisson = 0.0;
  double integral_term = 0.0;     // density * int phi
  double value = 0.0;             // sum_poisson - integral_term
  std::vector<PerTerm> per_term;  // stored points, in stored order
  TruncationBound truncation_bound;
  double quadrature_error = 0.0;
};

// int_{-R}^{R} phi
QuadratureResult integral_of(const TestFunction& phi, const QuadratureConfig& cfg);

// sum_k (P phi)(lambda_k) - density * int phi over the stored truncation,
// with a tail bound from the generator where one exists.  Real points take
// the boundary convention phi(lambda) exactly, no quadrature.
FunctionalReport evaluate(const PointSequence& seq, TypeParameter type,
                          const TestFunction& phi, const QuadratureConfig& cfg);

}  // namespace expcrit
