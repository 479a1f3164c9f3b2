#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "quadrature.hpp"

namespace expcrit {

struct Interval {
  double lo = 0.0, hi = 0.0;  // closed; lo == hi is a single point
};

inline constexpr int kSmoothnessInf = std::numeric_limits<int>::max();

struct FamilySpec;

// phi(x) = amplitude * max(0, log(r/|x|))
struct LogPeakParams {
  double r = 1.0;
  double amplitude = 1.0;
};

// Even C^inf plateau of the given height on [inner+width, outer-width],
// mirrored to the negative axis; inner == 0 makes one plateau across the
// origin gap instead of a mirrored pair.
struct MollifiedPlateauParams {
  double height = 1.0;
  double inner = 1.0;
  double outer = 2.0;
  double width = 0.1;
};

// Piecewise-linear peak: 0 at lo, height at peak, 0 at hi (not mirrored).
struct TentParams {
  double lo = 2.0;
  double hi = 4.0;
  double peak = 3.0;
  double height = 1.0;
};

// phi(x) = base((x - shift) / scale)
struct ScaledTranslateParams {
  std::shared_ptr<const FamilySpec> base;
  double scale = 1.0;
  double shift = 0.0;
};

struct FamilySpec {
  std::variant<LogPeakParams, MollifiedPlateauParams, TentParams,
               ScaledTranslateParams>
      v;
  std::string name() const;
};

class TestFunction {
 public:
  static TestFunction from_family(const FamilySpec& spec);
  static TestFunction zero(double support_radius);

  // Custom construction for hand-built functions (tests, experiments).
  TestFunction(std::function<double(double)> eval, double support_radius,
               int smoothness, std::vector<Interval> zero_set,
               std::vector<double> breakpoints = {},
               std::vector<double> singular_points = {},
               double sup_bound = std::numeric_limits<double>::infinity());

  double operator()(double x) const { return eval_(x); }
  double support_radius() const { return support_radius_; }
  int smoothness() const { return smoothness_; }
  const std::vector<Interval>& zero_set() const { return zero_set_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& singular_points() const { return singular_points_; }
  bool singular_at_origin() const;
  double sup_bound() const { return sup_bound_; }
  const std::optional<FamilySpec>& family() const { return family_; }

  bool has_derivative() const { return static_cast<bool>(derivative_); }
  double derivative(double x) const;
  // PV poles of the derivative (the log peak's phi' = -a/x has one at 0)
  const std::vector<double>& derivative_pv_poles() const {
    return derivative_pv_poles_;
  }

  // Open intervals of (-R, R) \ {0} \ zero_set where the conjugate
  // positivity condition applies component-wise.
  std::vector<Interval> positivity_components() const;

 private:
  std::function<double(double)> eval_;
  std::function<double(double)> derivative_;
  std::vector<double> derivative_pv_poles_;
  double support_radius_ = 1.0;
  int smoothness_ = kSmoothnessInf;
  std::vector<Interval> zero_set_;
  std::vector<double> breakpoints_;
  std::vector<double> singular_points_;
  double sup_bound_ = std::numeric_limits<double>::infinity();
  std::optional<FamilySpec> family_;

  void sanity_probe() const;
};

enum class CheckStatus { pass, fail, borderline };
const char* to_string(CheckStatus s);

struct FinitenessResult {
  bool pass = false;
  std::string diagnostic;
};

struct SemiNormalizationResult {
  CheckStatus status = CheckStatus::fail;
  double estimate = 0.0;  // extrapolated limsup phi / log(1/|x|)
  std::string diagnostic;
};

struct PositivityResult {
  CheckStatus status = CheckStatus::fail;
  bool inconclusive = false;
  double worst_point = 0.0;
  double worst_value = 0.0;
  std::size_t grid_points = 0;
  std::string diagnostic;
};

struct MembershipReport {
  FinitenessResult finiteness;
  SemiNormalizationResult semi_normalization;
  PositivityResult conjugate_positivity;
  bool overall = false;
};

FinitenessResult check_finiteness(const TestFunction& phi, int samples = 64);
SemiNormalizationResult check_semi_normalization(const TestFunction& phi,
                                                 int decades = 8,
                                                 double tol = 1e-3);
PositivityResult check_conjugate_positivity(const TestFunction& phi,
                                            const QuadratureConfig& cfg,
                                            int grid_per_component = 48);
MembershipReport verify_membership(const TestFunction& phi,
                                   const QuadratureConfig& cfg = {});

}  // namespace expcrit
