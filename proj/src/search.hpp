#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "functional.hpp"
#include "sequences.hpp"
#include "testfn.hpp"

namespace expcrit {

struct SearchIterate {
  FamilySpec params;
  double support_radius = 0.0;
  double value = 0.0;
  double sum_poisson = 0.0;
  double integral_term = 0.0;
  bool membership_ok = false;
};

struct TrendStat {
  enum class Kind { bounded, growing, undetermined };
  Kind kind = Kind::undetermined;
  double slope = 0.0;  // least-squares slope of value against log r
  double r2 = 0.0;
  std::string note;
};

const char* to_string(TrendStat::Kind k);

struct SearchTrace {
  std::string family;
  std::vector<SearchIterate> iterates;
  std::optional<SearchIterate> best;  // admissible iterates only
  TrendStat trend;
  std::uint64_t seed = 0;
};

struct SearchOptions {
  std::size_t budget = 200;  // functional evaluations (admissible candidates)
  int restarts = 3;
  std::uint64_t seed = 0;
  double shrink_tol = 1e-6;  // relative simplex size
  // clamp on the candidate support radius (scale_sweep sets this per step)
  double radius_clamp = std::numeric_limits<double>::infinity();
};

// Derivative-free maximization of the completeness functional over one
// parametrized family; candidates failing verify_membership are excluded
// from best/trend and do not consume budget.
SearchTrace maximize(const PointSequence& seq, TypeParameter type,
                     const FamilySpec& family, const QuadratureConfig& cfg,
                     const SearchOptions& opts);

struct SweepEntry {
  double radius = 0.0;
  double best_value = 0.0;
  std::optional<FamilySpec> best_params;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // nondecreasing best values
  TrendStat trend;
};

// maximize with the family's support clamped to each radius in turn,
// seeding every step with the previous best.
SweepResult scale_sweep(const PointSequence& seq, TypeParameter type,
                        const FamilySpec& family, std::span<const double> radii,
                        const QuadratureConfig& cfg, const SearchOptions& opts);

// shared trend classifier over (radius, value) pairs
TrendStat classify_trend(std::span<const std::pair<double, double>> radius_value);

}  // namespace expcrit
