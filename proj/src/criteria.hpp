#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "functional.hpp"
#include "search.hpp"
#include "sequences.hpp"
#include "testfn.hpp"

namespace expcrit {

enum class VerdictClass {
  complete,
  incomplete_minus_one,
  incomplete_minus_two,
  incomplete_all_d,
  inconclusive
};

enum class CriterionKind {
  sector_theorem2,
  bm_series,
  functional_divergence,
  functional_bounded,
  none
};

enum class SpaceKind { C, Lp_ge2, Lp_lt2, all };

const char* to_string(VerdictClass v);
const char* to_string(CriterionKind c);
const char* to_string(SpaceKind s);

struct Verdict {
  VerdictClass klass = VerdictClass::inconclusive;
  CriterionKind criterion = CriterionKind::none;
  SpaceKind space = SpaceKind::all;
  std::optional<double> d;  // nullopt: holds for every d
  std::string evidence;
  std::vector<std::string> heuristic_flags;
  std::map<std::string, double> numerics;  // the firing inequality's values
};

// Sector incompleteness test: angle condition plus summability of
// |Im 1/lambda_k| (stored partial sum + generator tail bound).
struct SectorOutcome {
  bool fired = false;
  bool angle_ok = false;
  std::size_t offending_index = 0;  // 1-based; 0 = none
  double stored_sum = 0.0;
  TailDescriptor::TailBound tail;
  double eps = 0.0;               // 0.9 * (d/2) * sin^2(alpha)
  std::size_t eps_tail_index = 0; // smallest K with suffix sum < eps
  Verdict verdict;
  std::string diagnostic;
};

SectorOutcome sector_test(const PointSequence& seq, double alpha, double d);

// Poisson-kernel estimate at a sector point:
//   (P phi)(lambda) <= |Im(1/lambda)| / (pi sin^2 alpha) * int phi
struct KernelBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  bool holds = false;
};

KernelBoundCheck kernel_bound_check(ComplexPoint lambda, double alpha,
                                    const TestFunction& phi,
                                    const QuadratureConfig& cfg);

struct BMAssignment {
  double c = 0.0;
  std::vector<std::pair<std::size_t, long long>> pairs;  // stored (k, n_k)
  std::vector<double> partial_sums;                      // stored prefix sums
  double total_stored = 0.0;

  enum class Flag { converged, diverged, unknown };
  Flag flag = Flag::unknown;
  double tail_estimate = 0.0;  // when converged
  std::vector<double> block_sums;  // dyadic blocks incl. generator extension
  std::size_t extended_to = 0;
  std::vector<std::string> heuristic_flags;
};

const char* to_string(BMAssignment::Flag f);

enum class AssignmentRule { greedy_nearest_distinct, explicit_pairs };

BMAssignment bm_series(
    const PointSequence& seq, double c, AssignmentRule rule,
    const std::vector<std::pair<std::size_t, long long>>* explicit_pairs = nullptr,
    std::size_t extension_budget = std::size_t{1} << 18);

struct BMRadiusResult {
  double radius_estimate = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<std::pair<double, BMAssignment::Flag>> probes;  // raw sequence
  std::vector<std::string> diagnostics;
};

BMRadiusResult bm_radius(const PointSequence& seq, double c_lo, double c_hi,
                         double tol,
                         std::size_t extension_budget = std::size_t{1} << 18);

struct Evidence {
  std::optional<SectorOutcome> sector;
  std::optional<BMAssignment> bm;
  std::vector<SweepResult> sweeps;
  std::vector<SearchTrace> searches;
};

// Fold criterion outputs into per-space verdicts for segment length d.
std::vector<Verdict> classify(const PointSequence& seq, double d,
                              const Evidence& evidence);

}  // namespace expcrit
