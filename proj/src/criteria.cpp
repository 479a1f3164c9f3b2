#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "errors.hpp"
#include "transforms.hpp"

namespace expcrit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kAngleSlack = 1e-12;

// next-free-integer scanner with path compression; 0 is permanently taken
struct FreeScanner {
  std::unordered_map<long long, long long> up, down;

  FreeScanner() { take(0); }

  long long next_up(long long m) {
    long long r = m;
    std::vector<long long> path;
    for (;;) {
      auto it = up.find(r);
      if (it == up.end()) break;
      path.push_back(r);
      r = it->second;
    }
    for (long long p : path) up[p] = r;
    return r;
  }

  long long next_down(long long m) {
    long long r = m;
    std::vector<long long> path;
    for (;;) {
      auto it = down.find(r);
      if (it == down.end()) break;
      path.push_back(r);
      r = it->second;
    }
    for (long long p : path) down[p] = r;
    return r;
  }

  void take(long long n) {
    up[n] = n + 1;
    down[n] = n - 1;
  }
};

double term_cost(ComplexPoint inv_lambda, double c, long long n) {
  return std::hypot(inv_lambda.re - c / (2 * kPi * static_cast<double>(n)),
                    inv_lambda.im);
}

long long greedy_pick(ComplexPoint inv_lambda, double c, FreeScanner& free,
                      long long cap) {
  const double t = inv_lambda.re;
  double nu;
  if (t == 0.0) {
    // no finite minimizer: c/(2 pi n) -> 0 only as |n| -> inf; take the
    // best free integer within the cap (documented desk-scale choice)
    nu = static_cast<double>(cap);
  } else {
    nu = c / (2 * kPi * t);
    nu = std::clamp(nu, -static_cast<double>(cap), static_cast<double>(cap));
  }
  const long long a = free.next_up(static_cast<long long>(std::ceil(nu)));
  const long long b = free.next_down(static_cast<long long>(std::floor(nu)));
  const double ca = term_cost(inv_lambda, c, a);
  const double cb = term_cost(inv_lambda, c, b);
  if (ca < cb) return a;
  if (cb < ca) return b;
  if (std::llabs(a) != std::llabs(b)) return std::llabs(a) < std::llabs(b) ? a : b;
  return a > 0 ? a : b;  // equal magnitude: positive first
}

struct BlockVerdict {
  BMAssignment::Flag flag = BMAssignment::Flag::unknown;
  double tail_estimate = 0.0;
  std::string note;
};

BlockVerdict judge_blocks(const std::vector<double>& blocks, double total) {
  BlockVerdict out;
  const double floor_abs = 1e-13 * std::max(1.0, total);
  bool all_tiny = !blocks.empty();
  for (double b : blocks)
    if (b > floor_abs) all_tiny = false;
  if (all_tiny) {
    out.flag = BMAssignment::Flag::converged;
    out.note = "series numerically zero";
    return out;
  }
  if (blocks.size() < 6) {
    out.note = "too few dyadic blocks to judge";
    return out;
  }
  const std::size_t n = blocks.size();
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = n - 4; i + 1 < n; ++i) {
    const double num = blocks[i + 1], den = blocks[i];
    const double r = den > 0 ? num / den : 0.0;
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }
  if (rmax <= 0.8) {
    out.flag = BMAssignment::Flag::converged;
    const double rho = std::max(rmax, 1e-3);
    out.tail_estimate = blocks.back() * rho / (1 - rho);
    out.note = "trailing blocks decay geometrically";
    return out;
  }
  if (rmin >= 0.85 && rmax <= 1.15) {
    // flat blocks mean the partial sums still grow at desk scale, but only
    // count that as divergence above a significance floor: a near-resonant
    // c leaves a flat residue of rounding-level terms
    if (blocks.back() > 1e-6) {
      out.flag = BMAssignment::Flag::diverged;
      out.note = "flat positive dyadic blocks: partial sums grow without "
                 "bound at desk scale";
      return out;
    }
    out.note = "flat blocks below the significance floor";
    return out;
  }
  out.note = "dyadic blocks neither decay nor stay flat";
  return out;
}

}  // namespace

const char* to_string(VerdictClass v) {
  switch (v) {
    case VerdictClass::complete: return "complete";
    case VerdictClass::incomplete_minus_one: return "incomplete_minus_one";
    case VerdictClass::incomplete_minus_two: return "incomplete_minus_two";
    case VerdictClass::incomplete_all_d: return "incomplete_all_d";
    case VerdictClass::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(CriterionKind c) {
  switch (c) {
    case CriterionKind::sector_theorem2: return "sector_theorem2";
    case CriterionKind::bm_series: return "bm_series";
    case CriterionKind::functional_divergence: return "functional_divergence";
    case CriterionKind::functional_bounded: return "functional_bounded";
    case CriterionKind::none: return "none";
  }
  return "?";
}

const char* to_string(SpaceKind s) {
  switch (s) {
    case SpaceKind::C: return "C";
    case SpaceKind::Lp_ge2: return "Lp_ge2";
    case SpaceKind::Lp_lt2: return "Lp_lt2";
    case SpaceKind::all: return "all";
  }
  return "?";
}

const char* to_string(BMAssignment::Flag f) {
  switch (f) {
    case BMAssignment::Flag::converged: return "converged";
    case BMAssignment::Flag::diverged: return "diverged";
    case BMAssignment::Flag::unknown: return "unknown";
  }
  return "?";
}

SectorOutcome sector_test(const PointSequence& seq, double alpha, double d) {
  if (!(alpha > 0) || !(alpha <= kPi / 2))
    throw std::invalid_argument("sector_test: alpha must lie in (0, pi/2]");
  if (!(d > 0) || !std::isfinite(d))
    throw std::invalid_argument("sector_test: d must be finite and > 0");
  if (!seq.tail())
    throw std::invalid_argument(
        "sector_test needs a tail descriptor to bound the series beyond the "
        "stored truncation");

  SectorOutcome out;
  out.angle_ok = true;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double a = std::fabs(seq.points()[i].argument());
    if (a < alpha - kAngleSlack || a > kPi - alpha + kAngleSlack) {
      out.angle_ok = false;
      out.offending_index = i + 1;
      break;
    }
  }
  if (!out.angle_ok) {
    out.diagnostic = "angle condition fails at stored index " +
                     std::to_string(out.offending_index);
    out.verdict.klass = VerdictClass::inconclusive;
    out.verdict.criterion = CriterionKind::sector_theorem2;
    out.verdict.evidence = out.diagnostic;
    return out;
  }

  std::vector<double> terms;
  terms.reserve(seq.size());
  for (const ComplexPoint& p : seq.points())
    terms.push_back(std::fabs(p.inverse().im));
  out.stored_sum = pairwise_sum(terms);
  out.tail = seq.tail()->im_inv_tail(seq.size());

  using K = TailDescriptor::TailBound::Kind;
  if (out.tail.kind == K::divergent || out.tail.kind == K::unknown) {
    out.diagnostic = out.tail.kind == K::divergent
                         ? "sum |Im 1/lambda_k| diverges"
                         : "no usable tail bound for sum |Im 1/lambda_k|";
    out.verdict.klass = VerdictClass::inconclusive;
    out.verdict.criterion = CriterionKind::sector_theorem2;
    out.verdict.evidence = out.diagnostic;
    return out;
  }

  const double total = out.stored_sum + out.tail.value;
  const double sina = std::sin(alpha);
  out.eps = 0.9 * (d / 2) * sina * sina;

  // finite-shift reduction: smallest K whose suffix sum drops below eps
  out.eps_tail_index = seq.size();
  double prefix = 0.0;
  for (std::size_t k = 0; k <= seq.size(); ++k) {
    if (k > 0) prefix += terms[k - 1];
    if (total - prefix < out.eps) {
      out.eps_tail_index = k;
      break;
    }
  }

  out.fired = true;
  out.verdict.klass = VerdictClass::incomplete_all_d;
  out.verdict.criterion = CriterionKind::sector_theorem2;
  out.verdict.space = SpaceKind::all;
  out.verdict.evidence =
      "angle condition holds and sum |Im 1/lambda_k| is finite";
  out.verdict.numerics["stored_sum"] = out.stored_sum;
  out.verdict.numerics["tail_bound"] = out.tail.value;
  out.verdict.numerics["eps"] = out.eps;
  out.verdict.numerics["eps_tail_index"] =
      static_cast<double>(out.eps_tail_index);
  if (out.tail.kind == K::closed_form)
    out.verdict.heuristic_flags.push_back("tail bounded by integral test");
  return out;
}

KernelBoundCheck kernel_bound_check(ComplexPoint lambda, double alpha,
                                    const TestFunction& phi,
                                    const QuadratureConfig& cfg) {
  if (!(alpha > 0) || !(alpha <= kPi / 2))
    throw std::invalid_argument("kernel_bound_check: alpha out of (0, pi/2]");
  const double a = std::fabs(lambda.argument());
  if (a < alpha - kAngleSlack || a > kPi - alpha + kAngleSlack)
    throw std::invalid_argument(
        "kernel_bound_check: point violates the sector angle condition");

  KernelBoundCheck out;
  const QuadratureResult lhs = poisson(phi, lambda, cfg);
  if (lhs.status == QuadStatus::singular_failure)
    throw NumericError("kernel_bound_check: Poisson quadrature failed");
  const QuadratureResult integral = integral_of(phi, cfg);
  const double sina = std::sin(alpha);
  const double factor = std::fabs(lambda.inverse().im) / (kPi * sina * sina);
  out.lhs = lhs.value;
  out.lhs_error = lhs.abs_error;
  out.rhs = factor * integral.value;
  out.rhs_error = factor * integral.abs_error;
  out.holds = out.lhs <= out.rhs + out.lhs_error + out.rhs_error +
                             1e-12 * (1 + std::fabs(out.rhs));
  return out;
}

BMAssignment bm_series(
    const PointSequence& seq, double c, AssignmentRule rule,
    const std::vector<std::pair<std::size_t, long long>>* explicit_pairs,
    std::size_t extension_budget) {
  if (!(c > 0) || !std::isfinite(c))
    throw std::invalid_argument("bm_series: c must be finite and > 0");

  BMAssignment out;
  out.c = c;
  const std::size_t n_stored = seq.size();

  const std::size_t n_total =
      seq.tail() ? n_stored + extension_budget : n_stored;
  const long long cap =
      static_cast<long long>(8 * std::max<std::size_t>(n_total, 1) + 1024);

  std::vector<double> block_sums;
  const auto add_to_block = [&](std::size_t k, double term) {
    std::size_t j = 0;
    while ((std::size_t{1} << (j + 1)) <= k) ++j;  // block j: [2^j, 2^{j+1})
    if (block_sums.size() <= j) block_sums.resize(j + 1, 0.0);
    block_sums[j] += term;
  };

  double running = 0.0;
  if (rule == AssignmentRule::explicit_pairs) {
    if (!explicit_pairs)
      throw std::invalid_argument("bm_series: explicit rule needs pairs");
    if (explicit_pairs->size() != n_stored)
      throw std::invalid_argument(
          "bm_series: explicit pairs must cover every stored point");
    std::set<long long> used;
    std::vector<long long> by_k(n_stored, 0);
    for (const auto& [k, n] : *explicit_pairs) {
      if (k < 1 || k > n_stored)
        throw std::invalid_argument("bm_series: pair index out of range");
      if (n == 0)
        throw std::invalid_argument("bm_series: n_k = 0 is not allowed");
      if (!used.insert(n).second)
        throw std::invalid_argument("bm_series: duplicate integer in pairs");
      if (by_k[k - 1] != 0)
        throw std::invalid_argument("bm_series: duplicate point index in pairs");
      by_k[k - 1] = n;
    }
    for (std::size_t k = 1; k <= n_stored; ++k) {
      const double term =
          term_cost(seq.points()[k - 1].inverse(), c, by_k[k - 1]);
      out.pairs.emplace_back(k, by_k[k - 1]);
      running += term;
      out.partial_sums.push_back(running);
      add_to_block(k, term);
    }
    out.total_stored = running;
    out.extended_to = n_stored;
  } else {
    FreeScanner free;
    for (std::size_t k = 1; k <= n_stored; ++k) {
      const ComplexPoint inv = seq.points()[k - 1].inverse();
      const long long n = greedy_pick(inv, c, free, cap);
      free.take(n);
      const double term = term_cost(inv, c, n);
      out.pairs.emplace_back(k, n);
      running += term;
      out.partial_sums.push_back(running);
      add_to_block(k, term);
    }
    out.total_stored = running;
    out.extended_to = n_stored;
    if (seq.tail()) {
      // continue the greedy walk along the generator to feed the dyadic
      // block diagnostics; stop at a complete block boundary
      std::size_t k_end = n_stored + extension_budget;
      double ext_running = running;
      for (std::size_t k = n_stored + 1; k <= k_end; ++k) {
        const ComplexPoint inv = seq.tail()->point_at(k).inverse();
        const long long n = greedy_pick(inv, c, free, cap);
        free.take(n);
        const double term = term_cost(inv, c, n);
        ext_running += term;
        add_to_block(k, term);
      }
      out.extended_to = k_end;
    }
  }

  // judge complete dyadic blocks only
  std::vector<double> complete_blocks;
  for (std::size_t j = 0; j < block_sums.size(); ++j)
    if ((std::size_t{1} << (j + 1)) <= out.extended_to + 1)
      complete_blocks.push_back(block_sums[j]);
  out.block_sums = block_sums;

  const BlockVerdict bv = judge_blocks(complete_blocks, out.total_stored);
  out.flag = bv.flag;
  out.tail_estimate = bv.tail_estimate;
  out.heuristic_flags.push_back("dyadic-block convergence heuristic");
  if (!bv.note.empty()) out.heuristic_flags.push_back(bv.note);
  if (!seq.tail() && rule == AssignmentRule::greedy_nearest_distinct)
    out.heuristic_flags.push_back("no generator: judged on stored points only");
  return out;
}

BMRadiusResult bm_radius(const PointSequence& seq, double c_lo, double c_hi,
                         double tol, std::size_t extension_budget) {
  if (!(c_lo > 0) || !(c_hi > c_lo))
    throw std::invalid_argument("bm_radius: need 0 < c_lo < c_hi");
  if (!(tol > 0) || !std::isfinite(tol))
    throw std::invalid_argument("bm_radius: tol must be finite and > 0");
  if (!seq.tail())
    throw std::invalid_argument("bm_radius needs a generator-backed sequence");

  BMRadiusResult out;
  using Flag = BMAssignment::Flag;
  const auto probe = [&](double c) {
    const Flag f = bm_series(seq, c, AssignmentRule::greedy_nearest_distinct,
                             nullptr, extension_budget)
                       .flag;
    out.probes.emplace_back(c, f);
    return f;
  };

  Flag f_lo = probe(c_lo);
  Flag f_hi = probe(c_hi);
  out.diagnostics.push_back("convergence detection is heuristic (dyadic blocks)");

  if (f_lo == Flag::converged) {
    out.bracket_lo = out.bracket_hi = c_lo;
    out.radius_estimate = c_lo;
    out.diagnostics.push_back(
        "series already converges at c_lo: radius at or below the bracket");
    return out;
  }
  if (f_hi == Flag::diverged) {
    out.bracket_lo = out.bracket_hi = c_hi;
    out.radius_estimate = c_hi;
    out.diagnostics.push_back(
        "series still diverges at c_hi: radius at or above the bracket");
    return out;
  }
  if (f_lo == Flag::unknown || f_hi == Flag::unknown)
    out.diagnostics.push_back("bracket endpoint produced an unknown flag");

  double lo = c_lo, hi = c_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const Flag fm = probe(mid);
    if (fm == Flag::diverged) {
      lo = mid;
    } else if (fm == Flag::converged) {
      hi = mid;
    } else {
      out.diagnostics.push_back(
          "unknown flag at c = " + std::to_string(mid) +
          ": widest consistent bracket returned");
      break;
    }
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.radius_estimate = 0.5 * (lo + hi);
  return out;
}

std::vector<Verdict> classify(const PointSequence& seq, double d,
                              const Evidence& evidence) {
  if (!(d > 0) || !std::isfinite(d))
    throw std::invalid_argument("classify: d must be finite and > 0");
  if (!evidence.sector && !evidence.bm && evidence.sweeps.empty() &&
      evidence.searches.empty())
    throw std::invalid_argument("classify: evidence must be nonempty");
  (void)seq;

  std::vector<Verdict> out;
  const SpaceKind spaces[3] = {SpaceKind::C, SpaceKind::Lp_ge2, SpaceKind::Lp_lt2};

  if (evidence.sector && evidence.sector->fired) {
    for (SpaceKind s : spaces) {
      Verdict v = evidence.sector->verdict;
      v.space = s;
      v.d.reset();  // incomplete in every C(I_d) and L^p(I_d)
      out.push_back(std::move(v));
    }
  }

  if (evidence.bm) {
    const BMAssignment& bm = *evidence.bm;
    if (bm.flag == BMAssignment::Flag::converged && bm.c < d) {
      // proven-bound branch of the completeness theorem: one exponential
      // must be dropped in C and L^{p>=2}, two in L^{p<2}
      for (SpaceKind s : spaces) {
        Verdict v;
        v.klass = s == SpaceKind::Lp_lt2 ? VerdictClass::incomplete_minus_two
                                         : VerdictClass::incomplete_minus_one;
        v.criterion = CriterionKind::bm_series;
        v.space = s;
        v.d = d;
        v.evidence = "BM series converges at c < d";
        v.numerics["c"] = bm.c;
        v.numerics["total_stored"] = bm.total_stored;
        v.numerics["tail_estimate"] = bm.tail_estimate;
        v.heuristic_flags = bm.heuristic_flags;
        out.push_back(std::move(v));
      }
    } else if (bm.flag == BMAssignment::Flag::diverged && d < bm.c) {
      for (SpaceKind s : spaces) {
        Verdict v;
        v.klass = VerdictClass::complete;
        v.criterion = CriterionKind::bm_series;
        v.space = s;
        v.d = d;
        v.evidence = "BM series diverges at c > d";
        v.numerics["c"] = bm.c;
        v.heuristic_flags = bm.heuristic_flags;
        out.push_back(std::move(v));
      }
    }
  }

  TrendStat::Kind trend = TrendStat::Kind::undetermined;
  double slope = 0.0;
  for (const SweepResult& s : evidence.sweeps) {
    if (s.trend.kind == TrendStat::Kind::growing) {
      trend = TrendStat::Kind::growing;
      slope = s.trend.slope;
    } else if (s.trend.kind == TrendStat::Kind::bounded &&
               trend != TrendStat::Kind::growing) {
      trend = TrendStat::Kind::bounded;
      slope = s.trend.slope;
    }
  }
  for (const SearchTrace& s : evidence.searches) {
    if (s.trend.kind == TrendStat::Kind::growing) {
      trend = TrendStat::Kind::growing;
      slope = s.trend.slope;
    } else if (s.trend.kind == TrendStat::Kind::bounded &&
               trend != TrendStat::Kind::growing) {
      trend = TrendStat::Kind::bounded;
      slope = s.trend.slope;
    }
  }
  if (trend == TrendStat::Kind::growing) {
    for (SpaceKind s : spaces) {
      Verdict v;
      v.klass = VerdictClass::complete;
      v.criterion = CriterionKind::functional_divergence;
      v.space = s;
      v.d = d;
      v.evidence = "functional values grow across the searched family";
      v.numerics["slope"] = slope;
      v.heuristic_flags.push_back(
          "finite-search evidence of unboundedness, not a proof");
      out.push_back(std::move(v));
    }
  } else if (trend == TrendStat::Kind::bounded && out.empty()) {
    // a bounded finite search proves nothing: inconclusive with provenance
    for (SpaceKind s : spaces) {
      Verdict v;
      v.klass = VerdictClass::inconclusive;
      v.criterion = CriterionKind::functional_bounded;
      v.space = s;
      v.d = d;
      v.evidence = "searched family stayed bounded; no uniform bound proven";
      v.numerics["slope"] = slope;
      v.heuristic_flags.push_back("finite search cannot prove a uniform bound");
      out.push_back(std::move(v));
    }
  }

  if (out.empty()) {
    for (SpaceKind s : spaces) {
      Verdict v;
      v.klass = VerdictClass::inconclusive;
      v.criterion = CriterionKind::none;
      v.space = s;
      v.d = d;
      v.evidence = "no criterion fired";
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace expcrit
