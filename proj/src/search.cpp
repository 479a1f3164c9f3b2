#include "search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace expcrit {

namespace {

struct ParamSpace {
  std::vector<double> lo, hi;
  std::function<FamilySpec(const std::vector<double>&)> decode;
  std::vector<double> init;

  std::size_t dim() const { return lo.size(); }
  std::vector<double> clamp(std::vector<double> u) const {
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] = std::min(hi[i], std::max(lo[i], u[i]));
    return u;
  }
};

ParamSpace make_space(const FamilySpec& family, double radius_clamp) {
  ParamSpace ps;
  if (const auto* p = std::get_if<LogPeakParams>(&family.v)) {
    const double rmax =
        std::isfinite(radius_clamp) ? radius_clamp : 64.0 * p->r;
    const double rmin = std::min(0.05, rmax / 4);
    ps.lo = {std::log(rmin), 1e-3};
    ps.hi = {std::log(rmax), 1.0};
    ps.init = {std::log(std::min(std::max(p->r, rmin), rmax)),
               std::min(std::max(p->amplitude, 1e-3), 1.0)};
    ps.decode = [](const std::vector<double>& u) {
      return FamilySpec{LogPeakParams{std::exp(u[0]), u[1]}};
    };
    return ps;
  }
  if (const auto* p = std::get_if<MollifiedPlateauParams>(&family.v)) {
    const double rmax =
        std::isfinite(radius_clamp) ? radius_clamp : 4.0 * p->outer;
    ps.lo = {0.0, 0.0, 0.05 * rmax, 1e-4 * rmax};
    ps.hi = {4.0 * p->height + 1.0, 0.9 * rmax, rmax, 0.5 * rmax};
    ps.init = {p->height, std::min(p->inner, 0.9 * rmax),
               std::min(p->outer, rmax), p->width};
    ps.decode = [rmax](const std::vector<double>& u) {
      MollifiedPlateauParams q;
      q.height = std::max(u[0], 0.0);
      q.inner = std::min(std::max(u[1], 0.0), 0.9 * rmax);
      q.outer = std::min(std::max(u[2], q.inner + 0.01 * rmax), rmax);
      const double gap = q.inner > 0 ? (q.outer - q.inner) / 2 : q.outer;
      q.width = std::min(std::max(u[3], 1e-4 * rmax), gap);
      return FamilySpec{q};
    };
    return ps;
  }
  if (const auto* p = std::get_if<TentParams>(&family.v)) {
    const double span = p->hi - p->lo;
    ps.lo = {p->lo + 0.02 * span};
    ps.hi = {p->hi - 0.02 * span};
    ps.init = {p->peak};
    const TentParams base = *p;
    ps.decode = [base](const std::vector<double>& u) {
      TentParams q = base;
      q.peak = u[0];
      return FamilySpec{q};
    };
    return ps;
  }
  const auto& p = std::get<ScaledTranslateParams>(family.v);
  if (!p.base) throw std::invalid_argument("scaled_translate needs a base");
  const double Rb = TestFunction::from_family(*p.base).support_radius();
  const double rmax = std::isfinite(radius_clamp)
                          ? radius_clamp
                          : 4.0 * (std::fabs(p.shift) + p.scale * Rb);
  ps.lo = {1e-3, -rmax / 2};
  ps.hi = {rmax / Rb, rmax / 2};
  ps.init = {p.scale, p.shift};
  auto base = p.base;
  ps.decode = [base, Rb, rmax](const std::vector<double>& u) {
    ScaledTranslateParams q;
    q.base = base;
    q.shift = std::min(std::max(u[1], -rmax / 2), rmax / 2);
    q.scale = std::min(std::max(u[0], 1e-3),
                       std::max((rmax - std::fabs(q.shift)) / Rb, 1e-3));
    return FamilySpec{q};
  };
  return ps;
}

double mean_abs(std::span<const std::pair<double, double>> pts) {
  double s = 0.0;
  for (const auto& [r, v] : pts) s += std::fabs(v);
  return pts.empty() ? 0.0 : s / pts.size();
}

}  // namespace

const char* to_string(TrendStat::Kind k) {
  switch (k) {
    case TrendStat::Kind::bounded: return "bounded";
    case TrendStat::Kind::growing: return "growing";
    case TrendStat::Kind::undetermined: return "undetermined";
  }
  return "?";
}

TrendStat classify_trend(std::span<const std::pair<double, double>> radius_value) {
  TrendStat out;
  if (radius_value.size() < 3) {
    out.note = "too few points";
    return out;
  }
  std::vector<std::pair<double, double>> pts(radius_value.begin(),
                                             radius_value.end());
  std::sort(pts.begin(), pts.end());

  // least squares of value against log r
  const std::size_t n = pts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [r, v] : pts) {
    const double x = std::log(r);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
    syy += v * v;
  }
  const double nn = static_cast<double>(n);
  const double varx = sxx - sx * sx / nn;
  const double vary = syy - sy * sy / nn;
  const double cov = sxy - sx * sy / nn;
  out.slope = varx > 0 ? cov / varx : 0.0;
  out.r2 = (varx > 0 && vary > 0) ? (cov * cov) / (varx * vary) : 0.0;

  if (out.slope >= 0.5 && out.r2 >= 0.7 && pts.back().second > pts.front().second) {
    out.kind = TrendStat::Kind::growing;
    out.note = "superlinear growth in log r";
    return out;
  }
  if (out.slope <= 0.05 * std::max(1.0, mean_abs(pts))) {
    out.kind = TrendStat::Kind::bounded;
    out.note = "plateau across radii";
    return out;
  }
  out.note = "growth present but below the slope threshold";
  return out;
}

SearchTrace maximize(const PointSequence& seq, TypeParameter type,
                     const FamilySpec& family, const QuadratureConfig& cfg,
                     const SearchOptions& opts) {
  if (opts.budget < 10)
    throw std::invalid_argument("maximize: budget must be >= 10");
  if (opts.restarts < 1)
    throw std::invalid_argument("maximize: restarts must be >= 1");

  SearchTrace trace;
  trace.family = family.name();
  trace.seed = opts.seed;

  const ParamSpace space = make_space(family, opts.radius_clamp);
  const std::size_t dim = space.dim();

  // membership checks tolerate looser quadrature than the functional values
  QuadratureConfig mem_cfg = cfg;
  mem_cfg.rel_tol = std::max(cfg.rel_tol, 1e-6);
  mem_cfg.abs_tol = std::max(cfg.abs_tol, 1e-8);

  std::size_t used_budget = 0;
  std::size_t candidates_seen = 0;
  const std::size_t candidate_cap = 40 * opts.budget;

  const auto evaluate_candidate = [&](const std::vector<double>& u) -> double {
    if (used_budget >= opts.budget || candidates_seen >= candidate_cap)
      return -std::numeric_limits<double>::infinity();
    ++candidates_seen;
    SearchIterate it;
    it.params = space.decode(space.clamp(u));
    TestFunction phi = TestFunction::from_family(it.params);
    it.support_radius = phi.support_radius();
    const MembershipReport rep = verify_membership(phi, mem_cfg);
    it.membership_ok = rep.overall;
    if (!rep.overall) {
      it.value = std::numeric_limits<double>::quiet_NaN();
      trace.iterates.push_back(it);
      return -std::numeric_limits<double>::infinity();
    }
    const FunctionalReport fr = evaluate(seq, type, phi, cfg);
    ++used_budget;
    it.value = fr.value;
    it.sum_poisson = fr.sum_poisson;
    it.integral_term = fr.integral_term;
    trace.iterates.push_back(it);
    if (!trace.best || it.value > trace.best->value) trace.best = it;
    return it.value;
  };

  std::vector<double> restart_bests;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    if (used_budget >= opts.budget) break;
    std::mt19937_64 rng(opts.seed + 0x9E3779B97F4A7C15ull * (restart + 1));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // initial simplex: the family's own point first, random corners after
    std::vector<std::vector<double>> simplex;
    std::vector<double> x0(dim);
    if (restart == 0) {
      x0 = space.clamp(space.init);
    } else {
      for (std::size_t i = 0; i < dim; ++i)
        x0[i] = space.lo[i] + (space.hi[i] - space.lo[i]) * unif(rng);
    }
    simplex.push_back(x0);
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> xi = x0;
      const double step = 0.15 * (space.hi[i] - space.lo[i]);
      xi[i] = (xi[i] + step <= space.hi[i]) ? xi[i] + step : xi[i] - step;
      simplex.push_back(space.clamp(xi));
    }

    std::vector<double> fvals(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i)
      fvals[i] = evaluate_candidate(simplex[i]);

    const std::size_t max_iter = 40 * (dim + 1);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      if (used_budget >= opts.budget || candidates_seen >= candidate_cap) break;
      // order descending (maximization)
      std::vector<std::size_t> idx(simplex.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return fvals[a] > fvals[b];
      });
      std::vector<std::vector<double>> sx;
      std::vector<double> sf;
      for (std::size_t i : idx) {
        sx.push_back(simplex[i]);
        sf.push_back(fvals[i]);
      }
      simplex = sx;
      fvals = sf;

      // relative simplex size against the box
      double size = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        double mn = simplex[0][i], mx = simplex[0][i];
        for (const auto& v : simplex) {
          mn = std::min(mn, v[i]);
          mx = std::max(mx, v[i]);
        }
        size = std::max(size, (mx - mn) / std::max(space.hi[i] - space.lo[i], 1e-300));
      }
      if (size < opts.shrink_tol) break;

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
          centroid[j] += simplex[i][j] / static_cast<double>(dim);

      const auto line = [&](double t) {
        std::vector<double> u(dim);
        for (std::size_t j = 0; j < dim; ++j)
          u[j] = centroid[j] + t * (centroid[j] - simplex.back()[j]);
        return space.clamp(u);
      };

      const std::vector<double> xr = line(1.0);
      const double fr = evaluate_candidate(xr);
      if (fr > fvals[0]) {
        const std::vector<double> xe = line(2.0);
        const double fe = evaluate_candidate(xe);
        if (fe > fr) {
          simplex.back() = xe;
          fvals.back() = fe;
        } else {
          simplex.back() = xr;
          fvals.back() = fr;
        }
      } else if (fr > fvals[fvals.size() - 2]) {
        simplex.back() = xr;
        fvals.back() = fr;
      } else {
        const std::vector<double> xc = line(-0.5);
        const double fc = evaluate_candidate(xc);
        if (fc > fvals.back()) {
          simplex.back() = xc;
          fvals.back() = fc;
        } else {
          for (std::size_t i = 1; i < simplex.size(); ++i) {
            for (std::size_t j = 0; j < dim; ++j)
              simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
            fvals[i] = evaluate_candidate(simplex[i]);
          }
        }
      }
    }
    if (!fvals.empty())
      restart_bests.push_back(*std::max_element(fvals.begin(), fvals.end()));
  }

  if (!trace.best)
    throw NumericError("family '" + trace.family +
                       "' is inadmissible: every candidate failed membership");

  // trend: prefer the iterates' own radius sweep when the search moved in
  // radius, else judge the restart plateau
  std::vector<std::pair<double, double>> rv;
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (const SearchIterate& it : trace.iterates) {
    if (!it.membership_ok) continue;
    rv.emplace_back(it.support_radius, it.value);
    rmin = std::min(rmin, it.support_radius);
    rmax = std::max(rmax, it.support_radius);
  }
  if (rv.size() >= 3 && rmax > 1.3 * rmin) {
    trace.trend = classify_trend(rv);
  } else {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double b : restart_bests) {
      if (!std::isfinite(b)) continue;
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
    if (restart_bests.size() >= 3 && std::isfinite(lo) &&
        hi - lo <= 1e-3 * (1 + std::fabs(trace.best->value))) {
      trace.trend.kind = TrendStat::Kind::bounded;
      trace.trend.note = "plateau across restarts";
    } else {
      trace.trend.note = "no radius spread and no restart plateau";
    }
  }
  return trace;
}

SweepResult scale_sweep(const PointSequence& seq, TypeParameter type,
                        const FamilySpec& family, std::span<const double> radii,
                        const QuadratureConfig& cfg, const SearchOptions& opts) {
  if (radii.size() < 3)
    throw std::invalid_argument("scale_sweep: need at least 3 radii");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw std::invalid_argument("scale_sweep: radii must be increasing");
  if (!(radii.front() > 0))
    throw std::invalid_argument("scale_sweep: radii must be positive");

  SweepResult out;
  std::optional<FamilySpec> seed_params;
  double prev_best = -std::numeric_limits<double>::infinity();
  std::optional<FamilySpec> prev_params;

  for (std::size_t i = 0; i < radii.size(); ++i) {
    SearchOptions o = opts;
    o.radius_clamp = radii[i];
    o.seed = opts.seed + 1000003 * i;
    const FamilySpec& start = seed_params ? *seed_params : family;
    const SearchTrace trace = maximize(seq, type, start, cfg, o);

    SweepEntry e;
    e.radius = radii[i];
    e.best_value = trace.best->value;
    e.best_params = trace.best->params;
    // a larger support class contains the smaller: seeded monotonicity
    if (e.best_value < prev_best) {
      e.best_value = prev_best;
      e.best_params = prev_params;
    }
    prev_best = e.best_value;
    prev_params = e.best_params;
    seed_params = e.best_params;
    out.entries.push_back(std::move(e));
  }

  std::vector<std::pair<double, double>> rv;
  for (const SweepEntry& e : out.entries)
    rv.emplace_back(e.radius, e.best_value);
  out.trend = classify_trend(rv);
  return out;
}

}  // namespace expcrit
