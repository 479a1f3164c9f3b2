#include "testfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "transforms.hpp"

namespace expcrit {

namespace {

// C^inf step: 0 for u<=0, 1 for u>=1
double qexp(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }

double smoothstep(double u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  const double a = qexp(u), b = qexp(1.0 - u);
  return a / (a + b);
}

double smoothstep_deriv(double u) {
  if (u <= 0 || u >= 1) return 0.0;
  const double a = qexp(u), b = qexp(1.0 - u);
  const double da = a / (u * u);
  const double db = b / ((1.0 - u) * (1.0 - u));
  const double s = a + b;
  return (da * b + a * db) / (s * s);
}

void check_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be finite and > 0");
}

}  // namespace

std::string FamilySpec::name() const {
  struct V {
    std::string operator()(const LogPeakParams&) const { return "log_peak"; }
    std::string operator()(const MollifiedPlateauParams&) const {
      return "mollified_plateau";
    }
    std::string operator()(const TentParams&) const { return "tent"; }
    std::string operator()(const ScaledTranslateParams& p) const {
      return "scaled_translate(" + (p.base ? p.base->name() : "?") + ")";
    }
  };
  return std::visit(V{}, v);
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::borderline: return "borderline";
  }
  return "?";
}

TestFunction::TestFunction(std::function<double(double)> eval,
                           double support_radius, int smoothness,
                           std::vector<Interval> zero_set,
                           std::vector<double> breakpoints,
                           std::vector<double> singular_points, double sup_bound)
    : eval_(std::move(eval)),
      support_radius_(support_radius),
      smoothness_(smoothness),
      zero_set_(std::move(zero_set)),
      breakpoints_(std::move(breakpoints)),
      singular_points_(std::move(singular_points)),
      sup_bound_(sup_bound) {
  check_positive(support_radius_, "support radius");
  for (double s : singular_points_)
    if (s != 0.0)
      throw std::invalid_argument(
          "test function singular away from the origin is not continuous on "
          "R\\{0}");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                     breakpoints_.end());
  std::sort(zero_set_.begin(), zero_set_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& z : zero_set_)
    if (!(z.lo <= z.hi)) throw std::invalid_argument("malformed zero interval");
  sanity_probe();
}

void TestFunction::sanity_probe() const {
  const double R = support_radius_;
  for (int side = -1; side <= 1; side += 2) {
    for (int i = 0; i < 48; ++i) {
      // geometric sweep over (1e-9 R, 2R]
      const double x = side * 2.0 * R * std::pow(10.0, -9.0 * i / 47.0);
      const double v = eval_(x);
      if (!std::isfinite(v))
        throw std::invalid_argument("test function non-finite at x = " +
                                    std::to_string(x));
      if (v < 0)
        throw std::invalid_argument("test function negative at x = " +
                                    std::to_string(x));
    }
  }
}

bool TestFunction::singular_at_origin() const {
  for (double s : singular_points_)
    if (s == 0.0) return true;
  return false;
}

double TestFunction::derivative(double x) const {
  if (!derivative_) throw std::logic_error("derivative not available");
  return derivative_(x);
}

std::vector<Interval> TestFunction::positivity_components() const {
  const double R = support_radius_;
  // start from (-R, 0) and (0, R), subtract closed zero intervals
  std::vector<Interval> comps{{-R, 0.0}, {0.0, R}};
  for (const Interval& z : zero_set_) {
    std::vector<Interval> next;
    for (const Interval& c : comps) {
      if (z.hi <= c.lo || z.lo >= c.hi) {
        next.push_back(c);
        continue;
      }
      if (z.lo > c.lo) next.push_back({c.lo, z.lo});
      if (z.hi < c.hi) next.push_back({z.hi, c.hi});
    }
    comps = std::move(next);
  }
  std::vector<Interval> out;
  for (const Interval& c : comps)
    if (c.hi - c.lo > 1e-9 * R) out.push_back(c);
  return out;
}

TestFunction TestFunction::zero(double support_radius) {
  check_positive(support_radius, "support radius");
  TestFunction f([](double) { return 0.0; }, support_radius, kSmoothnessInf,
                 {{-support_radius, support_radius}}, {}, {}, 0.0);
  f.derivative_ = [](double) { return 0.0; };
  return f;
}

TestFunction TestFunction::from_family(const FamilySpec& spec) {
  if (const auto* p = std::get_if<LogPeakParams>(&spec.v)) {
    check_positive(p->r, "log_peak r");
    check_positive(p->amplitude, "log_peak amplitude");
    const double r = p->r, a = p->amplitude;
    TestFunction f(
        [r, a](double x) {
          const double ax = std::fabs(x);
          return ax >= r ? 0.0 : a * std::log(r / ax);
        },
        r, kSmoothnessInf, {}, {}, {0.0});
    f.derivative_ = [r, a](double x) {
      return (x != 0.0 && std::fabs(x) < r) ? -a / x : 0.0;
    };
    f.derivative_pv_poles_ = {0.0};
    f.family_ = spec;
    return f;
  }
  if (const auto* p = std::get_if<MollifiedPlateauParams>(&spec.v)) {
    if (!(p->height >= 0) || !std::isfinite(p->height))
      throw std::invalid_argument("plateau height must be finite and >= 0");
    if (!(p->inner >= 0) || !(p->outer > p->inner))
      throw std::invalid_argument("plateau needs 0 <= inner < outer");
    check_positive(p->width, "plateau width");
    const double gap = p->inner > 0 ? (p->outer - p->inner) / 2 : p->outer;
    if (!(p->width <= gap))
      throw std::invalid_argument("plateau width too large for [inner, outer]");
    const double h = p->height, a = p->inner, b = p->outer, w = p->width;
    const auto profile = [h, a, b, w](double ax) {
      if (ax >= b) return 0.0;
      if (ax > b - w) return h * smoothstep((b - ax) / w);
      if (a == 0.0) return h;
      if (ax <= a) return 0.0;
      if (ax < a + w) return h * smoothstep((ax - a) / w);
      return h;
    };
    std::vector<double> bps;
    for (double t : {a, a + w, b - w, b}) {
      bps.push_back(t);
      bps.push_back(-t);
    }
    std::vector<Interval> zeros;
    if (a > 0) zeros.push_back({-a, a});
    TestFunction f([profile](double x) { return profile(std::fabs(x)); }, b,
                   kSmoothnessInf, std::move(zeros), std::move(bps), {}, h);
    f.derivative_ = [h, a, b, w](double x) {
      const double ax = std::fabs(x), sgn = x < 0 ? -1.0 : 1.0;
      if (ax >= b) return 0.0;
      if (ax > b - w) return -sgn * h * smoothstep_deriv((b - ax) / w) / w;
      if (a == 0.0) return 0.0;
      if (ax <= a) return 0.0;
      if (ax < a + w) return sgn * h * smoothstep_deriv((ax - a) / w) / w;
      return 0.0;
    };
    f.family_ = spec;
    return f;
  }
  if (const auto* p = std::get_if<TentParams>(&spec.v)) {
    if (!(p->lo < p->peak) || !(p->peak < p->hi))
      throw std::invalid_argument("tent needs lo < peak < hi");
    check_positive(p->height, "tent height");
    const double lo = p->lo, hi = p->hi, pk = p->peak, h = p->height;
    const double R = std::max(std::fabs(lo), std::fabs(hi));
    std::vector<Interval> zeros;
    if (lo > -R) zeros.push_back({-R, lo});
    if (hi < R) zeros.push_back({hi, R});
    TestFunction f(
        [lo, hi, pk, h](double x) {
          if (x <= lo || x >= hi) return 0.0;
          return x <= pk ? h * (x - lo) / (pk - lo) : h * (hi - x) / (hi - pk);
        },
        R, 0, std::move(zeros), {lo, pk, hi}, {}, h);
    f.derivative_ = [lo, hi, pk, h](double x) {
      if (x <= lo || x >= hi) return 0.0;
      return x <= pk ? h / (pk - lo) : -h / (hi - pk);
    };
    f.family_ = spec;
    return f;
  }
  const auto& p = std::get<ScaledTranslateParams>(spec.v);
  if (!p.base) throw std::invalid_argument("scaled_translate needs a base");
  check_positive(p.scale, "scaled_translate scale");
  if (!std::isfinite(p.shift))
    throw std::invalid_argument("scaled_translate shift must be finite");
  auto base = std::make_shared<TestFunction>(TestFunction::from_family(*p.base));
  const double s = p.scale, c = p.shift, Rb = base->support_radius();
  const double lo = c - s * Rb, hi = c + s * Rb;
  const double R = std::max(std::fabs(lo), std::fabs(hi));
  std::vector<Interval> zeros;
  for (const Interval& z : base->zero_set())
    zeros.push_back({c + s * z.lo, c + s * z.hi});
  if (lo > -R) zeros.push_back({-R, lo});
  if (hi < R) zeros.push_back({hi, R});
  std::vector<double> bps{lo, hi};
  for (double b : base->breakpoints()) bps.push_back(c + s * b);
  std::vector<double> sing;
  for (double sp : base->singular_points()) sing.push_back(c + s * sp);
  TestFunction f([base, s, c](double x) { return (*base)((x - c) / s); }, R,
                 base->smoothness(), std::move(zeros), std::move(bps),
                 std::move(sing), base->sup_bound());
  if (base->has_derivative()) {
    f.derivative_ = [base, s, c](double x) {
      return base->derivative((x - c) / s) / s;
    };
    for (double q : base->derivative_pv_poles())
      f.derivative_pv_poles_.push_back(c + s * q);
  }
  f.family_ = spec;
  return f;
}

FinitenessResult check_finiteness(const TestFunction& phi, int samples) {
  if (samples < 16)
    throw std::invalid_argument("check_finiteness: samples must be >= 16");
  FinitenessResult out;
  const double R = phi.support_radius();
  if (!std::isfinite(R) || !(R > 0)) {
    out.diagnostic = "declared support radius not finite";
    return out;
  }
  const int per_side = samples / 2;
  for (int side = -1; side <= 1; side += 2) {
    for (int i = 0; i < per_side; ++i) {
      const double x = side * (R + R * (i + 0.5) / per_side);
      const double v = phi(x);
      if (!std::isfinite(v)) {
        out.diagnostic = "evaluation failure at x = " + std::to_string(x);
        return out;
      }
      if (v != 0.0) {
        out.diagnostic = "phi(" + std::to_string(x) + ") = " +
                         std::to_string(v) + " beyond declared support";
        return out;
      }
    }
  }
  out.pass = true;
  return out;
}

SemiNormalizationResult check_semi_normalization(const TestFunction& phi,
                                                 int decades, double tol) {
  SemiNormalizationResult out;
  if (decades < 4) throw std::invalid_argument("need at least 4 decades");
  // Per-decade maxima of phi(x)/log(1/|x|) over |x| in [10^-j, 10^-(j-1)],
  // j = 2 .. decades+1 (the finest decade reaches 1e-8 for decades >= 8,
  // per the probe-grid precondition).  The ratio of every family in scope
  // behaves like L + C/e against the probe exponent e = log10(1/|x|), so
  // one Richardson step on the two finest decades removes the 1/e term
  // instead of reading the limsup off a finite depth.
  const int j_lo = 2, j_hi = decades + 1;
  std::vector<double> rj, ej;  // decade max and the exponent attaining it
  for (int j = j_lo; j <= j_hi; ++j) {
    double m = -1.0, me = static_cast<double>(j);
    for (int side = -1; side <= 1; side += 2) {
      for (int i = 0; i < 8; ++i) {
        const double e = (j - 1) + (i + 0.5) / 8.0;
        const double x = side * std::pow(10.0, -e);
        const double v = phi(x);
        if (!std::isfinite(v)) {
          out.status = CheckStatus::fail;
          out.diagnostic = "evaluation failure at x = " + std::to_string(x);
          return out;
        }
        const double ratio = v / std::log(1.0 / std::fabs(x));
        if (ratio > m) {
          m = ratio;
          me = e;
        }
      }
    }
    rj.push_back(m);
    ej.push_back(me);
  }
  const std::size_t n = rj.size();
  const double rJ = rj[n - 1], rJ1 = rj[n - 2], rJ2 = rj[n - 3];
  if (rJ > rJ1 && rJ1 > rJ2 && rJ - rJ1 > 0.02 * std::max(1.0, rJ)) {
    out.status = CheckStatus::fail;
    out.estimate = rJ;
    out.diagnostic = "ratio grows across decades: phi exceeds log growth";
    return out;
  }
  const double eJ = ej[n - 1], eJ1 = ej[n - 2];
  double L = rJ;
  if (rJ != rJ1 && eJ != eJ1) {
    const double C = (rJ1 - rJ) / (1.0 / eJ1 - 1.0 / eJ);
    L = rJ - C / eJ;
  }
  out.estimate = std::max(0.0, L);
  if (L > 1.0 + tol) {
    out.status = CheckStatus::fail;
    out.diagnostic = "limsup estimate exceeds 1";
  } else if (std::fabs(L - 1.0) <= tol) {
    out.status = CheckStatus::borderline;
  } else {
    out.status = CheckStatus::pass;
  }
  return out;
}

PositivityResult check_conjugate_positivity(const TestFunction& phi,
                                            const QuadratureConfig& cfg,
                                            int grid_per_component) {
  if (grid_per_component < 32)
    throw std::invalid_argument("positivity grid needs >= 32 points per component");
  PositivityResult out;
  out.status = CheckStatus::pass;

  struct Sample {
    double x, value, err;
    QuadStatus status;
  };
  std::vector<Sample> samples;
  for (const Interval& comp : phi.positivity_components()) {
    for (int i = 0; i < grid_per_component; ++i) {
      const double x =
          comp.lo + (comp.hi - comp.lo) * (i + 0.5) / grid_per_component;
      if (x == 0.0) continue;
      const QuadratureResult r = hilbert_derivative(phi, x, cfg);
      samples.push_back({x, r.value, r.abs_error, r.status});
    }
  }
  out.grid_points = samples.size();
  if (samples.empty()) {
    out.diagnostic = "no positivity components: vacuous pass";
    return out;
  }

  double scale = 0.0;
  for (const Sample& s : samples) scale = std::max(scale, std::fabs(s.value));
  const double tol_pv = 1e-6 * (1.0 + scale);

  const Sample* worst = &samples.front();
  for (const Sample& s : samples)
    if (s.value < worst->value) worst = &s;
  out.worst_point = worst->x;
  out.worst_value = worst->value;

  // definite negatives first; only sign-ambiguous non-convergence is
  // inconclusive
  bool definite_fail = false, ambiguous = false;
  double ambiguous_at = 0.0;
  for (const Sample& s : samples) {
    if (s.value < -tol_pv) {
      if (s.status == QuadStatus::converged || s.value + s.err < -tol_pv)
        definite_fail = true;
      else {
        ambiguous = true;
        ambiguous_at = s.x;
      }
    } else if (s.status == QuadStatus::singular_failure) {
      ambiguous = true;
      ambiguous_at = s.x;
    }
  }
  if (definite_fail) {
    out.status = CheckStatus::fail;
    out.diagnostic = "(-H phi)' < 0 at x = " + std::to_string(out.worst_point);
  } else if (ambiguous) {
    out.status = CheckStatus::fail;
    out.inconclusive = true;
    out.diagnostic =
        "quadrature inconclusive at x = " + std::to_string(ambiguous_at);
  }
  return out;
}

MembershipReport verify_membership(const TestFunction& phi,
                                   const QuadratureConfig& cfg) {
  MembershipReport rep;
  rep.finiteness = check_finiteness(phi);
  rep.semi_normalization = check_semi_normalization(phi);
  rep.conjugate_positivity = check_conjugate_positivity(phi, cfg);

  // spot-check the declared zero set; a violation breaks the component
  // decomposition the positivity check ran on
  const double R = phi.support_radius();
  for (const Interval& z : phi.zero_set()) {
    const double lo = std::max(z.lo, -R), hi = std::min(z.hi, R);
    if (lo > hi) continue;
    for (int i = 0; i < 5; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / 5.0;
      if (x == 0.0) continue;
      if (phi(x) != 0.0) {
        rep.conjugate_positivity.status = CheckStatus::fail;
        rep.conjugate_positivity.diagnostic =
            "declared zero set violated at x = " + std::to_string(x);
      }
    }
  }

  rep.overall = rep.finiteness.pass &&
                rep.semi_normalization.status != CheckStatus::fail &&
                rep.conjugate_positivity.status == CheckStatus::pass &&
                !rep.conjugate_positivity.inconclusive;
  return rep;
}

}  // namespace expcrit
