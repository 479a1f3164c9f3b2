#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>

namespace expcrit {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0))
    throw std::invalid_argument("quadrature tolerances must be > 0");
  if (max_depth < 1 || max_depth > 64)
    throw std::invalid_argument("quadrature max_depth out of range [1,64]");
  if (pv_window < 0 || !std::isfinite(pv_window))
    throw std::invalid_argument("pv_window must be >= 0");
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& o) {
  value += o.value;
  abs_error += o.abs_error;
  evaluations += o.evaluations;
  if (static_cast<int>(o.status) > static_cast<int>(status)) status = o.status;
  return *this;
}

const char* to_string(QuadStatus s) {
  switch (s) {
    case QuadStatus::converged: return "converged";
    case QuadStatus::max_refinement: return "max_refinement";
    case QuadStatus::singular_failure: return "singular_failure";
  }
  return "?";
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double value = 0.0;
  double err = 0.0;
  bool finite = true;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b,
                   long& evaluations) {
  const double centre = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = f(centre);
  evaluations += 15;

  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    fv1[jtw] = f(centre - absc);
    fv2[jtw] = f(centre + absc);
    const double fsum = fv1[jtw] + fv2[jtw];
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::fabs(fv1[jtw]) + std::fabs(fv2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    fv1[jtwm1] = f(centre - absc);
    fv2[jtwm1] = f(centre + absc);
    const double fsum = fv1[jtwm1] + fv2[jtwm1];
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::fabs(fv1[jtwm1]) + std::fabs(fv2[jtwm1]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  PanelEstimate out;
  out.value = resk * hlgth;
  resabs *= std::fabs(hlgth);
  resasc *= std::fabs(hlgth);
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps))
    abserr = std::max(abserr, 50.0 * eps * resabs);
  out.err = abserr;
  out.finite = std::isfinite(out.value) && std::isfinite(abserr);
  return out;
}

struct Panel {
  double a, b;
  double value, err;
  int depth = 0;
  bool refinable = true;
};

struct WorstFirst {
  // max-heap on error, ties broken toward the left-most panel
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.a > q.a;
  }
};

}  // namespace

QuadratureResult integrate(const IntegrandSpec& spec, double a, double b,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integrate: bad interval");

  QuadratureResult out;
  if (a == b) return out;

  const double span = b - a;
  long evaluations = 0;

  // initial split points: breakpoints and singular points inside [a,b]
  std::vector<double> cuts{a, b};
  for (double p : spec.breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  std::vector<double> sing;
  for (double s : spec.singular)
    if (s >= a && s <= b) {
      sing.push_back(s);
      if (s > a && s < b) cuts.push_back(s);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::sort(sing.begin(), sing.end());

  const auto is_singular = [&](double x) {
    for (double s : sing)
      if (x == s) return true;
    return false;
  };

  // Base panels, with geometric grading toward singular endpoints.  The
  // innermost sliver next to a singular point is never integrated; a crude
  // bound on its contribution goes into abs_error.
  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> heap;
  double sliver_error = 0.0;
  double total_value = 0.0, total_err = 0.0;
  bool saw_non_finite = false;

  const auto push_panel = [&](double lo, double hi, int depth) {
    Panel p;
    p.a = lo;
    p.b = hi;
    p.depth = depth;
    PanelEstimate e = gk15(spec.f, lo, hi, evaluations);
    if (!e.finite) saw_non_finite = true;
    p.value = e.finite ? e.value : 0.0;
    p.err = e.finite ? e.err : 0.0;
    total_value += p.value;
    total_err += p.err;
    heap.push(p);
  };

  const auto graded_toward = [&](double s, double far, bool s_on_left) {
    // panels between s and far approaching s with halving widths
    const double w = std::fabs(far - s);
    const double wmin = std::max(1e-17 * span, 4e-16 * std::fabs(s));
    double width = w;
    double outer = far;
    while (width * 0.5 > wmin) {
      width *= 0.5;
      const double inner = s_on_left ? s + width : s - width;
      if (s_on_left)
        push_panel(inner, outer, 0);
      else
        push_panel(outer, inner, 0);
      outer = inner;
    }
    // sliver [s, outer]: bound by edge magnitude (factor 2 covers log growth)
    const double fe = spec.f(outer);
    ++evaluations;
    if (std::isfinite(fe))
      sliver_error += 2.0 * std::fabs(fe) * std::fabs(outer - s);
    else
      sliver_error += std::fabs(outer - s);  // magnitude unknown; width-level bound
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const bool slo = is_singular(lo), shi = is_singular(hi);
    if (!slo && !shi) {
      push_panel(lo, hi, 0);
    } else if (slo && !shi) {
      graded_toward(lo, hi, true);
    } else if (!slo && shi) {
      graded_toward(hi, lo, false);
    } else {
      const double mid = 0.5 * (lo + hi);
      graded_toward(lo, mid, true);
      graded_toward(hi, mid, false);
    }
  }

  const long kMaxEvaluations = 6'000'000;
  std::vector<Panel> done;

  const auto tol = [&]() {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_value));
  };

  while (!heap.empty()) {
    if (total_err + sliver_error <= tol()) break;
    if (saw_non_finite || evaluations > kMaxEvaluations) break;
    Panel p = heap.top();
    heap.pop();
    const double width = p.b - p.a;
    const bool splittable = p.depth < cfg.max_depth &&
                            width > 64 * std::numeric_limits<double>::epsilon() *
                                        (std::fabs(p.a) + std::fabs(p.b) + 1.0);
    if (!splittable || p.err <= 0.0) {
      done.push_back(p);
      continue;
    }
    total_value -= p.value;
    total_err -= p.err;
    const double mid = 0.5 * (p.a + p.b);
    push_panel(p.a, mid, p.depth + 1);
    push_panel(mid, p.b, p.depth + 1);
  }
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }

  // deterministic reduction: position order, fixed pairwise tree
  std::sort(done.begin(), done.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  std::vector<double> vals, errs;
  vals.reserve(done.size());
  errs.reserve(done.size());
  for (const Panel& p : done) {
    vals.push_back(p.value);
    errs.push_back(p.err);
  }
  out.value = pairwise_sum(vals);
  out.abs_error = pairwise_sum(errs) + sliver_error;
  out.evaluations = evaluations;
  if (saw_non_finite)
    out.status = QuadStatus::singular_failure;
  else if (out.abs_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value)))
    out.status = QuadStatus::converged;
  else
    out.status = QuadStatus::max_refinement;
  return out;
}

}  // namespace expcrit
