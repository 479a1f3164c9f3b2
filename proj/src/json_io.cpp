#include "json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace expcrit {

namespace {

double get_number(const Json& j, const char* key, double fallback,
                  bool required = false) {
  if (!j.contains(key)) {
    if (required)
      throw std::invalid_argument(std::string("missing field '") + key + "'");
    return fallback;
  }
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string("field '") + key +
                                "' must be a number");
  return j.at(key).get<double>();
}

ComplexPoint get_point(const Json& j, const char* key, ComplexPoint fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw std::invalid_argument(std::string("field '") + key +
                              "' must be a number or [re, im]");
}

Json point_json(const ComplexPoint& p) { return Json::array({p.re, p.im}); }

// large per-term arrays: keep the head, dyadic interior samples and the
// tail so reports stay readable and byte-stable
std::vector<std::size_t> report_indices(std::size_t n, std::size_t full_limit) {
  std::vector<std::size_t> idx;
  if (n <= full_limit) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    return idx;
  }
  for (std::size_t i = 0; i < 64; ++i) idx.push_back(i);
  for (std::size_t i = 64; i < n - 1; i *= 2) idx.push_back(i);
  idx.push_back(n - 1);
  return idx;
}

const char* tail_kind_name(TailDescriptor::TailBound::Kind k) {
  using K = TailDescriptor::TailBound::Kind;
  switch (k) {
    case K::exact_zero: return "exact_zero";
    case K::closed_form: return "closed_form";
    case K::divergent: return "divergent";
    case K::unknown: return "unknown";
  }
  return "?";
}

}  // namespace

Json to_json(const QuadratureResult& r) {
  return Json{{"value", r.value},
              {"abs_error", r.abs_error},
              {"status", to_string(r.status)},
              {"evaluations", r.evaluations}};
}

Json to_json(const MembershipReport& r) {
  Json j;
  j["finiteness"] = Json{{"status", r.finiteness.pass ? "pass" : "fail"},
                         {"diagnostic", r.finiteness.diagnostic}};
  j["semi_normalization"] =
      Json{{"status", to_string(r.semi_normalization.status)},
           {"estimate", r.semi_normalization.estimate},
           {"diagnostic", r.semi_normalization.diagnostic}};
  j["conjugate_positivity"] =
      Json{{"status", to_string(r.conjugate_positivity.status)},
           {"inconclusive", r.conjugate_positivity.inconclusive},
           {"worst_point", r.conjugate_positivity.worst_point},
           {"worst_value", r.conjugate_positivity.worst_value},
           {"grid_points", r.conjugate_positivity.grid_points},
           {"diagnostic", r.conjugate_positivity.diagnostic}};
  j["overall"] = r.overall;
  return j;
}

Json to_json(const FunctionalReport& r) {
  Json j;
  j["sum_poisson"] = r.sum_poisson;
  j["integral_term"] = r.integral_term;
  j["value"] = r.value;
  const char* tk = r.truncation_bound.kind == TruncationBound::Kind::exact_zero
                       ? "exact_zero"
                       : r.truncation_bound.kind == TruncationBound::Kind::closed_form
                             ? "closed_form"
                             : "unknown";
  j["truncation_bound"] = Json{{"kind", tk}, {"value", r.truncation_bound.value}};
  j["quadrature_error"] = r.quadrature_error;
  const auto idx = report_indices(r.per_term.size(), 256);
  j["per_term_decimated"] = idx.size() < r.per_term.size();
  Json terms = Json::array();
  for (std::size_t i : idx) {
    const PerTerm& t = r.per_term[i];
    terms.push_back(Json{{"index", i + 1},
                         {"point", point_json(t.point)},
                         {"value", t.poisson_value},
                         {"abs_error", t.abs_error}});
  }
  j["per_term"] = std::move(terms);
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["class"] = to_string(v.klass);
  j["criterion"] = to_string(v.criterion);
  j["space"] = to_string(v.space);
  if (v.d)
    j["d"] = *v.d;
  else
    j["d"] = "all";
  j["evidence"] = v.evidence;
  j["heuristic_flags"] = v.heuristic_flags;
  j["numerics"] = v.numerics;
  return j;
}

Json to_json(const SectorOutcome& s) {
  Json j;
  j["fired"] = s.fired;
  j["angle_ok"] = s.angle_ok;
  j["offending_index"] = s.offending_index;
  j["stored_sum"] = s.stored_sum;
  j["tail"] = Json{{"kind", tail_kind_name(s.tail.kind)}, {"value", s.tail.value}};
  j["eps"] = s.eps;
  j["eps_tail_index"] = s.eps_tail_index;
  j["verdict"] = to_json(s.verdict);
  j["diagnostic"] = s.diagnostic;
  return j;
}

Json to_json(const BMAssignment& a) {
  Json j;
  j["c"] = a.c;
  j["total_stored"] = a.total_stored;
  j["flag"] = to_string(a.flag);
  j["tail_estimate"] = a.tail_estimate;
  j["extended_to"] = a.extended_to;
  j["block_sums"] = a.block_sums;
  j["heuristic_flags"] = a.heuristic_flags;
  const auto idx = report_indices(a.pairs.size(), 256);
  j["pairs_decimated"] = idx.size() < a.pairs.size();
  Json pairs = Json::array();
  for (std::size_t i : idx) {
    pairs.push_back(Json{{"k", a.pairs[i].first},
                         {"n", a.pairs[i].second},
                         {"partial_sum", a.partial_sums[i]}});
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Json to_json(const BMRadiusResult& r) {
  Json j;
  j["radius_estimate"] = r.radius_estimate;
  j["bracket"] = Json::array({r.bracket_lo, r.bracket_hi});
  Json probes = Json::array();
  for (const auto& [c, f] : r.probes)
    probes.push_back(Json{{"c", c}, {"flag", to_string(f)}});
  j["probes"] = std::move(probes);
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const TrendStat& t) {
  return Json{{"kind", to_string(t.kind)},
              {"slope", t.slope},
              {"r2", t.r2},
              {"note", t.note}};
}

Json to_json(const SearchTrace& t) {
  Json j;
  j["family"] = t.family;
  j["seed"] = t.seed;
  if (t.best) {
    j["best"] = Json{{"params", family_to_json(t.best->params)},
                     {"value", t.best->value},
                     {"support_radius", t.best->support_radius}};
  } else {
    j["best"] = nullptr;
  }
  j["trend"] = to_json(t.trend);
  Json its = Json::array();
  for (const SearchIterate& it : t.iterates) {
    Json e;
    e["params"] = family_to_json(it.params);
    e["support_radius"] = it.support_radius;
    e["membership"] = it.membership_ok;
    if (it.membership_ok) {
      e["value"] = it.value;
      e["sum_poisson"] = it.sum_poisson;
      e["integral_term"] = it.integral_term;
    } else {
      e["value"] = nullptr;
    }
    its.push_back(std::move(e));
  }
  j["iterates"] = std::move(its);
  return j;
}

Json to_json(const SweepResult& s) {
  Json j;
  Json entries = Json::array();
  for (const SweepEntry& e : s.entries) {
    Json q{{"radius", e.radius}, {"best_value", e.best_value}};
    q["params"] = e.best_params ? family_to_json(*e.best_params) : Json(nullptr);
    entries.push_back(std::move(q));
  }
  j["entries"] = std::move(entries);
  j["trend"] = to_json(s.trend);
  return j;
}

Json family_to_json(const FamilySpec& f) {
  struct V {
    Json operator()(const LogPeakParams& p) const {
      return Json{{"family", "log_peak"},
                  {"params", Json{{"r", p.r}, {"amplitude", p.amplitude}}}};
    }
    Json operator()(const MollifiedPlateauParams& p) const {
      return Json{{"family", "mollified_plateau"},
                  {"params", Json{{"h", p.height},
                                  {"a", p.inner},
                                  {"b", p.outer},
                                  {"w", p.width}}}};
    }
    Json operator()(const TentParams& p) const {
      return Json{{"family", "tent"},
                  {"params", Json{{"lo", p.lo},
                                  {"hi", p.hi},
                                  {"peak", p.peak},
                                  {"height", p.height}}}};
    }
    Json operator()(const ScaledTranslateParams& p) const {
      return Json{{"family", "scaled_translate"},
                  {"params", Json{{"base", p.base ? family_to_json(*p.base)
                                                  : Json(nullptr)},
                                  {"scale", p.scale},
                                  {"shift", p.shift}}}};
    }
  };
  return std::visit(V{}, f.v);
}

FamilySpec parse_family(const Json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw std::invalid_argument("family spec needs a 'family' field");
  const std::string name = j.at("family").get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (name == "log_peak") {
    LogPeakParams p;
    p.r = get_number(params, "r", 1.0, true);
    p.amplitude = get_number(params, "amplitude", 1.0);
    return FamilySpec{p};
  }
  if (name == "mollified_plateau") {
    MollifiedPlateauParams p;
    p.height = get_number(params, "h", 1.0, true);
    p.inner = get_number(params, "a", 1.0, true);
    p.outer = get_number(params, "b", 2.0, true);
    p.width = get_number(params, "w", 0.1, true);
    return FamilySpec{p};
  }
  if (name == "tent") {
    TentParams p;
    p.lo = get_number(params, "lo", 2.0, true);
    p.hi = get_number(params, "hi", 4.0, true);
    p.peak = get_number(params, "peak", 3.0, true);
    p.height = get_number(params, "height", 1.0);
    return FamilySpec{p};
  }
  if (name == "scaled_translate") {
    if (!params.contains("base"))
      throw std::invalid_argument("scaled_translate needs params.base");
    ScaledTranslateParams p;
    p.base = std::make_shared<FamilySpec>(parse_family(params.at("base")));
    p.scale = get_number(params, "scale", 1.0);
    p.shift = get_number(params, "shift", 0.0);
    return FamilySpec{p};
  }
  throw std::invalid_argument("unknown test-function family '" + name + "'");
}

PointSequence parse_sequence(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("sequence spec needs a 'kind' field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    if (!j.contains("points") || !j.at("points").is_array())
      throw std::invalid_argument("explicit sequence needs a 'points' array");
    std::vector<ComplexPoint> pts;
    for (const Json& e : j.at("points")) {
      if (e.is_number()) {
        pts.push_back({e.get<double>(), 0.0});
      } else if (e.is_array() && e.size() == 2) {
        pts.push_back({e[0].get<double>(), e[1].get<double>()});
      } else {
        throw std::invalid_argument("points must be numbers or [re, im] pairs");
      }
    }
    return PointSequence::from_points(std::move(pts));
  }

  if (!j.contains("count"))
    throw std::invalid_argument("generated sequence needs a 'count' field");
  const auto count = j.at("count").get<long long>();
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  const Json params = j.contains("params") ? j.at("params") : Json::object();

  if (kind == "arithmetic") {
    ArithmeticParams p;
    p.step = get_number(params, "step", 1.0);
    p.offset = get_point(params, "offset", {1.0, 0.0});
    p.symmetric = params.contains("symmetric") &&
                  params.at("symmetric").get<bool>();
    return PointSequence::generate(SequenceKind::arithmetic, p,
                                   static_cast<std::size_t>(count));
  }
  if (kind == "perturbed_integers") {
    PerturbedIntegersParams p;
    p.amplitude = get_number(params, "amplitude", 0.5);
    p.power = get_number(params, "power", 2.0);
    return PointSequence::generate(SequenceKind::perturbed_integers, p,
                                   static_cast<std::size_t>(count));
  }
  if (kind == "lacunary") {
    LacunaryParams p;
    p.base = get_number(params, "base", 2.0);
    p.scale = get_number(params, "scale", 1.0);
    return PointSequence::generate(SequenceKind::lacunary, p,
                                   static_cast<std::size_t>(count));
  }
  if (kind == "sector") {
    SectorParams p;
    p.angle = get_number(params, "angle", 0.0, true);
    p.law_power = get_number(params, "law_power", 2.0);
    p.law_scale = get_number(params, "law_scale", 1.0);
    return PointSequence::generate(SequenceKind::sector, p,
                                   static_cast<std::size_t>(count));
  }
  throw std::invalid_argument("unknown sequence kind '" + kind + "'");
}

QuadratureConfig parse_quadrature(const Json& j) {
  QuadratureConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object())
    throw std::invalid_argument("'quadrature' must be an object");
  cfg.rel_tol = get_number(j, "rel_tol", cfg.rel_tol);
  cfg.abs_tol = get_number(j, "abs_tol", cfg.abs_tol);
  cfg.max_depth = static_cast<int>(get_number(j, "max_depth", cfg.max_depth));
  cfg.pv_window = get_number(j, "pv_window", cfg.pv_window);
  cfg.validate();
  return cfg;
}

TypeParameter parse_type(const Json& j) {
  if (!j.is_object())
    throw std::invalid_argument("'type' must be an object with sigma or d");
  const bool has_sigma = j.contains("sigma");
  const bool has_d = j.contains("d");
  if (has_sigma == has_d)
    throw std::invalid_argument("give exactly one of 'sigma' or 'd'");
  if (has_sigma) return TypeParameter::sigma(j.at("sigma").get<double>());
  return TypeParameter::segment(j.at("d").get<double>());
}

}  // namespace expcrit
