#include "runner.hpp"

#include <cstdio>
#include <cstdint>

#include "errors.hpp"
#include "transforms.hpp"

namespace expcrit {

namespace {

const Json& need(const Json& config, const char* key) {
  if (!config.contains(key))
    throw std::invalid_argument(std::string("config missing '") + key + "'");
  return config.at(key);
}

std::uint64_t seed_of(const Json& config) {
  if (!config.contains("seed")) return 0;
  if (!config.at("seed").is_number_integer())
    throw std::invalid_argument("'seed' must be an integer");
  return config.at("seed").get<std::uint64_t>();
}

QuadratureConfig quad_of(const Json& config) {
  return parse_quadrature(config.contains("quadrature") ? config.at("quadrature")
                                                        : Json(nullptr));
}

void require_converged(const QuadratureResult& r, const char* what) {
  if (r.status == QuadStatus::singular_failure)
    throw NumericError(std::string(what) + ": quadrature reported a singular failure");
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json report_envelope(const std::string& subcommand, const Json& config) {
  Json rep;
  rep["schema"] = 1;
  rep["subcommand"] = subcommand;
  rep["seed"] = seed_of(config);
  rep["config"] = config;
  return rep;
}

}  // namespace

RunOutput run_subcommand(const std::string& name, const Json& config) {
  if (!config.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (config.contains("schema") && config.at("schema") != 1)
    throw std::invalid_argument("unsupported config schema (want 1)");

  RunOutput out;
  out.report = report_envelope(name, config);
  const QuadratureConfig cfg = quad_of(config);

  if (name == "verify-testfn") {
    const TestFunction phi = TestFunction::from_family(parse_family(need(config, "testfn")));
    out.report["result"] = to_json(verify_membership(phi, cfg));
    return out;
  }

  if (name == "poisson") {
    const TestFunction phi = TestFunction::from_family(parse_family(need(config, "testfn")));
    const Json& pz = need(config, "point");
    if (!pz.is_array() || pz.size() != 2)
      throw std::invalid_argument("'point' must be [re, im]");
    const ComplexPoint z{pz[0].get<double>(), pz[1].get<double>()};
    const QuadratureResult r = poisson(phi, z, cfg);
    require_converged(r, "poisson");
    out.report["result"] = to_json(r);
    return out;
  }

  if (name == "hilbert") {
    const TestFunction phi = TestFunction::from_family(parse_family(need(config, "testfn")));
    const double x = need(config, "x").get<double>();
    const bool inverse = config.contains("inverse") && config.at("inverse").get<bool>();
    const bool derivative =
        config.contains("derivative") && config.at("derivative").get<bool>();
    if (inverse && derivative)
      throw std::invalid_argument("choose one of 'inverse' or 'derivative'");
    QuadratureResult r;
    if (derivative)
      r = hilbert_derivative(phi, x, cfg);
    else if (inverse)
      r = hilbert_inverse(phi, x, cfg);
    else
      r = hilbert(phi, x, cfg);
    require_converged(r, "hilbert");
    out.report["result"] = to_json(r);
    return out;
  }

  if (name == "functional") {
    const PointSequence seq = parse_sequence(need(config, "sequence"));
    const TypeParameter type = parse_type(need(config, "type"));
    const TestFunction phi = TestFunction::from_family(parse_family(need(config, "testfn")));
    const MembershipReport mem = verify_membership(phi, cfg);
    const FunctionalReport fr = evaluate(seq, type, phi, cfg);
    Json res;
    res["membership"] = to_json(mem);
    res["sigma"] = type.sigma_value();
    res["d"] = type.segment_length();
    res["density"] = type.density();
    res["functional"] = to_json(fr);
    out.report["result"] = std::move(res);
    return out;
  }

  if (name == "classify") {
    const PointSequence seq = parse_sequence(need(config, "sequence"));
    const TypeParameter type = parse_type(need(config, "type"));
    const double d = type.segment_length();
    const Json crit = config.contains("criteria") ? config.at("criteria") : Json::object();

    Evidence ev;
    Json inputs;
    if (crit.contains("sector")) {
      const double alpha = need(crit.at("sector"), "alpha").get<double>();
      ev.sector = sector_test(seq, alpha, d);
      inputs["sector"] = to_json(*ev.sector);
    }
    if (crit.contains("bm")) {
      const Json& bj = crit.at("bm");
      const double c = need(bj, "c").get<double>();
      const std::size_t budget =
          bj.contains("extension_budget")
              ? bj.at("extension_budget").get<std::size_t>()
              : (std::size_t{1} << 18);
      ev.bm = bm_series(seq, c, AssignmentRule::greedy_nearest_distinct, nullptr,
                        budget);
      inputs["bm"] = to_json(*ev.bm);
    }
    if (crit.contains("sweep")) {
      const Json& sj = crit.at("sweep");
      SearchOptions opts;
      opts.seed = seed_of(config);
      if (sj.contains("budget")) opts.budget = sj.at("budget").get<std::size_t>();
      if (sj.contains("restarts")) opts.restarts = sj.at("restarts").get<int>();
      std::vector<double> radii;
      for (const Json& r : need(sj, "radii")) radii.push_back(r.get<double>());
      ev.sweeps.push_back(scale_sweep(seq, type,
                                      parse_family(need(sj, "family")), radii,
                                      cfg, opts));
      inputs["sweep"] = to_json(ev.sweeps.back());
    }

    const std::vector<Verdict> verdicts = classify(seq, d, ev);
    Json vj = Json::array();
    for (const Verdict& v : verdicts) vj.push_back(to_json(v));
    Json res;
    res["d"] = d;
    res["inputs"] = std::move(inputs);
    res["verdicts"] = std::move(vj);
    out.report["result"] = std::move(res);
    return out;
  }

  if (name == "bm-radius") {
    const PointSequence seq = parse_sequence(need(config, "sequence"));
    const double c_lo = need(config, "c_lo").get<double>();
    const double c_hi = need(config, "c_hi").get<double>();
    const double tol = need(config, "tol").get<double>();
    const std::size_t budget =
        config.contains("extension_budget")
            ? config.at("extension_budget").get<std::size_t>()
            : (std::size_t{1} << 18);
    out.report["result"] = to_json(bm_radius(seq, c_lo, c_hi, tol, budget));
    return out;
  }

  if (name == "search") {
    const PointSequence seq = parse_sequence(need(config, "sequence"));
    const TypeParameter type = parse_type(need(config, "type"));
    const FamilySpec family = parse_family(need(config, "family"));
    SearchOptions opts;
    opts.seed = seed_of(config);
    if (config.contains("budget"))
      opts.budget = config.at("budget").get<std::size_t>();
    if (config.contains("restarts"))
      opts.restarts = config.at("restarts").get<int>();
    if (config.contains("radius_clamp"))
      opts.radius_clamp = config.at("radius_clamp").get<double>();
    out.report["result"] = to_json(maximize(seq, type, family, cfg, opts));
    return out;
  }

  if (name == "sweep") {
    const PointSequence seq = parse_sequence(need(config, "sequence"));
    const TypeParameter type = parse_type(need(config, "type"));
    const FamilySpec family = parse_family(need(config, "family"));
    SearchOptions opts;
    opts.seed = seed_of(config);
    if (config.contains("budget"))
      opts.budget = config.at("budget").get<std::size_t>();
    if (config.contains("restarts"))
      opts.restarts = config.at("restarts").get<int>();
    std::vector<double> radii;
    for (const Json& r : need(config, "radii")) radii.push_back(r.get<double>());
    const SweepResult sw = scale_sweep(seq, type, family, radii, cfg, opts);
    out.report["result"] = to_json(sw);
    std::string csv = "radius,best_value\n";
    for (const SweepEntry& e : sw.entries)
      csv += format_g17(e.radius) + "," + format_g17(e.best_value) + "\n";
    out.csv = std::move(csv);
    return out;
  }

  throw std::invalid_argument("unknown subcommand '" + name + "'");
}

}  // namespace expcrit
