#include "expcrit/expcrit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "errors.hpp"
#include "json_io.hpp"
#include "runner.hpp"
#include "transforms.hpp"

using namespace expcrit;

struct ec_sequence {
  PointSequence seq;
};
struct ec_testfn {
  TestFunction phi;
};
struct ec_quad_config {
  QuadratureConfig cfg;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ec_status set_error(ec_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// map C++ failures onto the exit-code contract
template <typename Fn>
ec_status guarded(Fn&& fn) {
  try {
    fn();
    return EC_OK;
  } catch (const NumericError& e) {
    return set_error(EC_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(EC_ERR_INVALID, e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(EC_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return set_error(EC_ERR_INVALID, e.what());
  }
}

QuadratureConfig cfg_or_default(const ec_quad_config* cfg) {
  return cfg ? cfg->cfg : QuadratureConfig{};
}

void fill_result(const QuadratureResult& r, ec_quad_result* out) {
  out->value = r.value;
  out->abs_error = r.abs_error;
  out->status = static_cast<int>(r.status);
  out->evaluations = r.evaluations;
}

}  // namespace

extern "C" {

const char* ec_version(void) { return "expcrit 1.0.0"; }

const char* ec_last_error(void) { return g_last_error.c_str(); }

void ec_string_free(char* s) { std::free(s); }

ec_status ec_sequence_from_json(const char* json, ec_sequence** out) {
  if (!json || !out) return set_error(EC_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    PointSequence seq = parse_sequence(Json::parse(json));
    *out = new ec_sequence{std::move(seq)};
  });
}

void ec_sequence_free(ec_sequence* seq) { delete seq; }

long ec_sequence_count(const ec_sequence* seq) {
  return seq ? static_cast<long>(seq->seq.size()) : 0;
}

ec_status ec_sequence_point(const ec_sequence* seq, long index, double* re,
                            double* im) {
  if (!seq || !re || !im) return set_error(EC_ERR_INVALID, "null argument");
  if (index < 1 || index > static_cast<long>(seq->seq.size()))
    return set_error(EC_ERR_INVALID, "point index out of range");
  const ComplexPoint& p = seq->seq.points()[static_cast<std::size_t>(index - 1)];
  *re = p.re;
  *im = p.im;
  return EC_OK;
}

ec_status ec_testfn_from_json(const char* json, ec_testfn** out) {
  if (!json || !out) return set_error(EC_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    TestFunction phi = TestFunction::from_family(parse_family(Json::parse(json)));
    *out = new ec_testfn{std::move(phi)};
  });
}

void ec_testfn_free(ec_testfn* phi) { delete phi; }

double ec_testfn_eval(const ec_testfn* phi, double x) {
  return phi ? phi->phi(x) : 0.0;
}

double ec_testfn_support_radius(const ec_testfn* phi) {
  return phi ? phi->phi.support_radius() : 0.0;
}

ec_status ec_testfn_verify(const ec_testfn* phi, const ec_quad_config* cfg,
                           char** report_json) {
  if (!phi || !report_json) return set_error(EC_ERR_INVALID, "null argument");
  return guarded([&] {
    const MembershipReport rep = verify_membership(phi->phi, cfg_or_default(cfg));
    *report_json = dup_string(to_json(rep).dump());
  });
}

ec_status ec_quad_config_create(double rel_tol, double abs_tol, int max_depth,
                                ec_quad_config** out) {
  if (!out) return set_error(EC_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.max_depth = max_depth;
    cfg.validate();
    *out = new ec_quad_config{cfg};
  });
}

void ec_quad_config_free(ec_quad_config* cfg) { delete cfg; }

ec_status ec_poisson(const ec_testfn* phi, double re, double im,
                     const ec_quad_config* cfg, ec_quad_result* out) {
  if (!phi || !out) return set_error(EC_ERR_INVALID, "null argument");
  return guarded([&] {
    fill_result(poisson(phi->phi, {re, im}, cfg_or_default(cfg)), out);
  });
}

ec_status ec_hilbert(const ec_testfn* phi, double x, const ec_quad_config* cfg,
                     ec_quad_result* out) {
  if (!phi || !out) return set_error(EC_ERR_INVALID, "null argument");
  return guarded([&] {
    fill_result(hilbert(phi->phi, x, cfg_or_default(cfg)), out);
  });
}

ec_status ec_hilbert_derivative(const ec_testfn* phi, double x,
                                const ec_quad_config* cfg, ec_quad_result* out) {
  if (!phi || !out) return set_error(EC_ERR_INVALID, "null argument");
  return guarded([&] {
    fill_result(hilbert_derivative(phi->phi, x, cfg_or_default(cfg)), out);
  });
}

ec_status ec_functional_evaluate(const ec_sequence* seq, const ec_testfn* phi,
                                 const char* type_json,
                                 const ec_quad_config* cfg, char** report_json) {
  if (!seq || !phi || !type_json || !report_json)
    return set_error(EC_ERR_INVALID, "null argument");
  return guarded([&] {
    const TypeParameter type = parse_type(Json::parse(type_json));
    const FunctionalReport rep =
        evaluate(seq->seq, type, phi->phi, cfg_or_default(cfg));
    *report_json = dup_string(to_json(rep).dump());
  });
}

ec_status ec_run(const char* subcommand, const char* config_json,
                 char** report_json, char** csv_out) {
  if (!subcommand || !config_json || !report_json)
    return set_error(EC_ERR_INVALID, "null argument");
  *report_json = nullptr;
  if (csv_out) *csv_out = nullptr;
  return guarded([&] {
    const RunOutput out = run_subcommand(subcommand, Json::parse(config_json));
    *report_json = dup_string(out.report.dump(2) + "\n");
    if (csv_out && out.csv) *csv_out = dup_string(*out.csv);
  });
}

}  // extern "C"
