// expcrit command line: thin shell over the C API.  Assembles the effective
// config (file + flag overrides), runs one subcommand, writes the report.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <expcrit/expcrit.h>

namespace {

using Json = nlohmann::ordered_json;

struct CommonOpts {
  std::string config_path;
  std::optional<double> sigma, d;
  std::optional<long long> seed;
  std::optional<double> rel_tol, abs_tol;
  std::optional<int> max_depth;
  std::string out_dir;
  bool csv = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  auto* sig = cmd->add_option("--sigma", o.sigma, "Bernstein type sigma");
  auto* dd = cmd->add_option("--d", o.d, "segment length d (sigma = d/2)");
  sig->excludes(dd);
  cmd->add_option("--seed", o.seed, "random seed (reports are byte-stable per seed)");
  cmd->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance");
  cmd->add_option("--max-depth", o.max_depth, "quadrature bisection depth limit");
  cmd->add_option("--out", o.out_dir, "output directory (default: stdout)");
  cmd->add_flag("--csv", o.csv, "also write plot data when available");
}

int fail(int code, const std::string& msg) {
  std::cerr << "expcrit: " << msg << "\n";
  return code;
}

int run_one(const std::string& name, const CommonOpts& o) {
  Json config = Json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) return fail(2, "cannot open config file '" + o.config_path + "'");
    try {
      in >> config;
    } catch (const std::exception& e) {
      return fail(2, std::string("config parse error: ") + e.what());
    }
    if (!config.is_object()) return fail(2, "config root must be an object");
  }
  if (!config.contains("schema")) config["schema"] = 1;
  if (o.sigma) config["type"] = Json{{"sigma", *o.sigma}};
  if (o.d) config["type"] = Json{{"d", *o.d}};
  if (o.seed) config["seed"] = *o.seed;
  if (o.rel_tol || o.abs_tol || o.max_depth) {
    Json q = config.contains("quadrature") ? config["quadrature"] : Json::object();
    if (o.rel_tol) q["rel_tol"] = *o.rel_tol;
    if (o.abs_tol) q["abs_tol"] = *o.abs_tol;
    if (o.max_depth) q["max_depth"] = *o.max_depth;
    config["quadrature"] = q;
  }

  char* report = nullptr;
  char* csv = nullptr;
  const ec_status st =
      ec_run(name.c_str(), config.dump().c_str(), &report, o.csv ? &csv : nullptr);
  if (st != EC_OK) return fail(st, ec_last_error());

  int code = 0;
  if (o.out_dir.empty()) {
    std::fputs(report, stdout);
  } else {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    const fs::path rp = fs::path(o.out_dir) / "report.json";
    std::ofstream rf(rp, std::ios::binary);
    if (rf) {
      rf << report;
      std::cout << rp.string() << "\n";
    } else {
      code = fail(2, "cannot write " + rp.string());
    }
    if (code == 0 && csv) {
      const fs::path cp = fs::path(o.out_dir) / "plot.csv";
      std::ofstream cf(cp, std::ios::binary);
      if (cf) {
        cf << csv;
        std::cout << cp.string() << "\n";
      } else {
        code = fail(2, "cannot write " + cp.string());
      }
    }
  }
  ec_string_free(report);
  ec_string_free(csv);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"completeness criteria for exponential systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ec_version()));

  const char* names[] = {"verify-testfn", "hilbert",   "poisson", "functional",
                         "classify",      "bm-radius", "search",  "sweep"};
  const char* descs[] = {
      "check a test function against the admissibility conditions",
      "principal-value Hilbert transform at a point",
      "Poisson integral at a complex point",
      "evaluate the completeness functional for (sequence, type, test function)",
      "fold criterion outputs into per-space verdicts",
      "bisect for the critical segment length via the distinct-integer series",
      "maximize the functional over a test-function family",
      "family maximization across increasing support radii"};

  std::array<CommonOpts, 8> opts;
  for (int i = 0; i < 8; ++i) add_common(app.add_subcommand(names[i], descs[i]), opts[i]);

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 8; ++i)
    if (app.get_subcommand(names[i])->parsed()) return run_one(names[i], opts[i]);
  return 2;
}
