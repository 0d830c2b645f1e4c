// Command-line front end. Exit codes: 0 success, 1 discrepancy, 2 usage or
// invalid input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffmod/io.hpp"

namespace {

using namespace diffmod;
using io::json;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string algebra;
  std::string output;
  std::size_t horizon = 6;
  std::size_t length = 6;
  std::uint64_t bound = std::uint64_t{1} << 20;
  std::size_t injective_cap = 8;
  std::size_t dim_max = 3;
  std::size_t threads = 0;
  std::string route = "both";
  bool lift = false;
  bool coresolve = false;
  bool verbose = false;
};

constexpr int kOk = 0;
constexpr int kDiscrepancy = 1;
constexpr int kUsage = 2;

void emit(const RunConfig& cfg, const json& j) {
  if (cfg.output.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write " + cfg.output);
  out << j.dump(2) << "\n";
}

void note(const RunConfig& cfg, const std::string& line) {
  if (cfg.verbose) std::cerr << line << "\n";
}

std::string kind_of(const json& j) {
  if (j.contains("quiver")) return "algebra";
  if (j.contains("epsilon")) return "differential_module";
  return "module";
}

int cmd_check(const RunConfig& cfg) {
  json files = json::array();
  bool ok = true;
  for (const auto& path : cfg.inputs) {
    json entry = {{"path", path}};
    try {
      json j = io::read_json_file(path);
      entry["kind"] = kind_of(j);
      if (entry["kind"] == "algebra") {
        auto a = io::algebra_from_json(j, path);
        entry["dim"] = a->dim();
      } else {
        auto m = io::load_module(path);
        entry["dims"] = m.module.underlying().dims();
      }
      entry["valid"] = true;
    } catch (const Error& e) {
      ok = false;
      entry["valid"] = false;
      entry["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
      std::cerr << path << ": " << e.what() << "\n";
    }
    files.push_back(entry);
  }
  emit(cfg, {{"files", files}, {"valid", ok}});
  return ok ? kOk : kUsage;
}

int cmd_hom(const RunConfig& cfg) {
  if (cfg.inputs.size() != 2) fail(ErrorKind::InvalidInput, "hom needs exactly two module files");
  auto m = io::load_module(cfg.inputs[0]);
  auto n = io::load_module(cfg.inputs[1]);
  json j = {{"hom_dim", hom_dim(m.module.underlying(), n.module.underlying())}};
  if (m.has_epsilon || n.has_epsilon) j["hom_diff_dim"] = hom_diff_dim(m.module, n.module);
  emit(cfg, j);
  return kOk;
}

int cmd_ext(const RunConfig& cfg) {
  if (cfg.inputs.size() != 2) fail(ErrorKind::InvalidInput, "ext needs exactly two module files");
  auto m = io::load_module(cfg.inputs[0]);
  auto n = io::load_module(cfg.inputs[1]);
  const bool diff = m.has_epsilon || n.has_epsilon;
  ExtTable t = diff ? ext_dim(m.module, n.module, cfg.horizon)
                    : ext_dim(m.module.underlying(), n.module.underlying(), cfg.horizon);
  json j = io::to_json(t);
  j["category"] = diff ? "differential" : "module";
  emit(cfg, j);
  return kOk;
}

int cmd_resolve(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) fail(ErrorKind::InvalidInput, "resolve needs exactly one module file");
  auto m = io::load_module(cfg.inputs[0]);
  if (cfg.coresolve) {
    auto r = lift_coresolution(m.module, cfg.length);
    json terms = json::array(), cok = json::array();
    bool ok = r.is_exact() && r.euler_holds();
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      terms.push_back({{"dims", r.terms[i].underlying().dims()}, {"dim", r.terms[i].total_dim()}});
      cok.push_back({{"dims", r.cokernels[i].module.dims()},
                     {"iso_to_syzygy_plus_q", io::verdict_string(r.cokernel_checks[i])}});
      ok = ok && r.cokernel_checks[i] == IsoVerdict::Yes;
    }
    emit(cfg, {{"kind", "lifted_coresolution"},
               {"length", r.length()},
               {"terms", terms},
               {"cokernels", cok},
               {"checks", {{"exact", r.is_exact()}, {"euler", r.euler_holds()}}}});
    return ok ? kOk : kDiscrepancy;
  }
  if (cfg.lift) {
    auto r = lift_resolution(m.module, cfg.length);
    emit(cfg, io::to_json(r));
    note(cfg, "lifted resolution of length " + std::to_string(r.length()));
    return io::all_checks_pass(r) ? kOk : kDiscrepancy;
  }
  auto r = projective_resolution(m.module.underlying(), cfg.length);
  emit(cfg, io::to_json(r));
  return r.is_exact() ? kOk : kDiscrepancy;
}

int cmd_gp(const RunConfig& cfg, bool injective) {
  if (cfg.inputs.size() != 1) fail(ErrorKind::InvalidInput, "gp needs exactly one module file");
  if (cfg.route != "direct" && cfg.route != "underlying" && cfg.route != "both")
    fail(ErrorKind::InvalidInput, "route must be direct, underlying or both");
  auto m = io::load_module(cfg.inputs[0]);
  auto s = GorensteinSetting::make(m.algebra, cfg.injective_cap);
  GpPair pair = injective ? is_gi_diff(m.module, s.p_lambda_op, s.p_base_op)
                          : is_gp_diff(m.module, s.p_lambda, s.p_base);
  json j = {{"property", injective ? "gorenstein_injective" : "gorenstein_projective"}};
  if (cfg.route != "underlying") j["direct"] = io::to_json(pair.direct);
  if (cfg.route != "direct") j["via_underlying"] = io::to_json(pair.via_underlying);
  if (cfg.route == "both") j["agree"] = pair.agree();
  emit(cfg, j);
  return cfg.route == "both" && !pair.agree() ? kDiscrepancy : kOk;
}

int cmd_dimension(const RunConfig& cfg, bool injective) {
  if (cfg.inputs.size() != 1) fail(ErrorKind::InvalidInput, "expected exactly one module file");
  auto m = io::load_module(cfg.inputs[0]);
  auto s = GorensteinSetting::make(m.algebra, cfg.injective_cap);
  DimensionPair d = injective ? gid_diff(m.module, s) : gpd_diff(m.module, s);
  const char* name = injective ? "gid" : "gpd";
  json j = {{name, io::dimension_json(d.via_underlying)},
            {"direct", io::dimension_json(d.direct)},
            {"via_underlying", io::dimension_json(d.via_underlying)},
            {"agree", d.agree()}};
  emit(cfg, j);
  return d.agree() ? kOk : kDiscrepancy;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.algebra.empty()) fail(ErrorKind::InvalidInput, "verify needs --algebra");
  auto a = io::load_algebra(cfg.algebra);
  HarnessOptions opts;
  opts.dim_max = cfg.dim_max;
  opts.horizon = cfg.horizon;
  opts.injective_cap = cfg.injective_cap;
  opts.enumeration_bound = cfg.bound;
  opts.threads = cfg.threads;
  auto r = verify_theorems(a, opts);
  json j = io::to_json(r);
  j["algebra"] = cfg.algebra;
  emit(cfg, j);
  note(cfg, std::to_string(r.instances) + " instances, " + std::to_string(r.discrepancies.size()) + " discrepancies");
  return r.discrepancies.empty() ? kOk : kDiscrepancy;
}

int cmd_profile(const RunConfig& cfg) {
  std::string path = !cfg.algebra.empty() ? cfg.algebra : (cfg.inputs.empty() ? "" : cfg.inputs[0]);
  if (path.empty()) fail(ErrorKind::InvalidInput, "profile needs an algebra file");
  auto a = io::load_algebra(path);
  auto s = GorensteinSetting::make(a, cfg.injective_cap);
  json j = {{"algebra", path},
            {"dim", a->dim()},
            {"base", io::to_json(s.p_base)},
            {"base_op", io::to_json(s.p_base_op)},
            {"lambda", io::to_json(s.p_lambda)},
            {"lambda_op", io::to_json(s.p_lambda_op)},
            {"iwanaga_gorenstein", s.finite()}};
  if (s.finite()) j["g"] = s.p_base.g();
  emit(cfg, j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential modules over bound quiver algebras"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("DIFFMOD_THREADS")) cfg.threads = std::strtoul(env, nullptr, 10);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "Write the JSON report here instead of stdout");
    sub->add_option("--injective-cap", cfg.injective_cap, "Search bound for injective dimensions")
        ->check(CLI::PositiveNumber);
    sub->add_flag("-v,--verbose", cfg.verbose, "Print a summary on stderr");
  };
  auto files = [&](CLI::App* sub, const char* what) {
    sub->add_option("files", cfg.inputs, what)->required()->check(CLI::ExistingFile);
  };

  auto* check = app.add_subcommand("check", "Validate algebra, module and differential-module files");
  files(check, "JSON files");
  add_common(check);
  auto* hom = app.add_subcommand("hom", "Dimension of Hom between two modules");
  files(hom, "Two module files");
  add_common(hom);
  auto* ext = app.add_subcommand("ext", "Ext dimensions up to a horizon");
  files(ext, "Two module files");
  ext->add_option("--horizon", cfg.horizon, "Highest degree");
  add_common(ext);
  auto* resolve = app.add_subcommand("resolve", "Projective, lifted, or lifted injective resolution");
  files(resolve, "Module file");
  resolve->add_option("--length", cfg.length, "Resolution length");
  resolve->add_flag("--lift", cfg.lift, "Resolve in the differential category");
  resolve->add_flag("--co", cfg.coresolve, "Coresolve by contractibles on injectives");
  add_common(resolve);
  auto* gp = app.add_subcommand("gp", "Gorenstein projectivity by both routes");
  files(gp, "Module file");
  gp->add_option("--route", cfg.route, "direct, underlying or both");
  add_common(gp);
  auto* gi = app.add_subcommand("gi", "Gorenstein injectivity by both routes");
  files(gi, "Module file");
  gi->add_option("--route", cfg.route, "direct, underlying or both");
  add_common(gi);
  auto* gpd_cmd = app.add_subcommand("gpd", "Gorenstein projective dimension");
  files(gpd_cmd, "Module file");
  add_common(gpd_cmd);
  auto* gid_cmd = app.add_subcommand("gid", "Gorenstein injective dimension");
  files(gid_cmd, "Module file");
  add_common(gid_cmd);
  auto* verify = app.add_subcommand("verify", "Check both computation routes over all small modules");
  verify->add_option("--algebra", cfg.algebra, "Algebra file")->required()->check(CLI::ExistingFile);
  verify->add_option("--dim-max", cfg.dim_max, "Largest total dimension")->check(CLI::PositiveNumber);
  verify->add_option("--horizon", cfg.horizon, "Ext horizon");
  verify->add_option("--bound", cfg.bound, "Enumeration bound for differentials")->check(CLI::PositiveNumber);
  verify->add_option("--threads", cfg.threads, "Worker threads (default: DIFFMOD_THREADS or all cores)");
  add_common(verify);
  auto* profile = app.add_subcommand("profile", "Injective dimensions of the regular modules");
  files(profile, "Algebra file");
  add_common(profile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*hom) return cmd_hom(cfg);
    if (*ext) return cmd_ext(cfg);
    if (*resolve) return cmd_resolve(cfg);
    if (*gp) return cmd_gp(cfg, false);
    if (*gi) return cmd_gp(cfg, true);
    if (*gpd_cmd) return cmd_dimension(cfg, false);
    if (*gid_cmd) return cmd_dimension(cfg, true);
    if (*verify) return cmd_verify(cfg);
    if (*profile) return cmd_profile(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
