// jwb: a workbench for cubic Jordan algebras over exact field towers and a
// Krull-Schmidt calculus for vector bundles on curves of genus zero and one.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "jwb/scenarios.hpp"
#include "jwb/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

jwb::Json find_algebra_spec(const jwb::Json& config, const std::string& name) {
  for (const auto& spec : config.value("algebras", jwb::Json::array()))
    if (spec.value("name", "") == name) return spec;
  throw jwb::Error("no algebra named '" + name + "' in the config");
}

int cmd_build(const std::string& config_path, const std::string& name,
              const std::string& out_path) {
  jwb::Json config = jwb::load_json_file(config_path);
  jwb::TowerPtr tower = jwb::tower_from_json(config.value("tower", jwb::Json::object()));
  jwb::NamedAlgebra alg = jwb::build_from_config(find_algebra_spec(config, name), tower);
  jwb::Json j = jwb::algebra_to_json(alg);
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(1) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw jwb::Error("cannot write '" + out_path + "'");
    out << j.dump(1) << "\n";
    std::cout << "wrote " << out_path << " (" << alg.name << ", dim " << alg.algebra.dim()
              << ")\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& algebra_path, std::uint64_t seed, long samples) {
  jwb::NamedAlgebra alg = jwb::algebra_from_json(jwb::load_json_file(algebra_path));
  jwb::VerifyOptions opt;
  opt.seed = seed;
  opt.samples = samples;
  if (samples <= 0) throw jwb::Error("config error: samples must be positive");
  jwb::Report rep = jwb::verify_full(alg.algebra, opt);
  std::cout << "algebra " << alg.name << " (dim " << alg.algebra.dim() << ", seed " << seed
            << ", samples " << samples << ")\n"
            << rep.text();
  std::cout << (rep.all_pass() ? "all checks passed\n" : "CHECKS FAILED\n");
  return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

jwb::Vec parse_vector(const std::string& text, const jwb::TowerPtr& tower, int n) {
  jwb::Json j = jwb::Json::parse(text);
  jwb::Vec v;
  for (const auto& entry : j)
    v.push_back(jwb::Scalar::constant(tower, jwb::rat_parse(entry.get<std::string>())));
  if (static_cast<int>(v.size()) != n)
    throw jwb::Error("vector has length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(n));
  return v;
}

int cmd_element(const std::string& algebra_path, const std::string& op, const std::string& xs,
                const std::string& ys) {
  jwb::NamedAlgebra alg = jwb::algebra_from_json(jwb::load_json_file(algebra_path));
  const jwb::CubicJordanAlgebra& a = alg.algebra;
  jwb::Vec x = parse_vector(xs, a.tower(), a.dim());
  if (op == "norm") {
    std::cout << a.norm(x).str() << "\n";
  } else if (op == "adjoint") {
    std::cout << jwb::vec_str(a.adjoint(x)) << "\n";
  } else if (op == "inverse") {
    std::cout << jwb::vec_str(a.invert(x)) << "\n";
  } else if (op == "trace") {
    std::cout << a.trace_linear(x).str() << "\n";
  } else if (op == "u") {
    if (ys.empty()) throw jwb::Error("--y is required for the u operator");
    jwb::Vec y = parse_vector(ys, a.tower(), a.dim());
    std::cout << jwb::vec_str(a.u(x, y)) << "\n";
  } else {
    throw jwb::Error("unknown element operation '" + op + "'");
  }
  return kExitOk;
}

jwb::bundles::CurveContext context_from_file(const std::string& ctx_path) {
  if (ctx_path.empty()) throw jwb::Error("--ctx is required");
  return jwb::curve_from_json(jwb::load_json_file(ctx_path));
}

int cmd_bundle_normalize(const std::string& ctx_path, const std::string& expr) {
  auto ctx = context_from_file(ctx_path);
  auto nf = jwb::bundles::normalize(jwb::bundles::parse_expr(expr, ctx), ctx);
  std::cout << nf.str(ctx) << "\n";
  return kExitOk;
}

int cmd_bundle_compare(const std::string& ctx_path, const std::string& e1,
                       const std::string& e2) {
  auto ctx = context_from_file(ctx_path);
  auto a = jwb::bundles::normalize(jwb::bundles::parse_expr(e1, ctx), ctx);
  auto b = jwb::bundles::normalize(jwb::bundles::parse_expr(e2, ctx), ctx);
  bool eq = jwb::bundles::ks_equal(a, b);
  std::cout << (eq ? "true" : "false") << "\n";
  return eq ? kExitOk : kExitCheckFailed;
}

int cmd_reproduce(const std::string& selector, bool list_only) {
  using namespace jwb::bundles;
  if (list_only) {
    for (const ScenarioDef& d : scenario_registry()) std::cout << d.suite << "/" << d.id << "\n";
    return kExitOk;
  }
  std::vector<ScenarioResult> rs = run_suite(selector);
  int gating_failures = 0;
  for (const ScenarioResult& r : rs) {
    std::cout << r.line() << "\n";
    if (!r.note.empty()) std::cout << "    note: " << r.note << "\n";
    if (!r.match) {
      std::cout << "    computed: " << r.computed << "\n";
      if (r.applicable) std::cout << "    expected: " << r.expected << "\n";
      if (r.gates()) ++gating_failures;
    }
  }
  std::cout << rs.size() << " scenarios";
  if (gating_failures) std::cout << ", " << gating_failures << " FAILURES";
  std::cout << "\n";
  return gating_failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for cubic Jordan algebras and bundle decompositions"};
  app.require_subcommand(1);

  std::string config_path, out_path, name, algebra_path, op, xs, ys, ctx_path, selector = "all";
  std::string expr1, expr2;
  std::uint64_t seed = 0;
  long samples = 200;
  bool list_only = false;

  CLI::App* build = app.add_subcommand("build", "construct an algebra from a config file");
  build->add_option("--config", config_path, "config file")->required();
  build->add_option("name", name, "algebra name in the config")->required();
  build->add_option("--out", out_path, "output file ('-' for stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the axiom suite on an algebra file");
  verify->add_option("algebra", algebra_path, "algebra file")->required();
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--samples", samples, "sample count");

  CLI::App* element = app.add_subcommand("element", "evaluate norm/adjoint/inverse/u");
  element->add_option("algebra", algebra_path, "algebra file")->required();
  element->add_option("--op", op, "norm|adjoint|inverse|trace|u")->required();
  element->add_option("--x", xs, "vector, JSON array of rationals")->required();
  element->add_option("--y", ys, "second vector for u");

  CLI::App* bundle = app.add_subcommand("bundle", "normalize or compare bundle expressions");
  CLI::App* bnorm = bundle->add_subcommand("normalize", "normal form of an expression");
  bnorm->add_option("--ctx", ctx_path, "curve context file")->required();
  bnorm->add_option("expr", expr1, "bundle expression")->required();
  CLI::App* bcomp = bundle->add_subcommand("compare", "Krull-Schmidt equality");
  bcomp->add_option("--ctx", ctx_path, "curve context file")->required();
  bcomp->add_option("expr1", expr1, "first expression")->required();
  bcomp->add_option("expr2", expr2, "second expression")->required();
  bundle->require_subcommand(1);

  CLI::App* reproduce = app.add_subcommand("reproduce", "run the decomposition scenario table");
  reproduce->add_option("selector", selector, "all, a suite name, or a scenario id");
  reproduce->add_flag("--list", list_only, "list scenario ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(config_path, name, out_path);
    if (verify->parsed()) return cmd_verify(algebra_path, seed, samples);
    if (element->parsed()) return cmd_element(algebra_path, op, xs, ys);
    if (bundle->parsed()) {
      if (bnorm->parsed()) return cmd_bundle_normalize(ctx_path, expr1);
      return cmd_bundle_compare(ctx_path, expr1, expr2);
    }
    if (reproduce->parsed()) return cmd_reproduce(selector, list_only);
  } catch (const jwb::bundles::NoRuleApplies& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const jwb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
