#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spraylab/catalog.hpp"
#include "spraylab/funk_solver.hpp"
#include "spraylab/hamel.hpp"
#include "spraylab/projective.hpp"
#include "spraylab/report.hpp"
#include "spraylab/sampling.hpp"
#include "spraylab/sweep.hpp"
#include "spraylab/verify.hpp"

namespace {

using nlohmann::json;
using namespace spraylab;

constexpr int kConfigFormatVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Params params_from_json(const json& j) {
  Params p;
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it)
      p[it.key()] = it.value().get<double>();
  return p;
}

SprayModel load_spray(const json& spec, int n) {
  if (spec.contains("catalog"))
    return catalog_spray(spec["catalog"].get<std::string>(), n,
                         params_from_json(spec.value("params", json::object())));
  if (spec.contains("exprs")) {
    std::vector<Expr> G;
    for (const auto& s : spec["exprs"])
      G.push_back(Expr::parse(s.get<std::string>(), n));
    if (static_cast<int>(G.size()) != n)
      throw ConfigError("spray.exprs must have exactly n entries");
    std::vector<Expr> dom;
    for (const auto& s : spec.value("domain", json::array()))
      dom.push_back(Expr::parse(s.get<std::string>(), n));
    return SprayModel::from_exprs(std::move(G), spec.value("label", "inline"),
                                  std::move(dom));
  }
  throw ConfigError("spray spec needs \"catalog\" or \"exprs\"");
}

ScalarField load_field(const json& spec, int n) {
  if (spec.contains("catalog"))
    return catalog_field(spec["catalog"].get<std::string>(), n,
                         params_from_json(spec.value("params", json::object())));
  if (spec.contains("expr")) {
    std::vector<Expr> dom;
    for (const auto& s : spec.value("domain", json::array()))
      dom.push_back(Expr::parse(s.get<std::string>(), n));
    return ScalarField::from_expr(
        Expr::parse(spec["expr"].get<std::string>(), n),
        spec.value("degree", 1), spec.value("label", "inline"),
        std::move(dom));
  }
  throw ConfigError("field spec needs \"catalog\" or \"expr\"");
}

struct CheckSpec {
  std::string op;
  std::string expect;  // classify: scalar/isotropic/constant/r_flat;
                       // predicates: pass/fail
};

int run_config(const std::string& path, const std::string& out_path,
               int seed_override, int points_override, int order_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json cfg;
  try {
    cfg = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (cfg.value("format_version", 0) != kConfigFormatVersion)
    throw ConfigError("config format_version must be " +
                      std::to_string(kConfigFormatVersion));

  const int n = cfg.value("dimension", 2);
  SprayModel spray = load_spray(cfg.at("spray"), n);
  std::vector<ScalarField> fields;
  for (const auto& f : cfg.value("fields", json::array()))
    fields.push_back(load_field(f, n));

  std::vector<CheckSpec> checks;
  for (const auto& c : cfg.at("checks")) {
    CheckSpec cs;
    if (c.is_string()) {
      cs.op = c.get<std::string>();
    } else {
      cs.op = c.at("op").get<std::string>();
      cs.expect = c.value("expect", "");
    }
    static const char* known[] = {"classify",      "is_hamel", "is_funk",
                                  "is_weak_funk",  "euler",    "invariant_T",
                                  "integrability", "pm_spray_consistency"};
    bool ok = false;
    for (const char* k : known) ok = ok || cs.op == k;
    if (!ok) throw ConfigError("unknown check name: " + cs.op);
    checks.push_back(std::move(cs));
  }

  json sampling = cfg.value("sampling", json::object());
  SampleSpec spec;
  spec.n = n;
  spec.seed = seed_override >= 0 ? static_cast<unsigned>(seed_override)
                                 : sampling.value("seed", 1u);
  spec.count =
      points_override > 0 ? points_override : sampling.value("count", 20);
  spec.x_box = sampling.value("x_box", 0.3);
  spec.sphere_scaled = sampling.value("y_mode", "sphere_scaled") ==
                       "sphere_scaled";
  spec.domain = spray.domain;
  for (const auto& f : fields)
    for (const Expr& e : f.domain) spec.domain.push_back(e);

  json tolj = cfg.value("tolerances", json::object());
  double tol = tolj.value("tol", 1e-8);
  double neg = tolj.value("neg_threshold", 1e-3);
  int order = order_override > 0 ? order_override : cfg.value("order", 4);

  std::vector<Point> pts = sample_points(spec);

  Report rep;
  {
    std::ostringstream echo;
    echo << "run -c " << path;
    rep.config_echo = echo.str();
  }
  auto add = [&](const std::string& check, double residual, double t,
                 bool pass) {
    CheckRecord r;
    r.check = check;
    r.residual_name = "max_residual";
    r.residual_value = residual;
    r.tol = t;
    r.verdict = pass;
    rep.records.push_back(std::move(r));
  };

  HamelOptions ho{order, tol};
  for (const CheckSpec& cs : checks) {
    if (cs.op == "classify") {
      ClassifyResult c = classify(spray, pts, {order, tol});
      std::string want = cs.expect.empty() ? "scalar" : cs.expect;
      double residual;
      bool flag;
      if (want == "scalar") {
        residual = c.residual_scalar;
        flag = c.flags.scalar;
      } else if (want == "isotropic") {
        residual = c.residual_isotropic;
        flag = c.flags.isotropic;
      } else if (want == "constant") {
        residual = c.residual_constant;
        flag = c.flags.constant;
      } else if (want == "r_flat") {
        residual = c.norm_R;
        flag = c.flags.r_flat;
      } else {
        throw ConfigError("unknown classify expectation: " + want);
      }
      add("classify:" + want + ":" + spray.label, residual, tol, flag);
    } else if (cs.op == "euler") {
      double worst = 0;
      for (const Point& p : pts)
        worst = std::max(worst, euler_residual_spray(spray, p));
      for (const auto& f : fields)
        for (const Point& p : pts)
          worst = std::max(worst, euler_residual(f, p));
      add("euler:" + spray.label, worst, tol, worst < tol);
    } else if (cs.op == "integrability") {
      double v = flat_funk_integrability(spray, pts, order);
      bool expect_zero = cs.expect != "nonzero";
      add("integrability:" + spray.label, v, expect_zero ? tol : neg,
          expect_zero ? v < tol : v > neg);
    } else {
      if (fields.empty())
        throw ConfigError("check " + cs.op + " needs at least one field");
      for (const auto& f : fields) {
        if (cs.op == "invariant_T") {
          double worst = 0;
          for (const Point& p : pts) {
            auto T = projective_invariant_T(f, spray, p, order);
            for (double t : T) worst = std::max(worst, std::abs(t));
          }
          add("invariant_T:" + f.label, worst, tol, worst < tol);
          continue;
        }
        if (cs.op == "pm_spray_consistency") {
          double worst = 0;
          for (const Point& p : pts) {
            auto r = hamel_spray_residual(spray, f, p, order);
            for (double v : r) worst = std::max(worst, std::abs(v));
          }
          add("pm_spray_consistency:" + f.label, worst, tol, worst < tol);
          continue;
        }
        HamelCheck hc = cs.op == "is_hamel"   ? is_hamel(f, spray, pts, ho)
                        : cs.op == "is_funk" ? is_funk(f, spray, pts, ho)
                                             : is_weak_funk(f, spray, pts, ho);
        bool expect_pass = cs.expect != "fail";
        bool ok = expect_pass ? hc.verdict : hc.max_residual > neg;
        add(cs.op + ":" + f.label, hc.max_residual,
            expect_pass ? tol : neg, ok);
      }
    }
  }

  std::string out = !out_path.empty() ? out_path : cfg.value("output", "");
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw ConfigError("cannot open report file: " + out);
    emit_report(rep, os);
  } else {
    emit_report(rep, std::cout);
  }
  std::cerr << "checks: " << rep.pass_count() << " passed, "
            << rep.fail_count() << " failed, " << rep.skip_count()
            << " skipped\n";
  return rep.all_pass() ? 0 : 1;
}

std::vector<double> parse_csv(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spraylab: numerical workbench for spray geometry"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run checks from a config file");
  std::string config_path, report_path;
  int seed = -1, points = -1, order = -1;
  run->add_option("-c,--config", config_path, "config file (JSON)")
      ->required();
  run->add_option("-o,--output", report_path, "report file (JSONL)");
  run->add_option("--seed", seed, "override sampling seed");
  run->add_option("--points", points, "override sample count");
  run->add_option("--order", order, "override jet order");

  auto* verify = app.add_subcommand("verify-paper", "run the claim suite");
  bool full = false;
  std::vector<std::string> mutations;
  verify->add_flag("--full", full, "200 points per claim instead of 20");
  verify->add_option("--mutate", mutations,
                     "scale a catalog constant, name:factor (for testing)");

  auto* cat = app.add_subcommand("catalog", "catalog utilities");
  auto* list = cat->add_subcommand("list", "list catalog entries");

  auto* fsolve =
      app.add_subcommand("funk-solve", "solve P = phi(y + P x) at a point");
  std::string phi_src, x_csv, y_csv;
  fsolve->add_option("--phi", phi_src, "degree-1 seed expression in y")
      ->required();
  fsolve->add_option("--x", x_csv, "base point, comma-separated")->required();
  fsolve->add_option("--y", y_csv, "direction, comma-separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_config(config_path, report_path, seed, points, order);

    if (*verify) {
      for (const std::string& m : mutations) {
        auto pos = m.find(':');
        if (pos == std::string::npos) {
          std::cerr << "bad --mutate, expected name:factor\n";
          return 2;
        }
        catalog_set_mutation(m.substr(0, pos), std::stod(m.substr(pos + 1)));
      }
      Report rep = verify_paper({full});
      emit_report(rep, std::cout);
      std::cerr << "claims: " << rep.pass_count() << " passed, "
                << rep.fail_count() << " failed\n";
      return rep.all_pass() ? 0 : 1;
    }

    if (*list) {
      for (const auto& e : catalog_entries()) {
        const char* kind = e.kind == ModelKind::Spray    ? "spray"
                           : e.kind == ModelKind::Metric ? "metric"
                                                         : "field";
        std::cout << e.id << "\t" << kind << "\t" << e.summary;
        if (!e.params.empty()) std::cout << "\t[" << e.params << "]";
        std::cout << "\n";
      }
      return 0;
    }

    if (*fsolve) {
      std::vector<double> x = parse_csv(x_csv), y = parse_csv(y_csv);
      if (x.size() != y.size() || x.empty()) {
        std::cerr << "x and y must have the same nonzero length\n";
        return 2;
      }
      Expr phi = Expr::parse(phi_src, static_cast<int>(x.size()));
      FunkSolve fs = solve_funk(phi, x, y);
      std::cout << "P = " << std::setprecision(15) << fs.P
                << "  iterations = " << fs.iterations
                << "  residual = " << fs.residual << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownCatalogId& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownIdentifier& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const MissingParam& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // singularities, domain violations, solver failures
    std::cerr << "abort: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
