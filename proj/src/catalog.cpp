#include "spraylab/catalog.hpp"

#include <map>

namespace spraylab {

namespace {

std::map<std::string, double>& mutations() {
  static std::map<std::string, double> m;
  return m;
}

double mut(const std::string& name, double value) {
  auto it = mutations().find(name);
  return it == mutations().end() ? value : value * it->second;
}

double need(const Params& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw MissingParam(name);
  return it->second;
}

double get_or(const Params& params, const std::string& name, double dflt) {
  auto it = params.find(name);
  return it == params.end() ? dflt : it->second;
}

// Covector a defaults to (1, 0, ..., 0); b defaults to 1.
Params with_covector_defaults(Params p, int n) {
  if (p.find("a1") == p.end()) {
    p["a1"] = 1.0;
    for (int i = 2; i <= n; ++i) p["a" + std::to_string(i)] = 0.0;
  }
  for (int i = 1; i <= n; ++i)
    if (p.find("a" + std::to_string(i)) == p.end())
      p["a" + std::to_string(i)] = 0.0;
  if (p.find("b") == p.end()) p["b"] = 1.0;
  return p;
}

const char* kFunkSrc =
    "(sqrt((1-dot_xx)*dot_yy+dot_xy^2)+dot_xy)/(1-dot_xx)";
const char* kKleinSrc = "sqrt((1-dot_xx)*dot_yy+dot_xy^2)/(1-dot_xx)";

std::vector<Expr> ball_domain(int n) {
  return {Expr::parse("1-dot_xx", n), Expr::parse("dot_yy", n)};
}

std::string replace_all(std::string s, const std::string& from,
                        const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

// eehf2's sigma chain: u = e^{-sigma}, closed form from the antiderivative.
std::string eehf2_u_src() {
  return "(ln((exp(-2*c3)/(2*c1*c2*(dot_a_x+b))-1)/c2)/(2*c1))";
}

}  // namespace

void catalog_set_mutation(const std::string& constant, double factor) {
  mutations()[constant] = factor;
}
void catalog_clear_mutations() { mutations().clear(); }

std::vector<std::string> catalog_mutable_constants() {
  return {"funk_spray.half", "eehf1.third", "mu_q0.mu"};
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"minkowski", ModelKind::Spray, "flat spray G = 0", ""},
      {"funk_spray", ModelKind::Spray,
       "spray of the Funk metric on the unit ball, G^i = (1/2) F y^i", ""},
      {"eehf1", ModelKind::Spray,
       "projectively flat Berwald spray -(1/3)<a,y>/(<a,x>+b) y^i",
       "a1..an (default e1), b (default 1)"},
      {"eehf1_rflat", ModelKind::Spray,
       "R-flat member of the same family, -<a,y>/(<a,x>+b) y^i",
       "a1..an, b"},
      {"eehf2", ModelKind::Spray,
       "constant-curvature member with tau = f(sigma), f from the "
       "three-constant exponential-log family",
       "c1 (default 1), c2 (default 1), c3 (default -2), a1..an, b"},
      {"eehf3", ModelKind::Spray, "-<x,y>/|x|^2 y^i on the half-plane x1 > 0",
       ""},
      {"hfs002_spray", ModelKind::Spray,
       "flat spray deformed by P = -<x,y>/(1+|x|^2) (n = 2)", ""},
      {"cf_family", ModelKind::Spray,
       "Funk spray deformed by c F(-y): G^i + c F(-y) y^i",
       "c (default 0)"},
      {"funk_metric", ModelKind::Metric, "Funk metric of the unit ball", ""},
      {"klein_metric", ModelKind::Metric,
       "Klein metric, the symmetrization of the Funk metric", ""},
      {"euclidean", ModelKind::Metric, "|y|", ""},
      {"ball_funk", ModelKind::Field,
       "Funk function of G = 0 with seed |y| (equals the Funk metric)", ""},
      {"oneform_funk", ModelKind::Field,
       "Funk function -<a,y>/(1+<a,x>) of G = 0", "a1..an"},
      {"eehf1_q", ModelKind::Field, "Funk function -(1/3)<a,y>/(<a,x>+b) of eehf1",
       "a1..an, b"},
      {"eehf2_q", ModelKind::Field, "sigma_0 Funk function of eehf2",
       "c1, c2, c3, a1..an, b"},
      {"eehf3_q", ModelKind::Field,
       "sigma_0 with sigma = ln(c1) - ln(c1 atan(x2/x1) + c2), n = 2",
       "c1 (default 1), c2 (default 1)"},
      {"mu_q0", ModelKind::Field,
       "sqrt((1+mu|x|^2)|y|^2 - mu<x,y>^2)/(1+mu|x|^2)", "mu"},
      {"complex_funk_p", ModelKind::Field, "-<x,y>/(1+|x|^2)", ""},
      {"complex_funk_q", ModelKind::Field,
       "sqrt((1+|x|^2)|y|^2 - <x,y>^2)/(1+|x|^2)", ""},
      {"hfs002_p", ModelKind::Field, "-<x,y>/(1+|x|^2), n = 2", ""},
      {"hfs002_q", ModelKind::Field,
       "f(y2/y1, (x2 y1 - x1 y2)/y1) y1/(1+|x|^2); variant selects f",
       "variant: 1 -> f=1, 2 -> f=s, 3 -> f=t"},
  };
  return entries;
}

SprayModel spray_from_tau(const Expr& tau, std::string label,
                          std::vector<Expr> domain) {
  SprayModel s;
  int n = tau.dimension();
  s.n = n;
  s.label = std::move(label);
  s.extra_order = 1;
  s.domain = std::move(domain);
  for (int i = 0; i < n; ++i) {
    s.G.push_back([tau, n, i](const JetVars& vars) {
      Jet t = tau.eval_jet(vars);
      Jet tau0 = vars[n] * t.deriv(0);
      for (int m = 1; m < n; ++m) tau0 += vars[n + m] * t.deriv(m);
      return tau0 * vars[n + i];
    });
  }
  return s;
}

SprayModel sigma_pm_spray(const Expr& sigma, std::string label,
                          std::vector<Expr> domain) {
  SprayModel s;
  int n = sigma.dimension();
  s.n = n;
  s.label = std::move(label);
  s.extra_order = 2;
  s.domain = std::move(domain);
  for (int i = 0; i < n; ++i) {
    s.G.push_back([sigma, n, i](const JetVars& vars) {
      Jet sg = sigma.eval_jet(vars);
      Jet s0 = vars[n] * sg.deriv(0);
      Jet s00 = vars[n] * sg.deriv(0).deriv(0) * vars[n];
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (a == 0 && b == 0) continue;
          s00 += vars[n + a] * sg.deriv(a).deriv(b) * vars[n + b];
        }
      for (int m = 1; m < n; ++m) s0 += vars[n + m] * sg.deriv(m);
      return s00 / (2.0 * s0) * vars[n + i];
    });
  }
  return s;
}

SprayModel catalog_spray(const std::string& id, int n, const Params& params) {
  if (id == "minkowski") return SprayModel::minkowski(n);

  if (id == "funk_spray") {
    Params p;
    p["h"] = mut("funk_spray.half", 0.5);
    std::vector<Expr> G;
    for (int i = 0; i < n; ++i)
      G.push_back(Expr::parse(std::string("h*(") + kFunkSrc + ")*y" +
                                  std::to_string(i + 1),
                              n, p));
    return SprayModel::from_exprs(std::move(G), "funk_spray", ball_domain(n));
  }

  if (id == "eehf1" || id == "eehf1_rflat") {
    Params p = with_covector_defaults(params, n);
    p["t3"] = id == "eehf1" ? mut("eehf1.third", 1.0 / 3.0) : 1.0;
    std::vector<Expr> G;
    for (int i = 0; i < n; ++i)
      G.push_back(Expr::parse("-(t3)*dot_a_y/(dot_a_x+b)*y" +
                                  std::to_string(i + 1),
                              n, p));
    return SprayModel::from_exprs(std::move(G), id,
                                  {Expr::parse("dot_a_x+b", n, p)});
  }

  if (id == "eehf2") {
    Params p = with_covector_defaults(params, n);
    p["c1"] = get_or(params, "c1", 1.0);
    p["c2"] = get_or(params, "c2", 1.0);
    p["c3"] = get_or(params, "c3", -2.0);
    std::string u = eehf2_u_src();
    std::string tau =
        "-c1*" + u + "+ln(exp(-2*c3)/(2*c1*c2*(dot_a_x+b)))+c3";
    std::vector<Expr> domain = {
        Expr::parse("dot_a_x+b", n, p),
        Expr::parse("exp(-2*c3)/(2*c1*c2*(dot_a_x+b))-1-c2", n, p)};
    return spray_from_tau(Expr::parse(tau, n, p), "eehf2", std::move(domain));
  }

  if (id == "eehf3") {
    std::vector<Expr> G;
    for (int i = 0; i < n; ++i)
      G.push_back(
          Expr::parse("-dot_xy/dot_xx*y" + std::to_string(i + 1), n));
    return SprayModel::from_exprs(std::move(G), "eehf3",
                                  {Expr::parse("x1", n), Expr::parse("dot_xx", n)});
  }

  if (id == "hfs002_spray") {
    std::vector<Expr> G;
    for (int i = 0; i < n; ++i)
      G.push_back(Expr::parse("-dot_xy/(1+dot_xx)*y" + std::to_string(i + 1), n));
    return SprayModel::from_exprs(std::move(G), "hfs002_spray");
  }

  if (id == "cf_family") {
    Params p;
    p["c"] = get_or(params, "c", 0.0);
    p["h"] = mut("funk_spray.half", 0.5);
    std::vector<Expr> G;
    Expr F = Expr::parse(kFunkSrc, n);
    Expr Frev = F.reverse_field();
    for (int i = 0; i < n; ++i) {
      Expr gi = Expr::parse("h*(" + std::string(kFunkSrc) + ")", n, p) *
                Expr::coord(n + i, n);
      G.push_back(gi + Expr::number(p["c"], n) * Frev * Expr::coord(n + i, n));
    }
    return SprayModel::from_exprs(std::move(G), "cf_family", ball_domain(n));
  }

  throw UnknownCatalogId(id);
}

FinslerModel catalog_metric(const std::string& id, int n, const Params&) {
  FinslerModel m;
  m.n = n;
  m.label = id;
  if (id == "funk_metric") {
    m.F = Expr::parse(kFunkSrc, n);
    m.domain = ball_domain(n);
    return m;
  }
  if (id == "klein_metric") {
    m.F = Expr::parse(kKleinSrc, n);
    m.domain = ball_domain(n);
    return m;
  }
  if (id == "euclidean") {
    m.F = Expr::parse("sqrt(dot_yy)", n);
    m.domain = {Expr::parse("dot_yy", n)};
    return m;
  }
  throw UnknownCatalogId(id);
}

ScalarField catalog_field(const std::string& id, int n, const Params& params) {
  if (id == "ball_funk")
    return ScalarField::from_expr(Expr::parse(kFunkSrc, n), 1, "ball_funk",
                                  ball_domain(n));
  if (id == "funk_metric" || id == "klein_metric" || id == "euclidean")
    return catalog_metric(id, n, params).as_field();

  if (id == "oneform_funk") {
    Params p = with_covector_defaults(params, n);
    return ScalarField::from_expr(
        Expr::parse("-(dot_a_y)/(1+dot_a_x)", n, p), 1, "oneform_funk",
        {Expr::parse("1+dot_a_x", n, p)});
  }

  if (id == "eehf1_q") {
    Params p = with_covector_defaults(params, n);
    p["t3"] = mut("eehf1.third", 1.0 / 3.0);
    return ScalarField::from_expr(
        Expr::parse("-(t3)*dot_a_y/(dot_a_x+b)", n, p), 1, "eehf1_q",
        {Expr::parse("dot_a_x+b", n, p)});
  }

  if (id == "eehf2_q") {
    Params p = with_covector_defaults(params, n);
    p["c1"] = get_or(params, "c1", 1.0);
    p["c2"] = get_or(params, "c2", 1.0);
    p["c3"] = get_or(params, "c3", -2.0);
    Expr sigma = Expr::parse("-ln" + eehf2_u_src(), n, p);
    return ScalarField::sigma_zero(
        sigma, "eehf2_q",
        {Expr::parse("dot_a_x+b", n, p),
         Expr::parse("exp(-2*c3)/(2*c1*c2*(dot_a_x+b))-1-c2", n, p)});
  }

  if (id == "eehf3_q") {
    Params p = params;
    p["c1"] = get_or(params, "c1", 1.0);
    p["c2"] = get_or(params, "c2", 1.0);
    Expr sigma = Expr::parse("ln(c1)-ln(c1*atan(x2/x1)+c2)", n, p);
    return ScalarField::sigma_zero(
        sigma, "eehf3_q",
        {Expr::parse("x1", n), Expr::parse("c1*atan(x2/x1)+c2", n, p)});
  }

  if (id == "mu_q0") {
    Params p;
    p["mu"] = need(params, "mu");
    p["muq"] = mut("mu_q0.mu", p["mu"]);
    return ScalarField::from_expr(
        Expr::parse("sqrt((1+muq*dot_xx)*dot_yy-muq*dot_xy^2)/(1+muq*dot_xx)",
                    n, p),
        1, "mu_q0",
        {Expr::parse("1+mu*dot_xx", n, p),
         Expr::parse("(1+mu*dot_xx)*dot_yy-mu*dot_xy^2", n, p)});
  }

  if (id == "mu_p") {
    Params p;
    p["mu"] = need(params, "mu");
    return ScalarField::from_expr(
        Expr::parse("-(mu)*dot_xy/(1+mu*dot_xx)", n, p), 1, "mu_p",
        {Expr::parse("1+mu*dot_xx", n, p)});
  }

  if (id == "complex_funk_p" || id == "hfs002_p")
    return ScalarField::from_expr(Expr::parse("-dot_xy/(1+dot_xx)", n), 1, id);

  if (id == "complex_funk_q")
    return ScalarField::from_expr(
        Expr::parse("sqrt((1+dot_xx)*dot_yy-dot_xy^2)/(1+dot_xx)", n), 1, id,
        {Expr::parse("(1+dot_xx)*dot_yy-dot_xy^2", n)});

  if (id == "hfs002_q") {
    int variant = static_cast<int>(get_or(params, "variant", 1.0));
    std::string f = variant == 1 ? "1" : variant == 2 ? "s" : "t";
    f = replace_all(f, "s", "(y2/y1)");
    f = replace_all(f, "t", "((x2*y1-x1*y2)/y1)");
    return ScalarField::from_expr(
        Expr::parse("(" + f + ")*y1/(1+x1^2+x2^2)", n), 1,
        "hfs002_q[" + std::to_string(variant) + "]", {Expr::parse("y1", n)});
  }

  throw UnknownCatalogId(id);
}

}  // namespace spraylab
