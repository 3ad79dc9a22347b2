#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spraylab/catalog.hpp"
#include "spraylab/curvature.hpp"
#include "spraylab/sampling.hpp"

using namespace spraylab;

namespace {

std::vector<Point> ball_points(int count, unsigned seed = 3) {
  SampleSpec spec;
  spec.n = 2;
  spec.seed = seed;
  spec.count = count;
  spec.domain = {Expr::parse("1-dot_xx", 2)};
  return sample_points(spec);
}

}  // namespace

TEST_CASE("flat spray is R-flat") {
  SprayModel s = SprayModel::minkowski(3);
  ClassifyResult r = classify(s, {{0.1, 0.2, -0.3, 1.0, 0.5, -2.0}});
  CHECK(r.flags.r_flat);
  CHECK(r.flags.constant);
  CHECK(r.norm_R < 1e-12);
}

TEST_CASE("classify refuses an empty point set") {
  CHECK_THROWS_AS(classify(SprayModel::minkowski(2), {}), EmptyPointSet);
}

TEST_CASE("funk spray curvature matches the closed form") {
  // For G^i = (1/2) F y^i: R^i_k = -(F^2/4) delta^i_k + (3/4) F F_{.k} y^i
  //   - (1/2) F_{.k} F_{.m} y^m y^i ... collapse via F_{.m} y^m = F:
  //   R^i_k = (F/4)(F_{.k} y^i - F delta^i_k).
  SprayModel s = catalog_spray("funk_spray", 2);
  ScalarField F = catalog_field("ball_funk", 2);
  for (const Point& p : ball_points(8)) {
    CurvatureReport rep = riemann(s, p);
    Jet fj = F.jet_at(p, 1);
    double f = fj.value();
    double fk[2] = {fj.deriv(2).value(), fj.deriv(3).value()};
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        double expect =
            0.25 * f * fk[k] * p[2 + i] - (i == k ? 0.25 * f * f : 0.0);
        CHECK(rep.R_mat[i][k] == doctest::Approx(expect).epsilon(1e-8));
      }
    // scalar flag with R = -F^2/4 after projection
    CHECK(rep.flags.scalar);
    CHECK(rep.flags.isotropic);
  }
}

TEST_CASE("linear-factor spray has the closed-form scalar curvature") {
  // G^i = -(1/3) sigma_0 y^i with sigma = -(1/3) ln(<a,x>+b) gives
  // R = -2 sigma_0^2 where sigma_0 = -(1/3) <a,y>/(<a,x>+b).
  SprayModel s = catalog_spray("eehf1", 2);
  for (const Point& p : ball_points(8, 5)) {
    CurvatureReport rep = riemann(s, p);
    double s0 = -(1.0 / 3.0) * p[2] / (p[0] + 1.0);  // a=(1,0), b=1
    CHECK(rep.R_scalar == doctest::Approx(-2.0 * s0 * s0).epsilon(1e-7));
    CHECK(rep.flags.scalar);
    CHECK(rep.flags.isotropic);
    CHECK_FALSE(rep.flags.r_flat);
  }
}

TEST_CASE("the coefficient-1 variant is R-flat") {
  SprayModel s = catalog_spray("eehf1_rflat", 2);
  ClassifyResult r = classify(s, ball_points(8, 7));
  CHECK(r.flags.r_flat);
  CHECK(r.flags.constant);
  CHECK(r.norm_R < 1e-8);
}

TEST_CASE("berwald coefficients contract back to the connection") {
  SprayModel s = catalog_spray("funk_spray", 2);
  for (const Point& p : ball_points(4, 13)) {
    auto vars = lift(p, 3);
    auto G = s.coeffs(vars);
    auto N = nonlinear_connection(G, 2);
    auto Gamma = berwald_coeffs(G, 2);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        double c = 0;
        for (int j = 0; j < 2; ++j) c += p[2 + j] * Gamma[i][j][k].value();
        CHECK(c == doctest::Approx(N[i][k].value()).epsilon(1e-10));
        CHECK(Gamma[i][0][1].value() ==
              doctest::Approx(Gamma[i][1][0].value()).epsilon(1e-12));
      }
  }
}

TEST_CASE("berwald curvature of a flat spray vanishes") {
  auto B = berwald_curvature(SprayModel::minkowski(2), {0.1, 0.2, 1.0, -0.5});
  for (auto& a : B)
    for (auto& b : a)
      for (auto& c : b)
        for (double v : c) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("three-index curvature is antisymmetric and kills flat sprays") {
  auto R0 = riemann3(SprayModel::minkowski(2), {0.1, 0.2, 1.0, -0.5});
  for (auto& a : R0)
    for (auto& b : a)
      for (double v : b) CHECK(std::abs(v) < 1e-12);

  SprayModel s = catalog_spray("funk_spray", 2);
  Point p = ball_points(1, 17)[0];
  auto R3 = riemann3(s, p);
  double mx = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        CHECK(R3[i][j][k] == doctest::Approx(-R3[i][k][j]).epsilon(1e-9));
        mx = std::max(mx, std::abs(R3[i][j][k]));
      }
  CHECK(mx > 1e-4);  // curved sprays leave a nonzero trace

  // contraction recovers R^i_k up to the y-trace identity: R^i_{jk} y^j = R^i_k
  CurvatureReport rep = riemann(s, p);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      double c = 0;
      for (int j = 0; j < 2; ++j) c += R3[i][j][k] * p[2 + j];
      CHECK(c == doctest::Approx(rep.R_mat[i][k]).epsilon(1e-7));
    }
}

TEST_CASE("s-curvature vanishes for a constant volume density") {
  SprayModel s = SprayModel::minkowski(2);
  Expr sigma = Expr::parse("2", 2);
  Jet S = s_curvature(s, sigma, {0.1, -0.2, 1.0, 0.5});
  CHECK(std::abs(S.value()) < 1e-12);
}

TEST_CASE("s-curvature sees the density gradient") {
  // flat spray, sigma = e^{x1}: S = -y^1
  SprayModel s = SprayModel::minkowski(2);
  Expr sigma = Expr::parse("exp(x1)", 2);
  Point p = {0.1, -0.2, 0.7, 0.5};
  Jet S = s_curvature(s, sigma, p);
  CHECK(S.value() == doctest::Approx(-p[2]).epsilon(1e-12));
  CHECK_THROWS_AS(s_curvature(s, Expr::parse("x1-1", 2), p),
                  NonpositiveDensity);
}

TEST_CASE("horizontal derivative reduces to d/dx on a flat spray") {
  SprayModel s = SprayModel::minkowski(2);
  Point p = {0.3, -0.1, 1.0, 0.4};
  auto vars = lift(p, 2);
  auto G = s.coeffs(vars);
  auto N = nonlinear_connection(G, 2);
  Expr q = Expr::parse("x1*y1+x2^2*y2", 2);
  Jet qj = q.eval_jet(vars);
  auto h = horizontal_derivative(qj, N, 2);
  CHECK(h[0].value() == doctest::Approx(p[2]));
  CHECK(h[1].value() == doctest::Approx(2.0 * p[1] * p[3]));
  Jet h0 = contract_y(h, vars, 2);
  CHECK(h0.value() == doctest::Approx(p[2] * p[2] + 2 * p[1] * p[3] * p[3]));
}

TEST_CASE("curvature respects the y-scaling weight") {
  SprayModel s = catalog_spray("funk_spray", 2);
  Point p = {0.2, -0.1, 0.8, 0.6};
  Point q = p;
  q[2] *= 2.0;
  q[3] *= 2.0;
  CurvatureReport a = riemann(s, p);
  CurvatureReport b = riemann(s, q);
  // R^i_k is degree 2 in y
  CHECK(b.R_mat[0][0] == doctest::Approx(4.0 * a.R_mat[0][0]).epsilon(1e-10));
  CHECK(b.R_scalar == doctest::Approx(4.0 * a.R_scalar).epsilon(1e-10));
}
