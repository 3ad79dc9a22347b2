#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spraylab/catalog.hpp"
#include "spraylab/funk_solver.hpp"
#include "spraylab/sampling.hpp"

using namespace spraylab;

TEST_CASE("norm seed at a point on the axis") {
  // phi = |y|: P solves P = |y + P x|; at x = (0.1, 0), y = (1, 0) the
  // equation is linear and P = 1/(1 - 0.1) = 10/9.
  Expr phi = Expr::parse("sqrt(dot_yy)", 2);
  FunkSolve s = solve_funk(phi, {0.1, 0.0}, {1.0, 0.0});
  CHECK(s.P == doctest::Approx(10.0 / 9.0).epsilon(1e-11));
  CHECK(s.residual < 1e-11);
}

TEST_CASE("linear seeds reproduce the 1-form funk function") {
  // phi = -<a, y> gives P = -<a, y>/(1 + <a, x>) exactly.
  Expr phi = Expr::parse("-y1", 2);
  FunkSolve s = solve_funk(phi, {0.2, 0.0}, {1.0, 1.0});
  CHECK(s.P == doctest::Approx(-1.0 / 1.2).epsilon(1e-11));
  ScalarField oracle = catalog_field("oneform_funk", 2);
  CHECK(s.P == doctest::Approx(oracle.eval({0.2, 0.0, 1.0, 1.0})).epsilon(1e-11));
}

TEST_CASE("at the center the solution is the seed itself") {
  Expr phi = Expr::parse("sqrt(dot_yy)", 2);
  FunkSolve s = solve_funk(phi, {0.0, 0.0}, {0.6, -0.8});
  CHECK(s.P == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solution is positively 1-homogeneous in y") {
  Expr phi = Expr::parse("sqrt(dot_yy+0.5*y1^2)", 2);
  std::vector<double> x = {0.15, -0.1};
  double base = solve_funk(phi, x, {0.7, 0.4}).P;
  for (double lam : {0.5, 2.0}) {
    double scaled = solve_funk(phi, x, {lam * 0.7, lam * 0.4}).P;
    CHECK(scaled == doctest::Approx(lam * base).epsilon(1e-10));
  }
}

TEST_CASE("norm seed agrees with the funk function of the unit ball") {
  Expr phi = Expr::parse("sqrt(dot_yy)", 2);
  ScalarField F = catalog_field("ball_funk", 2);
  SampleSpec spec;
  spec.n = 2;
  spec.seed = 5;
  spec.count = 10;
  spec.x_box = 0.25;
  for (const Point& p : sample_points(spec)) {
    FunkSolve s = solve_funk(phi, {p[0], p[1]}, {p[2], p[3]});
    CHECK(s.P == doctest::Approx(F.eval(p)).epsilon(1e-10));
  }
}

TEST_CASE("solver rejects points outside the contraction neighborhood") {
  Expr phi = Expr::parse("sqrt(dot_yy)", 2);
  CHECK_THROWS_AS(solve_funk(phi, {0.6, 0.0}, {1.0, 0.0}),
                  OutsideNeighborhood);
  CHECK_THROWS_AS(solve_funk(phi, {0.5, 0.0}, {1.0, 0.0}),
                  OutsideNeighborhood);
}

TEST_CASE("solved values satisfy the funk pde") {
  Expr phi = Expr::parse("sqrt(dot_yy)", 2);
  std::vector<std::vector<double>> xs = {{0.1, 0.05}, {-0.12, 0.2}, {0.0, -0.15}};
  std::vector<std::vector<double>> ys = {{1.0, 0.0}, {0.6, 0.8}, {-0.4, 0.9}};
  PdeResiduals r = verify_funk_pde(phi, xs, ys);
  CHECK(r.funk_pde < 1e-5);
  CHECK(r.square_identity < 1e-5);
}

TEST_CASE("integrability obstruction separates flat from curved sprays") {
  SampleSpec spec;
  spec.n = 2;
  spec.seed = 7;
  spec.count = 5;
  spec.domain = {Expr::parse("1-dot_xx", 2)};
  auto pts = sample_points(spec);
  CHECK(flat_funk_integrability(SprayModel::minkowski(2), pts) < 1e-12);
  CHECK(flat_funk_integrability(catalog_spray("funk_spray", 2), pts) > 1e-3);
}
