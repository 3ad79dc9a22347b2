#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spraylab/catalog.hpp"
#include "spraylab/hamel.hpp"
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

TEST_CASE("a constant 1-form on the flat spray has zero h-derivative") {
  ScalarField Q = ScalarField::from_expr(Expr::parse("2*y1-y2", 2), 1, "a0");
  SprayModel s = SprayModel::minkowski(2);
  HDerivative h = h_derivative(Q, s, {0.1, -0.4, 1.0, 0.7});
  CHECK(std::abs(h.covector[0].value()) < 1e-12);
  CHECK(std::abs(h.covector[1].value()) < 1e-12);
  CHECK(std::abs(h.contracted.value()) < 1e-12);
}

TEST_CASE("funk function of the unit ball satisfies the funk equation") {
  ScalarField Q = catalog_field("ball_funk", 2);
  SprayModel flat = SprayModel::minkowski(2);
  // Q_{;1} = Q Q_{.1} = 1 at the center with y = (1, 0)
  HDerivative h = h_derivative(Q, flat, {0.0, 0.0, 1.0, 0.0});
  CHECK(h.covector[0].value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(h.covector[1].value()) < 1e-12);

  auto pts = ball_points(10);
  CHECK(is_funk(Q, flat, pts).verdict);
  CHECK(is_weak_funk(Q, flat, pts).verdict);
  CHECK(is_hamel(Q, flat, pts).verdict);
}

TEST_CASE("a metric is parallel along its own geodesic spray") {
  ScalarField F = catalog_field("funk_metric", 2);
  SprayModel s = catalog_spray("funk_spray", 2);
  for (const Point& p : ball_points(6, 5)) {
    HDerivative h = h_derivative(F, s, p);
    CHECK(std::abs(h.covector[0].value()) < 1e-9);
    CHECK(std::abs(h.covector[1].value()) < 1e-9);
  }
}

TEST_CASE("projectively flat metric is hamel but not funk") {
  ScalarField K = catalog_field("klein_metric", 2);
  SprayModel flat = SprayModel::minkowski(2);
  auto pts = ball_points(10, 7);
  CHECK(is_hamel(K, flat, pts).verdict);
  HamelCheck f = is_funk(K, flat, pts);
  CHECK_FALSE(f.verdict);
  CHECK(f.max_residual > 1e-3);
}

TEST_CASE("second h-derivative is symmetric on a flat spray") {
  ScalarField Q =
      ScalarField::from_expr(Expr::parse("x1*y1+x2^2*y2+x1*x2*y1", 2), 1, "q");
  auto H = second_h_derivative(Q, SprayModel::minkowski(2),
                               {0.2, -0.3, 1.0, 0.5});
  CHECK(H[0][1].value() == doctest::Approx(H[1][0].value()).epsilon(1e-12));
}

TEST_CASE("second h-derivatives commute up to curvature") {
  SprayModel s = catalog_spray("eehf3", 2);
  ScalarField Q = catalog_field("eehf3_q", 2);
  for (Point p : ball_points(4, 9)) {
    p[0] += 1.0;
    auto H = second_h_derivative(Q, s, p);
    auto R3 = riemann3(s, p);
    Jet qj = Q.jet_at(p, 1);
    double qdot[2] = {qj.deriv(2).value(), qj.deriv(3).value()};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double comm = H[i][j].value() - H[j][i].value();
        double corr = 0;
        for (int r = 0; r < 2; ++r) corr += qdot[r] * R3[r][i][j];
        CHECK(std::abs(comm + corr) < 1e-7);
      }
  }
}

TEST_CASE("projective invariant T picks up the hamel defect") {
  ScalarField Q = ScalarField::from_expr(Expr::parse("x2*y1", 2), 1, "q");
  SprayModel flat = SprayModel::minkowski(2);
  auto T = projective_invariant_T(Q, flat, {0.0, 0.0, 1.0, 0.0});
  CHECK(T[0] == doctest::Approx(0.0));
  CHECK(T[1] == doctest::Approx(-1.0));
  // and vanishes for an actual hamel function
  ScalarField F = catalog_field("ball_funk", 2);
  auto T2 = projective_invariant_T(F, flat, {0.1, 0.2, 0.8, -0.6});
  CHECK(std::abs(T2[0]) < 1e-9);
  CHECK(std::abs(T2[1]) < 1e-9);
}

TEST_CASE("power construction, order 0 and 1") {
  ScalarField P = catalog_field("oneform_funk", 2);
  ConstructInputs in;
  in.P = P;
  in.k = 0;
  ScalarField Q0 = construct_hamel("power", in);
  Point p = {0.5, 0.0, 1.0, 0.0};
  CHECK(Q0.eval(p) == doctest::Approx(P.eval(p)).epsilon(1e-12));

  in.k = 1;
  ScalarField Q1 = construct_hamel("power", in);
  CHECK(Q1.eval(p) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(Q1.expr.has_value());

  SprayModel flat = SprayModel::minkowski(2);
  auto pts = ball_points(8, 11);
  CHECK(is_hamel(Q1, flat, pts).verdict);

  in.k = 2;
  ScalarField Q2 = construct_hamel("power", in);
  CHECK(is_hamel(Q2, flat, pts).verdict);
  in.k = 3;
  CHECK_THROWS_AS(construct_hamel("power", in), UnsupportedOrder);
  in.P.reset();
  in.k = 1;
  CHECK_THROWS_AS(construct_hamel("power", in), KindMismatch);
}

TEST_CASE("symmetrizing the funk function yields the projective metric") {
  ConstructInputs in;
  in.P = catalog_field("ball_funk", 2);
  ScalarField S = construct_hamel("symmetrized", in);
  ScalarField K = catalog_field("klein_metric", 2);
  for (const Point& p : ball_points(6, 13))
    CHECK(S.eval(p) == doctest::Approx(K.eval(p)).epsilon(1e-12));
  CHECK(is_hamel(S, SprayModel::minkowski(2), ball_points(6, 13)).verdict);
}

TEST_CASE("difference construction isolates the odd part") {
  ScalarField F = catalog_field("ball_funk", 2);
  ConstructInputs in;
  in.P = F;
  in.Q2 = F.reversed();
  ScalarField D = construct_hamel("difference", in);
  Expr odd = Expr::parse("dot_xy/(1-dot_xx)", 2);
  for (const Point& p : ball_points(6, 15))
    CHECK(D.eval(p) == doctest::Approx(odd.eval(p)).epsilon(1e-12));
}

TEST_CASE("linear combinations of hamel functions stay hamel") {
  ConstructInputs in;
  in.P = catalog_field("ball_funk", 2);
  in.Q2 = catalog_field("oneform_funk", 2);
  in.a = 2.0;
  in.b = -3.0;
  ScalarField L = construct_hamel("linear_combo", in);
  Point p = {0.1, 0.2, 0.6, -0.8};
  CHECK(L.eval(p) == doctest::Approx(2.0 * in.P->eval(p) -
                                     3.0 * in.Q2->eval(p)).epsilon(1e-12));
  CHECK(is_hamel(L, SprayModel::minkowski(2), ball_points(8, 17)).verdict);
}

TEST_CASE("transport construction produces an adjoint funk function") {
  ScalarField P = catalog_field("oneform_funk", 2);
  ConstructInputs in;
  in.P = P;
  in.psi = Expr::parse("y1+2*y2", 2);
  ScalarField Q = construct_hamel("transport", in);
  CHECK(Q.expr.has_value());
  SprayModel flat = SprayModel::minkowski(2);
  auto pts = ball_points(8, 19);
  CHECK(is_hamel(Q, flat, pts).verdict);
  // Q_{;k} = (P Q)_{.k} relative to the flat spray
  for (const Point& p : pts) {
    HDerivative h = h_derivative(Q, flat, p);
    Jet pq = P.jet_at(p, 1) * Q.jet_at(p, 1);
    CHECK(h.covector[0].value() ==
          doctest::Approx(pq.deriv(2).value()).epsilon(1e-9));
    CHECK(h.covector[1].value() ==
          doctest::Approx(pq.deriv(3).value()).epsilon(1e-9));
  }
}

TEST_CASE("complex pair closes under the coupled funk equations") {
  ScalarField P = catalog_field("complex_funk_p", 2);
  ScalarField Q = catalog_field("complex_funk_q", 2);
  SprayModel flat = SprayModel::minkowski(2);
  auto pts = ball_points(8, 21);
  PairCheck pc = check_complex_funk_pair(P, Q, flat, pts);
  CHECK(pc.pass);
  CHECK(pc.residual_first < 1e-8);
  CHECK(pc.residual_second < 1e-8);
  // swapping in an unrelated field breaks the coupling
  PairCheck bad = check_complex_funk_pair(P, catalog_field("ball_funk", 2),
                                          flat, pts);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("reversibility residual vanishes for hamel functions") {
  ScalarField F = catalog_field("ball_funk", 2);
  for (const Point& p : ball_points(4, 23)) {
    for (double r : reversibility_residual(F, SprayModel::minkowski(2), p))
      CHECK(std::abs(r) < 1e-8);
    for (double r :
         reversibility_residual(catalog_field("funk_metric", 2),
                                catalog_spray("funk_spray", 2), p))
      CHECK(std::abs(r) < 1e-8);
  }
}

TEST_CASE("hamel checks reject degree mismatches") {
  ScalarField bad =
      ScalarField::from_expr(Expr::parse("dot_yy", 2), 2, "bad");
  CHECK_THROWS_AS(
      is_hamel(bad, SprayModel::minkowski(2), ball_points(1, 25)),
      DegreeMismatch);
}
