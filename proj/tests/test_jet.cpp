#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spraylab/jet.hpp"

using namespace spraylab;

namespace {

int binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(std::lround(r));
}

// Random polynomial jet: fills every Taylor slot of a variable-derived jet.
Jet random_poly_jet(const std::vector<Jet>& vars, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet out = vars[0].constant_like(u(rng));
  for (std::size_t i = 0; i < vars.size(); ++i) {
    out = out + u(rng) * vars[i];
    for (std::size_t j = i; j < vars.size(); ++j)
      out = out + u(rng) * vars[i] * vars[j];
  }
  return out;
}

}  // namespace

TEST_CASE("variable jets have unit first-order coefficient") {
  double p[] = {2.0, 3.0};
  auto vars = Jet::lift(p, 2);
  CHECK(vars[0].value() == doctest::Approx(2.0));
  int unit[] = {1, 0};
  CHECK(vars[0].coeff(unit) == doctest::Approx(1.0));
  int other[] = {0, 1};
  CHECK(vars[0].coeff(other) == doctest::Approx(0.0));
}

TEST_CASE("dense slot count matches C(2n+d, d)") {
  double p[] = {0.0, 0.0, 1.0, 0.0};
  auto vars = Jet::lift(p, 4);
  CHECK(static_cast<int>(vars.size()) == 4);
  for (const auto& v : vars)
    CHECK(static_cast<int>(v.coeffs().size()) == binom(8, 4));
}

TEST_CASE("bilinear product x1*y1 at (2,0,3,0)") {
  double p[] = {2.0, 0.0, 3.0, 0.0};
  auto vars = Jet::lift(p, 2);
  Jet f = vars[0] * vars[2];
  CHECK(f.value() == doctest::Approx(6.0));
  int mixed[] = {1, 0, 1, 0};
  CHECK(f.partial(mixed) == doctest::Approx(1.0));
}

TEST_CASE("sqrt of a constant jet") {
  Jet c = Jet::constant(4.0, 2, 2);
  Jet r = sqrt(c);
  CHECK(r.value() == doctest::Approx(2.0));
  for (std::size_t k = 1; k < r.coeffs().size(); ++k)
    CHECK(r.coeffs()[k] == doctest::Approx(0.0));
}

TEST_CASE("geometric series 1/(1-t) at t=0") {
  double p[] = {0.0};
  auto vars = Jet::lift(p, 2);
  Jet f = 1.0 / (1.0 - vars[0]);
  CHECK(f.coeffs()[0] == doctest::Approx(1.0));
  int a1[] = {1};
  int a2[] = {2};
  CHECK(f.coeff(a1) == doctest::Approx(1.0));
  CHECK(f.coeff(a2) == doctest::Approx(1.0));
  CHECK(f.partial(a2) == doctest::Approx(2.0));
}

TEST_CASE("atan Maclaurin coefficients") {
  double p[] = {0.0};
  auto vars = Jet::lift(p, 3);
  Jet f = atan(vars[0]);
  int a0[] = {0};
  int a1[] = {1};
  int a2[] = {2};
  int a3[] = {3};
  CHECK(f.coeff(a0) == doctest::Approx(0.0));
  CHECK(f.coeff(a1) == doctest::Approx(1.0));
  CHECK(f.coeff(a2) == doctest::Approx(0.0));
  CHECK(f.coeff(a3) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("partials of constants and squares") {
  Jet c = Jet::constant(7.0, 2, 2);
  int a[] = {1, 1};
  CHECK(c.partial(a) == doctest::Approx(0.0));

  double p[] = {0.5, 3.0};  // n=1: (x1, y1)
  auto vars = Jet::lift(p, 2);
  Jet f = vars[1] * vars[1];
  int ayy[] = {0, 2};
  CHECK(f.partial(ayy) == doctest::Approx(2.0));
}

TEST_CASE("|y|^2 partial against finite differences") {
  double p[] = {0.3, -0.2, 1.0, 2.0};  // n=2
  auto vars = Jet::lift(p, 2);
  Jet f = vars[2] * vars[2] + vars[3] * vars[3];
  int a[] = {0, 0, 0, 1};
  CHECK(f.partial(a) == doctest::Approx(4.0));

  const double h = 1e-6;
  auto g = [&](double dy2) {
    double y2 = p[3] + dy2;
    return p[2] * p[2] + y2 * y2;
  };
  double fd = (g(h) - g(-h)) / (2 * h);
  CHECK(f.partial(a) == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("OrderExceeded on deep multi-index") {
  Jet c = Jet::constant(1.0, 2, 2);
  int a[] = {2, 1};
  CHECK_THROWS_AS(c.partial(a), OrderExceeded);
}

TEST_CASE("SingularJet near branch points") {
  Jet z = Jet::constant(0.0, 2, 2);
  CHECK_THROWS_AS(1.0 / z, SingularJet);
  CHECK_THROWS_AS(sqrt(z), SingularJet);
  CHECK_THROWS_AS(log(z), SingularJet);
}

TEST_CASE("product rule: Leibniz convolution on random polynomial jets") {
  std::mt19937 rng(20240817);
  double p[] = {0.4, -0.3, 0.9, 1.1};
  auto vars = Jet::lift(p, 3);
  auto table = JetTable::get(4, 3);
  for (int rep = 0; rep < 20; ++rep) {
    Jet a = random_poly_jet(vars, rng);
    Jet b = random_poly_jet(vars, rng);
    Jet ab = a * b;
    // coeff form of Leibniz: (ab)[alpha] = sum_{beta<=alpha} a[beta] b[alpha-beta]
    for (int k = 0; k < table->size(); ++k) {
      auto alpha = table->index(k);
      double conv = 0;
      for (int i = 0; i < table->size(); ++i) {
        auto beta = table->index(i);
        std::vector<int> gamma(4);
        bool ok = true;
        for (int v = 0; v < 4; ++v) {
          gamma[v] = alpha[v] - beta[v];
          ok = ok && gamma[v] >= 0;
        }
        if (!ok) continue;
        conv += a.coeffs()[i] * b.coeffs()[table->position(gamma)];
      }
      CHECK(ab.coeffs()[k] == doctest::Approx(conv).epsilon(1e-12));
    }
  }
}

TEST_CASE("transcendental compositions match closed forms") {
  double p[] = {0.3, 0.7};
  auto vars = Jet::lift(p, 4);
  Jet x = vars[0], y = vars[1];

  Jet lhs = exp(log(1.0 + x * x));
  Jet rhs = 1.0 + x * x;
  for (std::size_t k = 0; k < lhs.coeffs().size(); ++k)
    CHECK(lhs.coeffs()[k] == doctest::Approx(rhs.coeffs()[k]).epsilon(1e-12));

  Jet s2c2 = sin(y) * sin(y) + cos(y) * cos(y);
  CHECK(s2c2.value() == doctest::Approx(1.0));
  for (std::size_t k = 1; k < s2c2.coeffs().size(); ++k)
    CHECK(s2c2.coeffs()[k] == doctest::Approx(0.0).epsilon(1e-12));

  Jet sq = sqrt(x * x + y * y);
  Jet back = sq * sq - (x * x + y * y);
  for (double c : back.coeffs()) CHECK(c == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("derivative jets shift coefficients") {
  double p[] = {0.5, 2.0};
  auto vars = Jet::lift(p, 3);
  Jet f = vars[0] * vars[0] * vars[1];  // x^2 y
  Jet fx = f.deriv(0);                  // 2xy
  CHECK(fx.value() == doctest::Approx(2 * 0.5 * 2.0));
  int a[] = {1, 0};
  CHECK(fx.partial(a) == doctest::Approx(2 * 2.0));
  Jet fxy = fx.deriv(1);  // 2x
  CHECK(fxy.value() == doctest::Approx(1.0));
}

TEST_CASE("pow_int handles negative exponents") {
  double p[] = {2.0};
  auto vars = Jet::lift(p, 3);
  Jet f = pow_int(vars[0], -2);
  CHECK(f.value() == doctest::Approx(0.25));
  int a1[] = {1};
  CHECK(f.partial(a1) == doctest::Approx(-2.0 / 8.0));
}
