#include "spraylab/funk_solver.hpp"

#include <algorithm>
#include <cmath>

#include "spraylab/curvature.hpp"

namespace spraylab {

namespace {

double eval_phi(const Expr& phi, const std::vector<double>& x,
                const std::vector<double>& y, double P) {
  const int n = static_cast<int>(x.size());
  std::vector<double> pt(2 * n, 0.0);
  for (int i = 0; i < n; ++i) {
    pt[i] = x[i];
    pt[n + i] = y[i] + P * x[i];
  }
  return phi.eval(pt);
}

}  // namespace

FunkSolve solve_funk(const Expr& phi, const std::vector<double>& x,
                     const std::vector<double>& y, const SolveOptions& opts) {
  double xnorm = 0, ynorm = 0;
  for (double v : x) xnorm += v * v;
  for (double v : y) ynorm += v * v;
  if (std::sqrt(xnorm) >= opts.radius)
    throw OutsideNeighborhood("|x| = " + std::to_string(std::sqrt(xnorm)) +
                              " outside contraction radius " +
                              std::to_string(opts.radius));
  if (ynorm == 0) throw OutsideNeighborhood("y must be nonzero");

  FunkSolve out;
  out.x = x;
  out.y = y;
  double P = eval_phi(phi, x, y, 0.0);  // P0 = phi(y)
  double res = P - eval_phi(phi, x, y, P);
  double prevP = 0.0;
  double prev_res = -P;  // residual of the trivial guess P = 0
  int it = 0;
  bool secant = false;
  for (; it < opts.max_iter && std::abs(res) >= opts.tol; ++it) {
    double next;
    if (!secant) {
      next = eval_phi(phi, x, y, P);
      double next_res = next - eval_phi(phi, x, y, next);
      // fixed point stalls once the residual stops contracting
      if (std::abs(next_res) > 0.5 * std::abs(res)) secant = true;
    } else {
      double denom = res - prev_res;
      if (denom == 0) break;
      double step = res * (P - prevP) / denom;
      next = P - (std::abs(step) > 1.0 ? 0.5 * step : step);  // damped
    }
    prevP = P;
    prev_res = res;
    P = next;
    res = P - eval_phi(phi, x, y, P);
  }
  if (std::abs(res) >= opts.tol)
    throw NoConvergence("residual " + std::to_string(std::abs(res)) +
                        " after " + std::to_string(it) + " iterations");
  out.P = P;
  out.iterations = it;
  out.residual = std::abs(res);
  return out;
}

PdeResiduals verify_funk_pde(const Expr& phi,
                             const std::vector<std::vector<double>>& xs,
                             const std::vector<std::vector<double>>& ys,
                             const SolveOptions& opts, double h) {
  PdeResiduals out;
  auto solve = [&](const std::vector<double>& x,
                   const std::vector<double>& y) {
    return solve_funk(phi, x, y, opts).P;
  };
  for (const auto& x : xs)
    for (const auto& y : ys) {
      const int n = static_cast<int>(x.size());
      double P = solve(x, y);
      for (int k = 0; k < n; ++k) {
        double hx = h * std::max(1.0, std::abs(x[k]));
        double hy = h * std::max(1.0, std::abs(y[k]));
        std::vector<double> xp = x, xm = x, yp = y, ym = y;
        xp[k] += hx;
        xm[k] -= hx;
        yp[k] += hy;
        ym[k] -= hy;
        double Px = (solve(xp, y) - solve(xm, y)) / (2 * hx);
        double Pyp = solve(x, yp), Pym = solve(x, ym);
        double Py = (Pyp - Pym) / (2 * hy);
        double P2y = (Pyp * Pyp - Pym * Pym) / (2 * hy);
        out.funk_pde = std::max(out.funk_pde, std::abs(Px - P * Py));
        out.square_identity =
            std::max(out.square_identity, std::abs(Px - 0.5 * P2y));
      }
    }
  return out;
}

double flat_funk_integrability(const SprayModel& s,
                               const std::vector<Point>& points, int order) {
  double worst = 0;
  for (const Point& p : points) {
    auto R3 = riemann3(s, p, order);
    for (const auto& a : R3)
      for (const auto& b : a)
        for (double v : b) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace spraylab
