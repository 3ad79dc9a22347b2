#include "spraylab/geodesic.hpp"

#include <cmath>

namespace spraylab {

namespace {

// Solve the n x n jet-valued system A Z = b by Gaussian elimination with
// partial pivoting on the degree-0 coefficients.
std::vector<Jet> jet_solve(std::vector<std::vector<Jet>> A, std::vector<Jet> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col].value()) > std::abs(A[pivot][col].value()))
        pivot = r;
    if (std::abs(A[pivot][col].value()) < kSingularFloor)
      throw DegenerateMetric("fundamental tensor pivot below singular floor");
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet factor = A[r][col] / A[col][col];
      for (int c = col; c < n; ++c) A[r][c] = A[r][c] - factor * A[col][c];
      b[r] = b[r] - factor * b[col];
    }
  }
  std::vector<Jet> z;
  z.reserve(n);
  for (int i = 0; i < n; ++i) z.push_back(b[i] / A[i][i]);
  return z;
}

std::vector<Jet> spray_from_metric_jets(const Expr& F, const JetVars& vars,
                                        int n) {
  Jet Fj = F.eval_jet(vars);
  Jet L = Fj * Fj;
  std::vector<std::vector<Jet>> g(n, std::vector<Jet>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      g[i][j] = 0.5 * L.deriv(n + i).deriv(n + j);
      if (j != i) g[j][i] = g[i][j];
    }
  std::vector<Jet> rhs;
  rhs.reserve(n);
  for (int l = 0; l < n; ++l) {
    Jet acc = vars[n] * L.deriv(0).deriv(n + l);  // y^k L_{x^k y^l}
    for (int k = 1; k < n; ++k) acc += vars[n + k] * L.deriv(k).deriv(n + l);
    rhs.push_back(0.25 * (acc - L.deriv(l)));
  }
  return jet_solve(std::move(g), std::move(rhs));
}

}  // namespace

std::vector<Jet> geodesic_spray(const FinslerModel& m, const Point& p,
                                int order) {
  JetVars vars = lift(p, order + 2);
  auto G = spray_from_metric_jets(m.F, vars, m.n);
  for (Jet& j : G) j = j.truncated(order);
  return G;
}

SprayModel geodesic_spray_model(const FinslerModel& m) {
  SprayModel s;
  s.n = m.n;
  s.label = "spray(" + m.label + ")";
  s.extra_order = 2;
  s.domain = m.domain;
  Expr F = m.F;
  int n = m.n;
  for (int i = 0; i < n; ++i)
    s.G.push_back([F, n, i](const JetVars& vars) {
      return spray_from_metric_jets(F, vars, n)[i];
    });
  return s;
}

Trajectory integrate_geodesic(const SprayModel& s, const Point& x0,
                              const Point& y0, double t_max, int steps) {
  if (steps < 1) throw StepUnderflow("integrate_geodesic: steps < 1");
  const int n = s.n;
  Trajectory traj;
  Point state(2 * n);
  for (int i = 0; i < n; ++i) {
    state[i] = x0[i];
    state[n + i] = y0[i];
  }
  auto rhs = [&](const Point& st) {
    Point d(2 * n);
    auto g = s.values(st);
    for (int i = 0; i < n; ++i) {
      d[i] = st[n + i];
      d[n + i] = -2.0 * g[i];
    }
    return d;
  };
  auto axpy = [&](const Point& st, double h, const Point& d) {
    Point out(2 * n);
    for (int i = 0; i < 2 * n; ++i) out[i] = st[i] + h * d[i];
    return out;
  };

  const double h = t_max / steps;
  traj.t.push_back(0.0);
  traj.state.push_back(state);
  for (int k = 0; k < steps; ++k) {
    if (!in_domain(s.domain, state)) {
      traj.domain_exit = true;
      break;
    }
    Point k1, k2, k3, k4;
    try {
      k1 = rhs(state);
      k2 = rhs(axpy(state, h / 2, k1));
      k3 = rhs(axpy(state, h / 2, k2));
      k4 = rhs(axpy(state, h, k3));
    } catch (const SingularJet&) {
      // an RK substage crossed the domain boundary
      traj.domain_exit = true;
      break;
    }
    for (int i = 0; i < 2 * n; ++i)
      state[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    traj.t.push_back(h * (k + 1));
    traj.state.push_back(state);
  }
  return traj;
}

}  // namespace spraylab
