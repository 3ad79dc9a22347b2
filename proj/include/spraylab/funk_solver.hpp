#ifndef SPRAYLAB_FUNK_SOLVER_HPP
#define SPRAYLAB_FUNK_SOLVER_HPP

#include "spraylab/model.hpp"

namespace spraylab {

struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};
struct OutsideNeighborhood : std::runtime_error {
  explicit OutsideNeighborhood(const std::string& what)
      : std::runtime_error(what) {}
};

struct SolveOptions {
  double tol = 1e-12;     // residual |P - phi(y + P x)|
  int max_iter = 200;
  double radius = 0.5;    // contraction neighborhood |x| < radius
};

// One solve of P = phi(y + P x) for a degree-1 seed phi(y).
struct FunkSolve {
  std::vector<double> x, y;
  double P = 0;
  int iterations = 0;
  double residual = 0;
};

FunkSolve solve_funk(const Expr& phi, const std::vector<double>& x,
                     const std::vector<double>& y,
                     const SolveOptions& opts = {});

// Finite-difference residuals of the solved P over interior grid points:
// the flat-spray Funk equation P_{x^k} = P P_{y^k} and the first-order
// instance P_{x^i} = (1/2)(P^2)_{y^i}.
struct PdeResiduals {
  double funk_pde = 0;
  double square_identity = 0;
};
PdeResiduals verify_funk_pde(const Expr& phi,
                             const std::vector<std::vector<double>>& xs,
                             const std::vector<std::vector<double>>& ys,
                             const SolveOptions& opts = {}, double h = 1e-5);

// max over points of ||R^i_{jk}||_inf: the obstruction to local existence
// of Funk functions; zero exactly on R-flat sprays.
double flat_funk_integrability(const SprayModel& s,
                               const std::vector<Point>& points,
                               int order = 4);

}  // namespace spraylab

#endif  // SPRAYLAB_FUNK_SOLVER_HPP
