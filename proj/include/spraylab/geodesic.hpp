#ifndef SPRAYLAB_GEODESIC_HPP
#define SPRAYLAB_GEODESIC_HPP

#include "spraylab/model.hpp"

namespace spraylab {

struct DegenerateMetric : std::runtime_error {
  explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};
struct StepUnderflow : std::runtime_error {
  explicit StepUnderflow(const std::string& what) : std::runtime_error(what) {}
};

// Spray coefficients induced by a Finsler metric, as jets of order `order`
// at p: solves g_il Z^l = (1/4)(y^k L_{x^k y^l} - L_{x^l}) in the jet ring.
// Two jet orders are consumed by the fundamental tensor.
std::vector<Jet> geodesic_spray(const FinslerModel& m, const Point& p,
                                int order);

// The same construction wrapped as a SprayModel (extra_order = 2).
SprayModel geodesic_spray_model(const FinslerModel& m);

struct Trajectory {
  std::vector<double> t;
  std::vector<Point> state;  // (x, xdot), 2n each
  bool domain_exit = false;
};

// Classical fixed-step RK4 on xddot = -2 G(x, xdot). Stops early (flagged)
// once the state leaves the spray's domain.
Trajectory integrate_geodesic(const SprayModel& s, const Point& x0,
                              const Point& y0, double t_max, int steps);

}  // namespace spraylab

#endif  // SPRAYLAB_GEODESIC_HPP
