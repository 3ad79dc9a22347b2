#ifndef SPRAYLAB_SAMPLING_HPP
#define SPRAYLAB_SAMPLING_HPP

#include "spraylab/model.hpp"

namespace spraylab {

struct EmptyDomain : std::runtime_error {
  explicit EmptyDomain(const std::string& what) : std::runtime_error(what) {}
};

struct SampleSpec {
  int n = 2;
  unsigned seed = 0;
  int count = 20;
  double x_box = 0.3;             // |x_i| <= x_box, shrunk 10% at the edge
  bool sphere_scaled = true;      // emit lambda*y companions, lambda in {0.5, 2}
  std::vector<Expr> domain;       // rejection constraints (10% margin)
};

// Deterministic low-discrepancy points (x, y): x in the shrunk box subject
// to the domain constraints, y on the unit sphere. With sphere_scaled each
// base point is followed by its 0.5*y and 2*y companions.
std::vector<Point> sample_points(const SampleSpec& spec);

}  // namespace spraylab

#endif  // SPRAYLAB_SAMPLING_HPP
