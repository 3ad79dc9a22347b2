// Compares the serial and OpenMP point sweeps on a representative workload:
// full curvature classification of the Funk spray at many sample points.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>

#include "spraylab/catalog.hpp"
#include "spraylab/curvature.hpp"
#include "spraylab/sampling.hpp"
#include "spraylab/sweep.hpp"

using namespace spraylab;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int count = argc > 1 ? std::atoi(argv[1]) : 2000;
  SprayModel s = catalog_spray("funk_spray", 2);

  SampleSpec spec;
  spec.n = 2;
  spec.seed = 7;
  spec.count = count;
  spec.sphere_scaled = false;
  spec.domain = s.domain;
  std::vector<Point> pts = sample_points(spec);

  std::function<double(int)> work = [&](int i) {
    return riemann(s, pts[i], {4, 1e-8}).residual_scalar;
  };

  // warm the jet multiplication tables before timing
  (void)work(0);

  std::vector<double> serial, parallel;
  double t_serial = time_ms(
      [&] { serial = sweep_serial(static_cast<int>(pts.size()), work); });
  double t_parallel = time_ms(
      [&] { parallel = sweep_parallel(static_cast<int>(pts.size()), work); });

  double max_diff = 0;
  for (std::size_t i = 0; i < serial.size(); ++i)
    max_diff = std::max(max_diff, std::abs(serial[i] - parallel[i]));

  std::cout << "points:   " << pts.size() << "\n"
            << "serial:   " << t_serial << " ms\n"
            << "parallel: " << t_parallel << " ms\n"
            << "speedup:  " << t_serial / t_parallel << "x\n"
            << "max result difference: " << max_diff << "\n";
  return max_diff == 0.0 ? 0 : 1;
}
