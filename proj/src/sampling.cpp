#include "spraylab/sampling.hpp"

#include <cmath>

namespace spraylab {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double halton(unsigned index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

}  // namespace

std::vector<Point> sample_points(const SampleSpec& spec) {
  const int n = spec.n;
  if (2 * n > static_cast<int>(std::size(kPrimes)))
    throw EmptyDomain("dimension too large for the sampler");
  const double half = 0.9 * spec.x_box;  // 10% shrink
  std::vector<Point> out;
  unsigned idx = spec.seed * 1000u + 1u;
  int rejected = 0;
  while (static_cast<int>(out.size()) < spec.count * (spec.sphere_scaled ? 3 : 1)) {
    if (rejected > 10000 * spec.count)
      throw EmptyDomain("sampler could not find interior points");
    Point p(2 * n, 0.0);
    for (int i = 0; i < n; ++i)
      p[i] = half * (2.0 * halton(idx, kPrimes[i]) - 1.0);
    // y on the unit sphere via normalized offsets from the box
    double norm = 0;
    for (int i = 0; i < n; ++i) {
      p[n + i] = 2.0 * halton(idx, kPrimes[n + i]) - 1.0 + 1e-3;
      norm += p[n + i] * p[n + i];
    }
    ++idx;
    norm = std::sqrt(norm);
    if (norm < 1e-6) {
      ++rejected;
      continue;
    }
    for (int i = 0; i < n; ++i) p[n + i] /= norm;
    if (!in_domain(spec.domain, p, 0.1)) {
      ++rejected;
      continue;
    }
    out.push_back(p);
    if (spec.sphere_scaled) {
      for (double lam : {0.5, 2.0}) {
        Point q = p;
        for (int i = 0; i < n; ++i) q[n + i] *= lam;
        out.push_back(q);
      }
    }
  }
  return out;
}

}  // namespace spraylab
