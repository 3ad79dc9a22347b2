#ifndef SPRAYLAB_SWEEP_HPP
#define SPRAYLAB_SWEEP_HPP

#include <functional>
#include <vector>

#include "spraylab/model.hpp"

namespace spraylab {

// Evaluates fn(i) for i in [0, count) and returns the results in index
// order. The parallel version distributes points across OpenMP threads;
// the serial version is the reference used in tests and the benchmark.
template <class R>
std::vector<R> sweep_serial(int count, const std::function<R(int)>& fn) {
  std::vector<R> out(count);
  for (int i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

template <class R>
std::vector<R> sweep_parallel(int count, const std::function<R(int)>& fn) {
  std::vector<R> out(count);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

}  // namespace spraylab

#endif  // SPRAYLAB_SWEEP_HPP
