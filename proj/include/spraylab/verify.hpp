#ifndef SPRAYLAB_VERIFY_HPP
#define SPRAYLAB_VERIFY_HPP

#include "spraylab/report.hpp"

namespace spraylab {

struct VerifyOptions {
  bool full = false;    // 200 sample points per claim instead of 20
  unsigned seed = 1;
  int order = 4;
};

// Runs the built-in claim suite: every closed-form construction and
// classification shipped in the catalog, checked as numerical residuals.
// One record per (claim, headline residual).
Report verify_paper(const VerifyOptions& opts = {});

}  // namespace spraylab

#endif  // SPRAYLAB_VERIFY_HPP
