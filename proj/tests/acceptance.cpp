// Acceptance gate: runs the built-in claim suite once and maps its records
// onto the fifteen shipping criteria, printing one PASS/FAIL line each.
#include <cstdio>
#include <string>
#include <vector>

#include "spraylab/catalog.hpp"
#include "spraylab/verify.hpp"

using namespace spraylab;

namespace {

bool prefixes_pass(const Report& rep, const std::vector<std::string>& prefixes) {
  int matched = 0;
  for (const CheckRecord& r : rep.records)
    for (const std::string& p : prefixes)
      if (r.check.rfind(p, 0) == 0) {
        ++matched;
        if (!r.verdict && !r.skipped) return false;
        break;
      }
  return matched > 0;
}

}  // namespace

int main() {
  Report rep = verify_paper({});

  struct Criterion {
    const char* what;
    std::vector<std::string> prefixes;
  };
  const Criterion criteria[] = {
      {"funk-equation closed forms", {"funk_pde_"}},
      {"funk => hamel => weak-funk implications", {"funk_implication_chain_"}},
      {"one-parameter family dichotomy",
       {"cf_isotropic", "cf_constancy", "cf_derivative_identity"}},
      {"projective metric closure",
       {"klein_spray_agreement", "klein_curvature_identity"}},
      {"curvature transform oracle", {"curvature_transform_oracle"}},
      {"projective invariance of the hamel defect",
       {"hamel_projective_invariance"}},
      {"funk-function obstruction closed forms", {"funk_obstruction_"}},
      {"lambda extraction", {"lambda_eehf1", "lambda_eehf3", "lambda_mu"}},
      {"isotropic curvature form residual", {"lambda_form_"}},
      {"weak-funk blow-up along geodesics", {"weak_funk_blowup"}},
      {"solver accuracy and pde grid",
       {"solver_fixed_point", "solver_closed_form_agreement",
        "solver_pde_grid"}},
      {"integrability obstruction", {"integrability_"}},
      {"zero-curvature metrizability test", {"sigma_"}},
      {"non-uniqueness vs uniqueness of adjoint systems",
       {"hfs002_pm_system", "mu_uniqueness_ratio"}},
  };

  int failures = 0;
  int idx = 1;
  for (const Criterion& c : criteria) {
    bool ok = prefixes_pass(rep, c.prefixes);
    std::printf("criterion %2d: %-4s %s\n", idx++, ok ? "PASS" : "FAIL",
                c.what);
    if (!ok) ++failures;
  }

  // criterion 15: a 10% perturbation of any designated constant must fail
  bool mutation_ok = true;
  for (const std::string& name : catalog_mutable_constants()) {
    catalog_set_mutation(name, 1.1);
    Report mutated = verify_paper({});
    catalog_clear_mutations();
    if (mutated.fail_count() == 0) {
      std::fprintf(stderr, "mutation of %s went undetected\n", name.c_str());
      mutation_ok = false;
    }
  }
  std::printf("criterion 15: %-4s mutation sensitivity\n",
              mutation_ok ? "PASS" : "FAIL");
  if (!mutation_ok) ++failures;

  std::printf("%d/15 criteria passed (%d claim records, %d failing)\n",
              15 - failures, (int)rep.records.size(), rep.fail_count());
  return failures == 0 ? 0 : 1;
}
