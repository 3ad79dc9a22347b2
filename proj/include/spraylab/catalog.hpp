#ifndef SPRAYLAB_CATALOG_HPP
#define SPRAYLAB_CATALOG_HPP

#include <string>
#include <vector>

#include "spraylab/model.hpp"

namespace spraylab {

struct UnknownCatalogId : std::runtime_error {
  explicit UnknownCatalogId(const std::string& id)
      : std::runtime_error("unknown catalog id: " + id) {}
};
struct MissingParam : std::runtime_error {
  explicit MissingParam(const std::string& p)
      : std::runtime_error("missing catalog parameter: " + p) {}
};

enum class ModelKind { Spray, Metric, Field };

struct CatalogEntry {
  std::string id;
  ModelKind kind;
  std::string summary;
  std::string params;  // documented parameter list, free text
};

const std::vector<CatalogEntry>& catalog_entries();

SprayModel catalog_spray(const std::string& id, int n, const Params& params = {});
FinslerModel catalog_metric(const std::string& id, int n, const Params& params = {});
// Accepts field ids and metric ids (returning the degree-1 field view).
ScalarField catalog_field(const std::string& id, int n, const Params& params = {});

// Spray with coefficients tau_0 y^i for a scalar tau(x).
SprayModel spray_from_tau(const Expr& tau, std::string label,
                          std::vector<Expr> domain = {});
// Spray with coefficients (sigma_00 / (2 sigma_0)) y^i for a scalar sigma(x).
SprayModel sigma_pm_spray(const Expr& sigma, std::string label,
                          std::vector<Expr> domain = {});

// Mutation hooks for sensitivity testing: scale a named internal constant.
// Affects subsequently constructed catalog models; not thread-safe setup.
void catalog_set_mutation(const std::string& constant, double factor);
void catalog_clear_mutations();
// Names accepted by catalog_set_mutation.
std::vector<std::string> catalog_mutable_constants();

}  // namespace spraylab

#endif  // SPRAYLAB_CATALOG_HPP
