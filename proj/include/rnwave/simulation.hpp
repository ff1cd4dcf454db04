#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rnwave/config.hpp"

namespace rnwave {

struct SupSeries {
  std::vector<double> v, sup_psi, sup_Tpsi, sup_Ypsi;
};

struct BulkSlabs {
  std::vector<double> taus;  // slab k spans (taus[k-1], taus[k]]
  std::vector<double> morawetz, a2, a3;
};

struct RunResult {
  RunConfig config;
  GridSpec grid;
  EvolutionOutput evolution;
  HorizonSeries horizon;
  std::vector<SliceDiagnostics> slices;  // complete probe slices, ascending tau
  BulkSlabs bulk;
  SupSeries sups;
  std::vector<double> point_values;  // NaN where the run stopped first
  double E0 = 0.0;       // N-flux of the initial slice divided by epsilon^2
  double e0_eps2 = 0.0;  // N-flux of the initial slice
  std::optional<BlowupReport> blowup;

  const SliceDiagnostics* slice_at(double tau) const;
  BootstrapNorms bootstrap(double tau0, double tau1, double tau2) const;
};

struct SimulateOptions {
  bool bulk = true;
  bool sups = true;
};

RunResult simulate(const RunConfig& c, const SimulateOptions& opt = {});

/// horizon.csv, slices.csv, bulk.csv, grid_sup.csv, run_meta.json, config.ini.
void write_artifacts(const RunResult& r, const std::string& dir);

class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of write_artifacts; validates that tau/v columns increase strictly.
RunResult load_artifacts(const std::string& dir);

}  // namespace rnwave
