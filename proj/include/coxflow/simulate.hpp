#ifndef COXFLOW_SIMULATE_HPP_
#define COXFLOW_SIMULATE_HPP_

#include <cstdint>
#include <string>

#include "coxflow/model.hpp"
#include "coxflow/paths.hpp"
#include "coxflow/rng.hpp"

namespace coxflow {

struct SimConfig {
  std::uint64_t seed = 0;
  int n = 1;
  int grid_steps = 16;                    // m
  std::string covariate_kind = "logistic-OU";
  std::string scenario = "affine-1d";
  double p_plus = 0.5;
  int u = 20;
  double horizon = 1.0;
  int dim = 1;
  int threads = 1;

  void validate() const;
};

// Piecewise-constant covariate path on an even m-step grid.
// "constant-half": Z == 0.5 in every coordinate.
// "logistic-OU": per coordinate a discretized mean-reverting Gaussian
// process mapped into (0,1) by the logistic function.
CovariatePath simulate_covariate(const std::string& kind, int dim,
                                 double horizon, int grid_steps,
                                 RngStream& rng);

// Lewis-Shedler thinning with constant majorant dmax; stops after u
// accepted jumps. Throws if lambda(t, z_t) exceeds dmax.
CountingPath simulate_cox(const IntensityFn& lambda, const CovariatePath& z,
                          double dmax, double horizon, int u, RngStream& rng);

// Draw n labeled stopped pairs; sample i uses RNG streams derived from
// (config.seed, i) so the output is independent of scheduling.
Dataset simulate_dataset(const IntensityModel& model, const SimConfig& config);

// Log density of the unit-rate stopped Poisson law w.r.t. the stopped
// Poisson(lambda(.,z_.)) law along the given path:
//   -int_0^{T ^ tau} (1 - lambda(s,z_s)) ds - sum_{jumps} ln lambda(t_i, z_{t_i}).
// exp of this converts expectations under Poisson(lambda) into
// expectations under the unit-rate law.
double girsanov_log_weight(const IntensityFn& lambda, const CountingPath& x,
                           const CovariatePath& z);

}  // namespace coxflow

#endif  // COXFLOW_SIMULATE_HPP_
