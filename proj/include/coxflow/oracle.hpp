#ifndef COXFLOW_ORACLE_HPP_
#define COXFLOW_ORACLE_HPP_

#include <functional>

#include "coxflow/erm.hpp"
#include "coxflow/model.hpp"
#include "coxflow/paths.hpp"

namespace coxflow {

struct RiskEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_eval = 0;
};

// Log posterior-odds statistic:
//   xi = int_0^{T^tau} (lambda_- - lambda_+)(s,Z_s) ds
//        + sum_{jumps} ln(lambda_+/lambda_-)(t_i, Z_{t_i}).
double xi(const CountingPath& x, const CovariatePath& z,
          const IntensityModel& model, int quad_nodes = 16);

struct Posterior {
  double eta_plus = 0.0;   // P(Y=+1 | paths)
  double eta_minus = 0.0;  // 1 - eta_plus, exactly
};

Posterior posterior(const CountingPath& x, const CovariatePath& z,
                    const IntensityModel& model);

// Bayes rule sign(xi - ln(p_-/p_+)), with sign(0) = -1.
int bayes_classify(const CountingPath& x, const CovariatePath& z,
                   const IntensityModel& model);

using Classifier = std::function<int(const CountingPath&, const CovariatePath&)>;

// Misclassification frequency of a classifier on a simulated set, with
// binomial standard error.
RiskEstimate mc_risk(const Classifier& g, const Dataset& eval_set);

// L* estimated as the mean of min(eta, 1-eta) over the eval paths.
RiskEstimate mc_bayes_risk(const IntensityModel& model,
                           const Dataset& eval_set);

// Monte-Carlo estimate of the population logit risk A(f) for a fitted
// coefficient vector, or for f* = xi - ln(p_-/p_+) when coef is null.
double mc_phi_risk(const Coefficients& coef, const Dictionary& dict,
                   const Dataset& eval_set, int quad_nodes = 16);
double mc_phi_risk_star(const IntensityModel& model, const Dataset& eval_set,
                        int quad_nodes = 16);

// Classifier induced by a fitted f: sign(f), sign(0) = -1.
Classifier classifier_from(const Coefficients& coef, const Dictionary& dict,
                           int quad_nodes = 16);

}  // namespace coxflow

#endif  // COXFLOW_ORACLE_HPP_
