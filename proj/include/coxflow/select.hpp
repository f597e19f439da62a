#ifndef COXFLOW_SELECT_HPP_
#define COXFLOW_SELECT_HPP_

#include <string>
#include <vector>

#include "coxflow/erm.hpp"
#include "coxflow/features.hpp"

namespace coxflow {

struct SelectionPlan {
  double alpha = 1.0;
  int k_max = 8;
  double delta = -1.0;      // < 0 means use the default 2 ln n
  double c_pen = 1.0;
  std::string selector = "penalized";  // or "holdout"
  double holdout_fraction = 0.25;
  FitOptions fit;
  int quad_nodes = 16;
  int threads = 1;
};

struct SelectionRow {
  int k = 0;
  int B = 0;
  double risk = 0.0;      // A_n(fhat_k); holdout risk in holdout mode
  double pen = 0.0;
  double score = 0.0;
  bool chosen = false;
};

struct SelectionReport {
  std::vector<SelectionRow> trace;
  int k_hat = 1;
  Coefficients final;
};

// B_k = ceil((pi k)^{2/alpha} / 6^{1/alpha}); nondecreasing with
// sum_k B_k^{-alpha} <= 1.
int default_schedule(double alpha, int k);

// Oracle-inequality penalty shape with A_k = U B_k phi'(U B_k),
// C_k = 2(phi(U B_k) + 1 - ln 2), R_k = A_k^2 B_k C_k + sqrt(A_k)/C_k:
//   c_pen * [ R_k ln n / n + C_k (alpha ln B_k + delta + ln 2) / n ].
double penalty(int k, const SelectionPlan& plan, double U, long n);

// Same formula for an explicit class radius B_k.
double penalty_for_B(int B_k, double alpha, double delta, double c_pen,
                     double U, double n);

// Fit fhat_k over k = 1..k_max on nested feature prefixes, score each k
// and pick the smallest minimizer. "holdout" mode scores k by empirical
// logit risk on a 25% tail split and refits the winner on all data.
SelectionReport fit_penalized(const Dataset& data, const Dictionary& dict,
                              const SelectionPlan& plan, int u);

// Same sweep on a precomputed feature matrix (columns >= B_{k_max}).
SelectionReport fit_penalized(const FeatureMatrix& fm,
                              const SelectionPlan& plan);

void write_selection_csv(std::ostream& out, const SelectionReport& report);

}  // namespace coxflow

#endif  // COXFLOW_SELECT_HPP_
