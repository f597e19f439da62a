#ifndef COXFLOW_ERM_HPP_
#define COXFLOW_ERM_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "coxflow/features.hpp"

namespace coxflow {

// A member of the class F_B: f = sum a_j Phi_j + sum b_j Psi_j + c with
// sum|a| <= B, sum|b| <= B, |c| <= B.
struct Coefficients {
  std::vector<double> a;
  std::vector<double> b;
  double c = 0.0;
  int radius = 1;  // B

  bool feasible(double slack = 0.0) const;
  double evaluate(const double* phi_row, const double* psi_row) const;
};

struct FitReport {
  Coefficients coef;
  double risk = 0.0;
  long iterations = 0;
  bool converged = false;
  double tolerance = 0.0;
};

struct FitOptions {
  double tolerance = 1e-9;   // relative decrease per sweep
  long max_iters = 50000;
  int sweep = 25;            // iterations per convergence check
  const Coefficients* warm_start = nullptr;
};

// Logit surrogate phi(t) = log2(1 + e^t), in log-sum-exp form so it is
// stable for |t| up to ~1e3, and its derivative 1/(ln2 (e^{-t}+1)).
double logit_loss(double t);
double logit_loss_deriv(double t);

// A_n(f) = (1/n) sum_i phi(-y_i f_i).
double empirical_risk(const Coefficients& coef, const FeatureMatrix& fm,
                      int B_cols);
double empirical_risk(const Coefficients& coef, const FeatureMatrix& fm);

// Gradient of A_n at coef, over the first B_cols feature columns.
struct RiskGradient {
  std::vector<double> a;
  std::vector<double> b;
  double c = 0.0;
};
RiskGradient risk_gradient(const Coefficients& coef, const FeatureMatrix& fm,
                           int B_cols);

// Euclidean projection onto the l1 ball of the given radius
// (sort-based exact pivot). Identity on feasible points.
std::vector<double> project_l1(std::vector<double> v, double radius);

// Projected gradient descent on (a,b,c) over F_B, using the first B
// feature columns. Fixed step 1/Lambda with Lambda a conservative
// smoothness bound from the feature rows; objective is non-increasing.
FitReport fit_erm(const FeatureMatrix& fm, int B,
                  const FitOptions& options = {});

// Coefficient file format: "B" line, "a" line, "b" line, "c" line,
// comma-separated at 17 significant digits.
void write_coefficients(std::ostream& out, const Coefficients& coef);
Coefficients read_coefficients(std::istream& in);
void write_coefficients_file(const std::string& path, const Coefficients& c);
Coefficients read_coefficients_file(const std::string& path);

}  // namespace coxflow

#endif  // COXFLOW_ERM_HPP_
