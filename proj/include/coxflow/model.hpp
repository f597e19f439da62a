#ifndef COXFLOW_MODEL_HPP_
#define COXFLOW_MODEL_HPP_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace coxflow {

using IntensityFn = std::function<double(double t, std::span<const double> z)>;

// Pair of conditional intensities with their [eps, dmax] bounds and the
// label mixture weights. Bounds are spot-checked on a randomized grid at
// construction.
struct IntensityModel {
  IntensityFn lambda_plus;
  IntensityFn lambda_minus;
  double eps = 0.0;
  double dmax = 0.0;
  double p_plus = 0.5;
  double p_minus = 0.5;
  double horizon = 1.0;
  int dim = 1;

  static IntensityModel checked(IntensityFn plus, IntensityFn minus,
                                double eps, double dmax, double p_plus,
                                double horizon, int dim,
                                int check_points = 1000);
};

// Named built-in scenarios ("affine-1d", "symmetric-1d", "constant-2").
IntensityModel scenario_by_name(const std::string& name, double p_plus = 0.5);

// Indexed family of bounded basis functions on [0,T] x [0,1]^d.
// Indices are 1-based; sup_bound(J) is the sup-norm bound over elements
// 1..J.
struct Dictionary {
  double horizon = 1.0;
  int dim = 1;
  std::string description;
  std::function<double(int j, double t, std::span<const double> z)> eval;
  std::function<double(int J)> sup_bound;
};

// Tensor cosine basis, orthonormal w.r.t. ds (x) Lebesgue on [0,1]^d:
// products of {1/sqrt(T), sqrt(2/T) cos(k pi t/T)} with
// {1, sqrt(2) cos(k pi z_i)} per coordinate. Multi-indices are enumerated
// by increasing total degree, ties broken lexicographically, so the
// classes built on the first B elements are nested.
Dictionary cosine_dictionary(int dim, double horizon);

// Posterior probability of label +1 as a function of the log-ratio
// statistic: p+ / (p- e^{-xi} + p+). Strictly increasing in xi.
double eta_from_xi(double xi, double p_plus);

}  // namespace coxflow

#endif  // COXFLOW_MODEL_HPP_
