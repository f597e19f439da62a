#ifndef COXFLOW_FEATURES_HPP_
#define COXFLOW_FEATURES_HPP_

#include <iosfwd>
#include <vector>

#include "coxflow/model.hpp"
#include "coxflow/paths.hpp"

namespace coxflow {

// Design for the ERM: Phi_j(x,z) = int_0^{T^tau} phi_j(s,z_s) ds and
// Psi_j(x,z) = sum of phi_j over jumps up to T^tau, for j = 1..B in
// dictionary order. Row-major n x B blocks.
struct FeatureMatrix {
  int n = 0;
  int B = 0;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<int> labels;
  double bound_U = 0.0;  // 1 + (T+u)L over elements 1..B

  const double* phi_row(int i) const { return phi.data() + std::size_t(i) * B; }
  const double* psi_row(int i) const { return psi.data() + std::size_t(i) * B; }
};

// Time integral of phi_j along the frozen covariate path, segment by
// segment with a fixed Gauss-Legendre rule (quad_nodes = 16 or 32).
double compute_phi(const Dictionary& dict, int j, const CountingPath& x,
                   const CovariatePath& z, int quad_nodes = 16);

// Stochastic integral of phi_j against the counting path: a finite sum
// over the jumps at or before T ^ tau.
double compute_psi(const Dictionary& dict, int j, const CountingPath& x,
                   const CovariatePath& z);

FeatureMatrix feature_matrix(const Dataset& data, const Dictionary& dict,
                             int B, int u, int threads = 1);

// CSV dump with header i,y,Phi_1..Phi_B,Psi_1..Psi_B.
void write_features_csv(std::ostream& out, const FeatureMatrix& fm);

}  // namespace coxflow

#endif  // COXFLOW_FEATURES_HPP_
