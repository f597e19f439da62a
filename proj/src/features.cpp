#include "coxflow/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "coxflow/parallel.hpp"
#include "coxflow/quadrature.hpp"

namespace coxflow {

double compute_phi(const Dictionary& dict, int j, const CountingPath& x,
                   const CovariatePath& z, int quad_nodes) {
  const double stop = std::min(tau(x), x.horizon);
  double acc = 0.0;
  for (int i = 0; i < z.segments(); ++i) {
    const double a = z.grid[i];
    const double b = std::min(z.grid[i + 1], stop);
    if (b <= a) break;
    const auto zv = z.segment_value(i);
    auto f = [&](double s) { return dict.eval(j, s, zv); };
    acc += quad_nodes > 16 ? gauss16_split(a, b, f) : gauss16(a, b, f);
  }
  return acc;
}

double compute_psi(const Dictionary& dict, int j, const CountingPath& x,
                   const CovariatePath& z) {
  const double stop = std::min(tau(x), x.horizon);
  double acc = 0.0;
  for (double t : x.jump_times) {
    if (t > stop) break;
    acc += dict.eval(j, t, z.value_at(t));
  }
  return acc;
}

FeatureMatrix feature_matrix(const Dataset& data, const Dictionary& dict,
                             int B, int u, int threads) {
  if (B < 1) throw std::invalid_argument("feature_matrix: B must be >= 1");
  FeatureMatrix fm;
  fm.n = static_cast<int>(data.size());
  fm.B = B;
  fm.phi.resize(static_cast<std::size_t>(fm.n) * B);
  fm.psi.resize(static_cast<std::size_t>(fm.n) * B);
  fm.labels.resize(fm.n);
  fm.bound_U = 1.0 + (dict.horizon + u) * dict.sup_bound(B);
  // Force the shared enumeration cache before going parallel.
  if (fm.n > 0) {
    std::vector<double> origin(dict.dim, 0.0);
    (void)dict.eval(B, 0.0, origin);
  }
  parallel_for(fm.n, threads, [&](long i) {
    const auto& s = data[i];
    fm.labels[i] = s.y;
    double* prow = fm.phi.data() + static_cast<std::size_t>(i) * B;
    double* qrow = fm.psi.data() + static_cast<std::size_t>(i) * B;
    for (int j = 1; j <= B; ++j) {
      prow[j - 1] = compute_phi(dict, j, s.x, s.z);
      qrow[j - 1] = compute_psi(dict, j, s.x, s.z);
    }
  });
  return fm;
}

void write_features_csv(std::ostream& out, const FeatureMatrix& fm) {
  out << "i,y";
  for (int j = 1; j <= fm.B; ++j) out << ",Phi_" << j;
  for (int j = 1; j <= fm.B; ++j) out << ",Psi_" << j;
  out << '\n';
  char buf[40];
  for (int i = 0; i < fm.n; ++i) {
    out << i << ',' << fm.labels[i];
    for (int j = 0; j < fm.B; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", fm.phi_row(i)[j]);
      out << ',' << buf;
    }
    for (int j = 0; j < fm.B; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", fm.psi_row(i)[j]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace coxflow
