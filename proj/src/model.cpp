#include "coxflow/model.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "coxflow/rng.hpp"

namespace coxflow {
namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Multi-index (k_t, k_1..k_d) enumeration by total degree, ties by
// lexicographic order. Shared and grown on demand.
struct CosineEnum {
  int dim;  // d+1 axes including time
  std::vector<std::vector<int>> index;  // 0-based: index[j-1]

  void extend_to(int j) {
    int degree = index.empty() ? 0 : 0;
    // recompute the degree to resume from
    if (!index.empty()) {
      degree = 0;
      for (int v : index.back()) degree += v;
      ++degree;
    }
    while (static_cast<int>(index.size()) < j) {
      emit_degree(degree);
      ++degree;
    }
  }

  void emit_degree(int degree) {
    std::vector<int> tuple(dim, 0);
    emit_rec(tuple, 0, degree);
  }

  void emit_rec(std::vector<int>& tuple, int axis, int remaining) {
    if (axis == dim - 1) {
      tuple[axis] = remaining;
      index.push_back(tuple);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      tuple[axis] = v;
      emit_rec(tuple, axis + 1, remaining - v);
    }
    tuple[axis] = 0;
  }
};

}  // namespace

IntensityModel IntensityModel::checked(IntensityFn plus, IntensityFn minus,
                                       double eps, double dmax, double p_plus,
                                       double horizon, int dim,
                                       int check_points) {
  if (!(eps > 0) || !(dmax >= eps))
    throw std::invalid_argument("IntensityModel: need 0 < eps <= D");
  if (!(p_plus > 0) || !(p_plus < 1))
    throw std::invalid_argument("IntensityModel: p_plus must be in (0,1)");
  IntensityModel m;
  m.lambda_plus = std::move(plus);
  m.lambda_minus = std::move(minus);
  m.eps = eps;
  m.dmax = dmax;
  m.p_plus = p_plus;
  m.p_minus = 1.0 - p_plus;
  m.horizon = horizon;
  m.dim = dim;

  // Spot-check the [eps, D] bounds: randomized points plus the corners of
  // [0,T] x {0,1}^d.
  RngStream rng(0xC0CFu);
  std::vector<double> z(dim);
  auto probe = [&](double t, std::span<const double> zz) {
    for (const auto* f : {&m.lambda_plus, &m.lambda_minus}) {
      const double v = (*f)(t, zz);
      if (!(v >= eps - 1e-12) || !(v <= dmax + 1e-12))
        throw std::invalid_argument(
            "IntensityModel: intensity outside [eps, D] at a checked point");
    }
  };
  for (int i = 0; i < check_points; ++i) {
    const double t = rng.uniform() * horizon;
    for (auto& v : z) v = rng.uniform();
    probe(t, z);
  }
  const long corners = 1L << dim;
  if (dim <= 10) {
    for (long mask = 0; mask < corners; ++mask) {
      for (int i = 0; i < dim; ++i) z[i] = (mask >> i) & 1 ? 1.0 : 0.0;
      probe(0.0, z);
      probe(horizon, z);
    }
  }
  return m;
}

IntensityModel scenario_by_name(const std::string& name, double p_plus) {
  if (name == "affine-1d") {
    return IntensityModel::checked(
        [](double, std::span<const double> z) { return 2.0 + 2.0 * z[0]; },
        [](double, std::span<const double> z) { return 4.0 - 2.0 * z[0]; },
        /*eps=*/2.0, /*dmax=*/4.0, p_plus, /*horizon=*/1.0, /*dim=*/1);
  }
  if (name == "symmetric-1d") {
    return IntensityModel::checked(
        [](double, std::span<const double>) { return 2.0; },
        [](double, std::span<const double>) { return 2.0; },
        2.0, 2.0, p_plus, 1.0, 1);
  }
  if (name == "constant-2") {
    return IntensityModel::checked(
        [](double, std::span<const double>) { return 2.0; },
        [](double, std::span<const double>) { return 1.0; },
        1.0, 2.0, p_plus, 1.0, 1);
  }
  throw std::invalid_argument("unknown scenario: " + name);
}

Dictionary cosine_dictionary(int dim, double horizon) {
  if (dim < 1 || !(horizon > 0))
    throw std::invalid_argument("cosine_dictionary: need dim >= 1, T > 0");
  auto enumeration = std::make_shared<CosineEnum>();
  enumeration->dim = dim + 1;

  const double T = horizon;
  auto element = [enumeration, T, dim](int j) -> const std::vector<int>& {
    if (j < 1) throw std::invalid_argument("dictionary index must be >= 1");
    if (static_cast<int>(enumeration->index.size()) < j)
      enumeration->extend_to(j);
    return enumeration->index[j - 1];
  };

  Dictionary dict;
  dict.horizon = horizon;
  dict.dim = dim;
  dict.description = "tensor cosine basis, total-degree order";
  dict.eval = [element, T, dim](int j, double t, std::span<const double> z) {
    const auto& idx = element(j);
    const int kt = idx[0];
    double v = kt == 0 ? 1.0 / std::sqrt(T)
                       : std::sqrt(2.0 / T) * std::cos(kt * kPi * t / T);
    for (int i = 0; i < dim; ++i) {
      const int k = idx[i + 1];
      if (k != 0) v *= std::sqrt(2.0) * std::cos(k * kPi * z[i]);
    }
    return v;
  };
  dict.sup_bound = [element, T, dim](int J) {
    double best = 0.0;
    for (int j = 1; j <= J; ++j) {
      const auto& idx = element(j);
      double s = idx[0] == 0 ? 1.0 / std::sqrt(T) : std::sqrt(2.0 / T);
      for (int i = 0; i < dim; ++i)
        if (idx[i + 1] != 0) s *= std::sqrt(2.0);
      best = std::max(best, s);
    }
    return best;
  };
  return dict;
}

double eta_from_xi(double xi, double p_plus) {
  const double p_minus = 1.0 - p_plus;
  const double denom = p_minus * std::exp(-xi) + p_plus;
  if (!std::isfinite(denom)) return 0.0;  // exp(-xi) overflowed
  return p_plus / denom;
}

}  // namespace coxflow
