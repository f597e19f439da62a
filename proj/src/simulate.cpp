#include "coxflow/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "coxflow/parallel.hpp"
#include "coxflow/quadrature.hpp"

namespace coxflow {

void SimConfig::validate() const {
  if (n < 1 || grid_steps < 1 || u < 1 || dim < 1 || !(horizon > 0))
    throw std::invalid_argument("SimConfig: need n,m,u,d >= 1 and T > 0");
  if (!(p_plus > 0) || !(p_plus < 1))
    throw std::invalid_argument("SimConfig: p_plus must be in (0,1)");
}

CovariatePath simulate_covariate(const std::string& kind, int dim,
                                 double horizon, int grid_steps,
                                 RngStream& rng) {
  CovariatePath z;
  z.dim = dim;
  z.grid.resize(grid_steps + 1);
  for (int i = 0; i <= grid_steps; ++i)
    z.grid[i] = horizon * i / grid_steps;
  z.grid.back() = horizon;
  z.values.resize(static_cast<std::size_t>(grid_steps) * dim);

  if (kind == "constant-half") {
    for (auto& v : z.values) v = 0.5;
    return z;
  }
  if (kind == "logistic-OU") {
    // Euler scheme for dX = -theta X dt + sigma dW, mapped by the logistic
    // function into (0,1). Column-by-column so coordinates are independent.
    const double theta = 2.0, sigma = 1.0;
    const double dt = horizon / grid_steps;
    const double sdt = sigma * std::sqrt(dt);
    for (int c = 0; c < dim; ++c) {
      double state = rng.normal();
      for (int i = 0; i < grid_steps; ++i) {
        z.values[static_cast<std::size_t>(i) * dim + c] =
            1.0 / (1.0 + std::exp(-state));
        state += -theta * state * dt + sdt * rng.normal();
      }
    }
    return z;
  }
  throw std::invalid_argument("unknown covariate kind: " + kind);
}

CountingPath simulate_cox(const IntensityFn& lambda, const CovariatePath& z,
                          double dmax, double horizon, int u, RngStream& rng) {
  CountingPath x;
  x.horizon = horizon;
  x.cap = u;
  double t = 0.0;
  while (static_cast<int>(x.jump_times.size()) < u) {
    t += rng.exponential(dmax);
    if (t > horizon) break;
    const double rate = lambda(t, z.value_at(t));
    if (rate > dmax * (1.0 + 1e-12))
      throw std::runtime_error(
          "simulate_cox: intensity exceeds the thinning majorant");
    if (rate < 0)
      throw std::runtime_error("simulate_cox: negative intensity");
    if (rng.uniform() < rate / dmax) x.jump_times.push_back(t);
  }
  return x;
}

Dataset simulate_dataset(const IntensityModel& model, const SimConfig& config) {
  config.validate();
  Dataset data(config.n);
  parallel_for(config.n, config.threads, [&](long i) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(i) + 1);
    const int y = rng.bernoulli(model.p_plus) ? 1 : -1;
    CovariatePath z = simulate_covariate(config.covariate_kind, config.dim,
                                         config.horizon, config.grid_steps,
                                         rng);
    const IntensityFn& lambda = y > 0 ? model.lambda_plus : model.lambda_minus;
    CountingPath x = simulate_cox(lambda, z, model.dmax, config.horizon,
                                  config.u, rng);
    auto [xs, zs] = stop_pair(x, z);
    data[i] = LabeledSample{std::move(xs), std::move(zs), y};
  });
  return data;
}

double girsanov_log_weight(const IntensityFn& lambda, const CountingPath& x,
                           const CovariatePath& z) {
  const double stop = std::min(tau(x), x.horizon);
  double integral = 0.0;
  for (int i = 0; i < z.segments(); ++i) {
    const double a = z.grid[i];
    const double b = std::min(z.grid[i + 1], stop);
    if (b <= a) break;
    const auto zv = z.segment_value(i);
    integral += gauss16(a, b, [&](double s) { return 1.0 - lambda(s, zv); });
  }
  double jump_sum = 0.0;
  for (double t : x.jump_times) {
    if (t > stop) break;
    const double rate = lambda(t, z.value_at(t));
    if (!(rate > 0))
      throw std::runtime_error(
          "girsanov_log_weight: nonpositive intensity at a jump");
    jump_sum += std::log(rate);
  }
  return -integral - jump_sum;
}

}  // namespace coxflow
