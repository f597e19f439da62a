#include "coxflow/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "coxflow/quadrature.hpp"

namespace coxflow {

double xi(const CountingPath& x, const CovariatePath& z,
          const IntensityModel& model, int quad_nodes) {
  const double stop = std::min(tau(x), x.horizon);
  double integral = 0.0;
  for (int i = 0; i < z.segments(); ++i) {
    const double a = z.grid[i];
    const double b = std::min(z.grid[i + 1], stop);
    if (b <= a) break;
    const auto zv = z.segment_value(i);
    auto diff = [&](double s) {
      return model.lambda_minus(s, zv) - model.lambda_plus(s, zv);
    };
    integral += quad_nodes > 16 ? gauss16_split(a, b, diff)
                                : gauss16(a, b, diff);
  }
  double jump_sum = 0.0;
  for (double t : x.jump_times) {
    if (t > stop) break;
    const auto zv = z.value_at(t);
    const double lp = model.lambda_plus(t, zv);
    const double lm = model.lambda_minus(t, zv);
    if (!(lp > 0) || !(lm > 0))
      throw std::runtime_error("xi: nonpositive intensity at a jump");
    jump_sum += std::log(lp / lm);
  }
  return integral + jump_sum;
}

Posterior posterior(const CountingPath& x, const CovariatePath& z,
                    const IntensityModel& model) {
  Posterior p;
  p.eta_plus = eta_from_xi(xi(x, z, model), model.p_plus);
  p.eta_minus = 1.0 - p.eta_plus;
  return p;
}

int bayes_classify(const CountingPath& x, const CovariatePath& z,
                   const IntensityModel& model) {
  const double stat = xi(x, z, model) - std::log(model.p_minus / model.p_plus);
  return stat > 0 ? 1 : -1;  // sign(0) = -1
}

RiskEstimate mc_risk(const Classifier& g, const Dataset& eval_set) {
  if (eval_set.empty()) throw std::invalid_argument("mc_risk: empty eval set");
  long errors = 0;
  for (const auto& s : eval_set)
    if (g(s.x, s.z) != s.y) ++errors;
  RiskEstimate est;
  est.n_eval = static_cast<long>(eval_set.size());
  est.value = static_cast<double>(errors) / est.n_eval;
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / est.n_eval);
  return est;
}

RiskEstimate mc_bayes_risk(const IntensityModel& model,
                           const Dataset& eval_set) {
  if (eval_set.empty())
    throw std::invalid_argument("mc_bayes_risk: empty eval set");
  double acc = 0.0;
  for (const auto& s : eval_set) {
    const Posterior p = posterior(s.x, s.z, model);
    acc += std::min(p.eta_plus, p.eta_minus);
  }
  RiskEstimate est;
  est.n_eval = static_cast<long>(eval_set.size());
  est.value = acc / est.n_eval;
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / est.n_eval);
  return est;
}

double mc_phi_risk(const Coefficients& coef, const Dictionary& dict,
                   const Dataset& eval_set, int quad_nodes) {
  if (eval_set.empty())
    throw std::invalid_argument("mc_phi_risk: empty eval set");
  double acc = 0.0;
  for (const auto& s : eval_set) {
    double f = coef.c;
    for (std::size_t j = 0; j < coef.a.size(); ++j) {
      const int idx = static_cast<int>(j) + 1;
      if (coef.a[j] != 0.0)
        f += coef.a[j] * compute_phi(dict, idx, s.x, s.z, quad_nodes);
      if (coef.b[j] != 0.0) f += coef.b[j] * compute_psi(dict, idx, s.x, s.z);
    }
    acc += logit_loss(-s.y * f);
  }
  return acc / static_cast<double>(eval_set.size());
}

double mc_phi_risk_star(const IntensityModel& model, const Dataset& eval_set,
                        int quad_nodes) {
  if (eval_set.empty())
    throw std::invalid_argument("mc_phi_risk_star: empty eval set");
  const double shift = std::log(model.p_minus / model.p_plus);
  double acc = 0.0;
  for (const auto& s : eval_set) {
    const double f = xi(s.x, s.z, model, quad_nodes) - shift;
    acc += logit_loss(-s.y * f);
  }
  return acc / static_cast<double>(eval_set.size());
}

Classifier classifier_from(const Coefficients& coef, const Dictionary& dict,
                           int quad_nodes) {
  return [coef, dict, quad_nodes](const CountingPath& x,
                                  const CovariatePath& z) {
    double f = coef.c;
    for (std::size_t j = 0; j < coef.a.size(); ++j) {
      const int idx = static_cast<int>(j) + 1;
      if (coef.a[j] != 0.0)
        f += coef.a[j] * compute_phi(dict, idx, x, z, quad_nodes);
      if (coef.b[j] != 0.0) f += coef.b[j] * compute_psi(dict, idx, x, z);
    }
    return f > 0 ? 1 : -1;
  };
}

}  // namespace coxflow
