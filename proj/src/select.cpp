#include "coxflow/select.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace coxflow {
namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kLn2 = 0.69314718055994530941723212145818;

FeatureMatrix slice_rows(const FeatureMatrix& fm, int lo, int hi) {
  FeatureMatrix out;
  out.n = hi - lo;
  out.B = fm.B;
  out.bound_U = fm.bound_U;
  out.phi.assign(fm.phi.begin() + static_cast<std::size_t>(lo) * fm.B,
                 fm.phi.begin() + static_cast<std::size_t>(hi) * fm.B);
  out.psi.assign(fm.psi.begin() + static_cast<std::size_t>(lo) * fm.B,
                 fm.psi.begin() + static_cast<std::size_t>(hi) * fm.B);
  out.labels.assign(fm.labels.begin() + lo, fm.labels.begin() + hi);
  return out;
}

// ERM sweep over nested classes. Each k is fitted from zero and, when that
// lands above the previous class's risk, continued from the zero-padded
// previous solution; the better of the two is kept, so the reported risks
// are nonincreasing in k.
std::vector<FitReport> nested_fits(const FeatureMatrix& fm,
                                   const SelectionPlan& plan,
                                   const std::vector<int>& B_of_k) {
  std::vector<FitReport> fits;
  fits.reserve(B_of_k.size());
  for (std::size_t k = 0; k < B_of_k.size(); ++k) {
    FitOptions opt = plan.fit;
    opt.warm_start = nullptr;
    FitReport rep = fit_erm(fm, B_of_k[k], opt);
    if (!fits.empty() && fits.back().risk < rep.risk) {
      FitOptions warm = plan.fit;
      warm.warm_start = &fits.back().coef;
      FitReport alt = fit_erm(fm, B_of_k[k], warm);
      if (alt.risk < rep.risk) rep = std::move(alt);
    }
    fits.push_back(std::move(rep));
  }
  return fits;
}

}  // namespace

int default_schedule(double alpha, int k) {
  if (!(alpha > 0) || k < 1)
    throw std::invalid_argument("default_schedule: need alpha > 0, k >= 1");
  const double v =
      std::pow(kPi * k, 2.0 / alpha) / std::pow(6.0, 1.0 / alpha);
  if (v >= 2147483647.0)
    throw std::overflow_error("default_schedule: B_k exceeds int range");
  return static_cast<int>(std::ceil(v - 1e-12));
}

double penalty_for_B(int B_k, double alpha, double delta, double c_pen,
                     double U, double n) {
  if (!(n >= 2)) throw std::invalid_argument("penalty: need n >= 2");
  const double Bk = B_k;
  const double UB = U * Bk;
  const double Ak = UB * logit_loss_deriv(UB);
  const double Ck = 2.0 * (logit_loss(UB) + 1.0 - kLn2);
  const double Rk = Ak * Ak * Bk * Ck + std::sqrt(Ak) / Ck;
  const double ln_n = std::log(n);
  return c_pen *
         (Rk * ln_n / n + Ck * (alpha * std::log(Bk) + delta + kLn2) / n);
}

double penalty(int k, const SelectionPlan& plan, double U, long n) {
  const double delta = plan.delta >= 0 ? plan.delta : 2.0 * std::log(double(n));
  return penalty_for_B(default_schedule(plan.alpha, k), plan.alpha, delta,
                       plan.c_pen, U, n);
}

SelectionReport fit_penalized(const FeatureMatrix& fm,
                              const SelectionPlan& plan) {
  if (plan.k_max < 1) throw std::invalid_argument("fit_penalized: k_max >= 1");
  std::vector<int> B_of_k(plan.k_max);
  for (int k = 1; k <= plan.k_max; ++k)
    B_of_k[k - 1] = default_schedule(plan.alpha, k);
  if (B_of_k.back() > fm.B)
    throw std::invalid_argument("fit_penalized: feature matrix too narrow");

  SelectionReport report;
  const long n = fm.n;

  if (plan.selector == "holdout") {
    const int n_train =
        static_cast<int>(std::lround((1.0 - plan.holdout_fraction) * n));
    if (n_train < 1 || n_train >= n)
      throw std::invalid_argument("fit_penalized: degenerate holdout split");
    FeatureMatrix train = slice_rows(fm, 0, n_train);
    FeatureMatrix hold = slice_rows(fm, n_train, static_cast<int>(n));
    auto fits = nested_fits(train, plan, B_of_k);
    for (int k = 1; k <= plan.k_max; ++k) {
      const double hold_risk = empirical_risk(fits[k - 1].coef, hold, fm.B);
      report.trace.push_back(
          {k, B_of_k[k - 1], hold_risk, 0.0, hold_risk, false});
    }
  } else if (plan.selector == "penalized") {
    auto fits = nested_fits(fm, plan, B_of_k);
    for (int k = 1; k <= plan.k_max; ++k) {
      const double pen = penalty(k, plan, fm.bound_U, n);
      report.trace.push_back({k, B_of_k[k - 1], fits[k - 1].risk, pen,
                              fits[k - 1].risk + pen, false});
    }
    report.k_hat = 1;
    for (int k = 2; k <= plan.k_max; ++k)
      if (report.trace[k - 1].score < report.trace[report.k_hat - 1].score)
        report.k_hat = k;
    report.trace[report.k_hat - 1].chosen = true;
    report.final = fits[report.k_hat - 1].coef;
    return report;
  } else {
    throw std::invalid_argument("unknown selector: " + plan.selector);
  }

  // holdout: pick the smallest k minimizing holdout risk, refit on all data.
  report.k_hat = 1;
  for (int k = 2; k <= plan.k_max; ++k)
    if (report.trace[k - 1].score < report.trace[report.k_hat - 1].score)
      report.k_hat = k;
  report.trace[report.k_hat - 1].chosen = true;
  FitOptions opt = plan.fit;
  report.final = fit_erm(fm, B_of_k[report.k_hat - 1], opt).coef;
  return report;
}

SelectionReport fit_penalized(const Dataset& data, const Dictionary& dict,
                              const SelectionPlan& plan, int u) {
  const int B_max = default_schedule(plan.alpha, plan.k_max);
  FeatureMatrix fm = feature_matrix(data, dict, B_max, u, plan.threads);
  return fit_penalized(fm, plan);
}

void write_selection_csv(std::ostream& out, const SelectionReport& report) {
  out << "k,B_k,risk,pen,score,chosen\n";
  for (const auto& row : report.trace) {
    out << row.k << ',' << row.B << ',' << row.risk << ',' << row.pen << ','
        << row.score << ',' << (row.chosen ? 1 : 0) << '\n';
  }
}

}  // namespace coxflow
