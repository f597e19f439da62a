#include "coxflow/erm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coxflow {
namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_row(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

}  // namespace

double logit_loss(double t) {
  return (std::max(t, 0.0) + std::log1p(std::exp(-std::fabs(t)))) / kLn2;
}

double logit_loss_deriv(double t) {
  return 1.0 / (kLn2 * (std::exp(-t) + 1.0));
}

bool Coefficients::feasible(double slack) const {
  auto l1 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
  };
  return l1(a) <= radius + slack && l1(b) <= radius + slack &&
         std::fabs(c) <= radius + slack;
}

double Coefficients::evaluate(const double* phi_row,
                              const double* psi_row) const {
  double v = c;
  for (std::size_t j = 0; j < a.size(); ++j) v += a[j] * phi_row[j];
  for (std::size_t j = 0; j < b.size(); ++j) v += b[j] * psi_row[j];
  return v;
}

double empirical_risk(const Coefficients& coef, const FeatureMatrix& fm,
                      int B_cols) {
  if (fm.n == 0) throw std::invalid_argument("empirical_risk: empty dataset");
  if (static_cast<int>(coef.a.size()) > B_cols || B_cols > fm.B)
    throw std::invalid_argument("empirical_risk: column mismatch");
  double acc = 0.0;
  for (int i = 0; i < fm.n; ++i) {
    const double f = coef.evaluate(fm.phi_row(i), fm.psi_row(i));
    acc += logit_loss(-fm.labels[i] * f);
  }
  return acc / fm.n;
}

double empirical_risk(const Coefficients& coef, const FeatureMatrix& fm) {
  return empirical_risk(coef, fm, fm.B);
}

RiskGradient risk_gradient(const Coefficients& coef, const FeatureMatrix& fm,
                           int B_cols) {
  if (fm.n == 0) throw std::invalid_argument("risk_gradient: empty dataset");
  RiskGradient g;
  g.a.assign(B_cols, 0.0);
  g.b.assign(B_cols, 0.0);
  for (int i = 0; i < fm.n; ++i) {
    const double y = fm.labels[i];
    const double f = coef.evaluate(fm.phi_row(i), fm.psi_row(i));
    const double w = -y * logit_loss_deriv(-y * f);
    g.c += w;
    for (int j = 0; j < B_cols; ++j) {
      g.a[j] += w * fm.phi_row(i)[j];
      g.b[j] += w * fm.psi_row(i)[j];
    }
  }
  const double inv_n = 1.0 / fm.n;
  for (int j = 0; j < B_cols; ++j) {
    g.a[j] *= inv_n;
    g.b[j] *= inv_n;
  }
  g.c *= inv_n;
  return g;
}

std::vector<double> project_l1(std::vector<double> v, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("project_l1: radius <= 0");
  double norm = 0.0;
  for (double x : v) norm += std::fabs(x);
  if (norm <= radius) return v;
  // Exact pivot by sorting |v| and soft-thresholding.
  std::vector<double> mag(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::fabs(v[i]);
  std::sort(mag.begin(), mag.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    cum += mag[k];
    const double cand = (cum - radius) / static_cast<double>(k + 1);
    if (k + 1 == mag.size() || mag[k + 1] <= cand) {
      theta = cand;
      break;
    }
  }
  for (auto& x : v) {
    const double shrunk = std::max(std::fabs(x) - theta, 0.0);
    x = std::copysign(shrunk, x);
  }
  return v;
}

FitReport fit_erm(const FeatureMatrix& fm, int B, const FitOptions& options) {
  if (B < 1) throw std::invalid_argument("fit_erm: B must be >= 1");
  if (B > fm.B) throw std::invalid_argument("fit_erm: B exceeds feature columns");
  if (fm.n == 0) throw std::invalid_argument("fit_erm: empty dataset");

  const int n = fm.n;
  const double radius = static_cast<double>(B);

  Coefficients coef;
  coef.radius = B;
  coef.a.assign(B, 0.0);
  coef.b.assign(B, 0.0);
  coef.c = 0.0;
  if (options.warm_start != nullptr) {
    const auto& w = *options.warm_start;
    if (static_cast<int>(w.a.size()) > B)
      throw std::invalid_argument("fit_erm: warm start wider than class");
    std::copy(w.a.begin(), w.a.end(), coef.a.begin());
    std::copy(w.b.begin(), w.b.end(), coef.b.begin());
    coef.c = w.c;
    coef.a = project_l1(std::move(coef.a), radius);
    coef.b = project_l1(std::move(coef.b), radius);
    coef.c = std::clamp(coef.c, -radius, radius);
  }

  // Smoothness bound: the Hessian of A_n is (1/n) sum phi''(.) g_i g_i^T
  // with phi'' <= 1/(4 ln 2), so its largest eigenvalue is at most
  // (1/(4 ln 2 n)) sum ||g_i||^2.
  double sq_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 1.0;  // intercept column
    for (int j = 0; j < B; ++j) {
      s += fm.phi_row(i)[j] * fm.phi_row(i)[j];
      s += fm.psi_row(i)[j] * fm.psi_row(i)[j];
    }
    sq_sum += s;
  }
  const double lambda_max = sq_sum / (4.0 * kLn2 * n);
  const double step = 1.0 / std::max(lambda_max, 1e-12);

  auto objective = [&](const Coefficients& th) {
    return empirical_risk(th, fm, B);
  };

  std::vector<double> grad_a(B), grad_b(B);
  double risk = objective(coef);
  double sweep_anchor = risk;
  long iter = 0;
  bool converged = false;

  while (iter < options.max_iters) {
    std::fill(grad_a.begin(), grad_a.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    double grad_c = 0.0;
    for (int i = 0; i < n; ++i) {
      const double y = fm.labels[i];
      const double f = coef.evaluate(fm.phi_row(i), fm.psi_row(i));
      const double w = -y * logit_loss_deriv(-y * f);
      grad_c += w;
      const double* pr = fm.phi_row(i);
      const double* qr = fm.psi_row(i);
      for (int j = 0; j < B; ++j) {
        grad_a[j] += w * pr[j];
        grad_b[j] += w * qr[j];
      }
    }
    const double inv_n = 1.0 / n;
    for (int j = 0; j < B; ++j) {
      coef.a[j] -= step * grad_a[j] * inv_n;
      coef.b[j] -= step * grad_b[j] * inv_n;
    }
    coef.c -= step * grad_c * inv_n;
    coef.a = project_l1(std::move(coef.a), radius);
    coef.b = project_l1(std::move(coef.b), radius);
    coef.c = std::clamp(coef.c, -radius, radius);
    ++iter;

    const double next = objective(coef);
    if (!std::isfinite(next))
      throw std::runtime_error("fit_erm: non-finite objective");
    risk = next;
    if (iter % options.sweep == 0) {
      if (sweep_anchor - risk <
          options.tolerance * std::max(std::fabs(sweep_anchor), 1.0)) {
        converged = true;
        break;
      }
      sweep_anchor = risk;
    }
  }

  FitReport report;
  report.coef = std::move(coef);
  report.risk = risk;
  report.iterations = iter;
  report.converged = converged;
  report.tolerance = options.tolerance;
  return report;
}

void write_coefficients(std::ostream& out, const Coefficients& coef) {
  out << coef.radius << '\n';
  for (std::size_t j = 0; j < coef.a.size(); ++j)
    out << (j ? "," : "") << fmt17(coef.a[j]);
  out << '\n';
  for (std::size_t j = 0; j < coef.b.size(); ++j)
    out << (j ? "," : "") << fmt17(coef.b[j]);
  out << '\n';
  out << fmt17(coef.c) << '\n';
}

Coefficients read_coefficients(std::istream& in) {
  Coefficients coef;
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("coefficient file: missing B line");
  coef.radius = std::stoi(line);
  if (!std::getline(in, line))
    throw std::invalid_argument("coefficient file: missing a line");
  coef.a = parse_row(line);
  if (!std::getline(in, line))
    throw std::invalid_argument("coefficient file: missing b line");
  coef.b = parse_row(line);
  if (!std::getline(in, line))
    throw std::invalid_argument("coefficient file: missing c line");
  coef.c = std::stod(line);
  return coef;
}

void write_coefficients_file(const std::string& path, const Coefficients& c) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_coefficients(out, c);
}

Coefficients read_coefficients_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file: " + path);
  return read_coefficients(in);
}

}  // namespace coxflow
