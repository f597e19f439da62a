#include <cmath>
#include <sstream>

#include "coxflow/erm.hpp"
#include "coxflow/rng.hpp"
#include "coxflow/simulate.hpp"
#include "doctest.h"

using namespace coxflow;

namespace {

// Small feature matrix with hand-set entries for exact-value checks.
FeatureMatrix tiny_fm() {
  FeatureMatrix fm;
  fm.n = 4;
  fm.B = 2;
  fm.phi = {1.0, 0.0, 0.0, 1.0, -1.0, 0.5, 0.25, -0.5};
  fm.psi = {0.0, 1.0, 1.0, 0.0, 0.5, -1.0, -0.25, 0.5};
  fm.labels = {1, -1, 1, -1};
  fm.bound_U = 3.0;
  return fm;
}

FeatureMatrix random_fm(int n, int B, std::uint64_t seed) {
  FeatureMatrix fm;
  fm.n = n;
  fm.B = B;
  fm.bound_U = 1.0 + 2.0 * B;
  RngStream rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < B; ++j) {
      fm.phi.push_back(2.0 * rng.uniform() - 1.0);
      fm.psi.push_back(2.0 * rng.uniform() - 1.0);
    }
    fm.labels.push_back(rng.bernoulli(0.5) ? 1 : -1);
  }
  return fm;
}

}  // namespace

TEST_CASE("logit_loss: pinned values and limits") {
  const double ln2 = std::log(2.0);
  CHECK(logit_loss(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(logit_loss(1.0) ==
        doctest::Approx(1.8946361239720116).epsilon(1e-15));
  CHECK(logit_loss(-1.0) ==
        doctest::Approx(std::log1p(std::exp(-1.0)) / ln2).epsilon(1e-15));
  // large |t|: no overflow, correct asymptotes
  CHECK(logit_loss(800.0) == doctest::Approx(800.0 / ln2).epsilon(1e-12));
  CHECK(logit_loss(-800.0) >= 0.0);
  CHECK(logit_loss(-800.0) < 1e-300);
  CHECK(std::isfinite(logit_loss(1e8)));
}

TEST_CASE("logit_loss_deriv matches a central difference") {
  const double h = 1e-6;
  for (double t : {-5.0, -1.0, -0.1, 0.0, 0.3, 2.0, 10.0}) {
    const double fd = (logit_loss(t + h) - logit_loss(t - h)) / (2.0 * h);
    CHECK(logit_loss_deriv(t) == doctest::Approx(fd).epsilon(1e-8));
  }
  // curvature bound 1/(4 ln 2): derivative is Lipschitz with that constant
  const double lmax = 1.0 / (4.0 * std::log(2.0));
  for (double t = -10.0; t < 10.0; t += 0.05) {
    const double slope = (logit_loss_deriv(t + h) - logit_loss_deriv(t)) / h;
    CHECK(slope <= lmax + 1e-6);
    CHECK(slope >= -1e-12);
  }
}

TEST_CASE("project_l1: identity inside the ball, exact on hand cases") {
  CHECK(project_l1({0.2, -0.3}, 1.0) == std::vector<double>{0.2, -0.3});
  // projecting (3,0) onto radius 1 gives (1,0)
  CHECK(project_l1({3.0, 0.0}, 1.0) == std::vector<double>{1.0, 0.0});
  // symmetric case: (1,1) onto radius 1 -> (0.5, 0.5)
  auto p = project_l1({1.0, 1.0}, 1.0);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(project_l1({}, 1.0).empty());
}

TEST_CASE("project_l1 agrees with a brute-force search oracle") {
  RngStream rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(3);
    for (double& x : v) x = 4.0 * (rng.uniform() - 0.5);
    auto p = project_l1(v, 1.0);
    double na = 0.0, dist = 0.0;
    for (int i = 0; i < 3; ++i) {
      na += std::fabs(p[i]);
      dist += (p[i] - v[i]) * (p[i] - v[i]);
    }
    CHECK(na <= 1.0 + 1e-12);
    // oracle: dense grid over the l1 sphere cannot beat the projection
    const int G = 60;
    for (int i = -G; i <= G; ++i)
      for (int j = -(G - std::abs(i)); j <= G - std::abs(i); ++j) {
        for (int sk : {-1, 1}) {
          const double x = double(i) / G, y = double(j) / G;
          const double z = sk * (1.0 - std::fabs(x) - std::fabs(y));
          const double d = (x - v[0]) * (x - v[0]) + (y - v[1]) * (y - v[1]) +
                           (z - v[2]) * (z - v[2]);
          CHECK(dist <= d + 1e-3);
        }
      }
  }
}

TEST_CASE("empirical_risk: hand value on the tiny instance") {
  auto fm = tiny_fm();
  Coefficients coef;
  coef.a = {0.5, -0.25};
  coef.b = {0.0, 1.0};
  coef.c = 0.1;
  coef.radius = 2;
  CHECK(coef.feasible());
  double acc = 0.0;
  for (int i = 0; i < fm.n; ++i) {
    const double f = coef.evaluate(fm.phi_row(i), fm.psi_row(i));
    acc += logit_loss(-fm.labels[i] * f);
  }
  CHECK(empirical_risk(coef, fm) == doctest::Approx(acc / 4.0).epsilon(1e-15));
  // at zero coefficients the risk is exactly phi(0) = 1
  Coefficients zero;
  zero.a = {0.0, 0.0};
  zero.b = {0.0, 0.0};
  zero.radius = 2;
  CHECK(empirical_risk(zero, fm) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("risk_gradient matches finite differences") {
  auto fm = random_fm(30, 3, 99);
  Coefficients coef;
  coef.a = {0.3, -0.2, 0.1};
  coef.b = {-0.4, 0.0, 0.2};
  coef.c = 0.05;
  coef.radius = 1;
  auto g = risk_gradient(coef, fm, 3);
  const double h = 1e-6;
  auto fd = [&](double* slot) {
    const double save = *slot;
    *slot = save + h;
    const double up = empirical_risk(coef, fm, 3);
    *slot = save - h;
    const double dn = empirical_risk(coef, fm, 3);
    *slot = save;
    return (up - dn) / (2.0 * h);
  };
  for (int j = 0; j < 3; ++j) {
    CHECK(g.a[j] == doctest::Approx(fd(&coef.a[j])).epsilon(1e-6));
    CHECK(g.b[j] == doctest::Approx(fd(&coef.b[j])).epsilon(1e-6));
  }
  CHECK(g.c == doctest::Approx(fd(&coef.c)).epsilon(1e-6));
}

TEST_CASE("fit_erm: pure-intercept instance has the closed-form optimum") {
  // all features zero: f = c, and with n+ positives out of n the optimum
  // over |c| <= B is the logistic MLE log(n+/n-) when interior.
  FeatureMatrix fm;
  fm.n = 10;
  fm.B = 1;
  fm.phi.assign(10, 0.0);
  fm.psi.assign(10, 0.0);
  fm.labels = {1, 1, 1, 1, 1, 1, 1, -1, -1, -1};
  fm.bound_U = 4.0;
  auto rep = fit_erm(fm, 1, {.tolerance = 1e-13, .max_iters = 200000});
  CHECK(rep.converged);
  CHECK(rep.coef.c == doctest::Approx(std::log(7.0 / 3.0)).epsilon(1e-5));
  for (double aj : rep.coef.a) CHECK(std::fabs(aj) < 1e-5);
}

TEST_CASE("fit_erm beats a dense grid search on a tiny instance") {
  auto fm = random_fm(25, 1, 4242);
  auto rep = fit_erm(fm, 1, {.tolerance = 1e-13, .max_iters = 200000});
  CHECK(rep.coef.feasible(1e-12));
  const int G = 40;
  double best = 1e300;
  Coefficients probe;
  probe.a = {0.0};
  probe.b = {0.0};
  probe.radius = 1;
  for (int ia = -G; ia <= G; ++ia)
    for (int ib = -G; ib <= G; ++ib)
      for (int ic = -G; ic <= G; ++ic) {
        probe.a[0] = double(ia) / G;
        probe.b[0] = double(ib) / G;
        probe.c = double(ic) / G;
        best = std::min(best, empirical_risk(probe, fm));
      }
  CHECK(rep.risk <= best + 1e-4);
}

TEST_CASE("fit_erm: objective decreases monotonically across sweeps") {
  auto fm = random_fm(60, 4, 7);
  FitOptions opt;
  opt.tolerance = 0.0;  // run a fixed number of iterations
  double prev = 1e300;
  for (long it : {25L, 50L, 100L, 200L, 400L}) {
    opt.max_iters = it;
    auto rep = fit_erm(fm, 4, opt);
    CHECK(rep.risk <= prev + 1e-12);
    prev = rep.risk;
  }
}

TEST_CASE("fit_erm is invariant to duplicating the dataset") {
  auto fm = random_fm(30, 2, 17);
  FeatureMatrix dbl = fm;
  dbl.n = 2 * fm.n;
  dbl.phi.insert(dbl.phi.end(), fm.phi.begin(), fm.phi.end());
  dbl.psi.insert(dbl.psi.end(), fm.psi.begin(), fm.psi.end());
  dbl.labels.insert(dbl.labels.end(), fm.labels.begin(), fm.labels.end());
  auto r1 = fit_erm(fm, 2, {.tolerance = 1e-12, .max_iters = 100000});
  auto r2 = fit_erm(dbl, 2, {.tolerance = 1e-12, .max_iters = 100000});
  CHECK(r1.risk == doctest::Approx(r2.risk).epsilon(1e-7));
}

TEST_CASE("fit_erm: warm start from the solution converges immediately") {
  auto fm = random_fm(40, 3, 23);
  auto rep = fit_erm(fm, 3, {.tolerance = 1e-12, .max_iters = 100000});
  FitOptions warm;
  warm.tolerance = 1e-12;
  warm.warm_start = &rep.coef;
  auto rep2 = fit_erm(fm, 3, warm);
  CHECK(rep2.risk <= rep.risk + 1e-12);
  CHECK(rep2.iterations <= rep.iterations);
}

TEST_CASE("coefficient files round-trip bit-exactly") {
  Coefficients c;
  c.a = {0.1, -2.0 / 3.0};
  c.b = {1e-17, 3.0};
  c.c = -0.125;
  c.radius = 4;
  std::ostringstream out;
  write_coefficients(out, c);
  std::istringstream in(out.str());
  auto back = read_coefficients(in);
  CHECK(back.radius == 4);
  CHECK(back.a == c.a);
  CHECK(back.b == c.b);
  CHECK(back.c == c.c);
}
