#include <cmath>

#include "coxflow/features.hpp"
#include "coxflow/rng.hpp"
#include "coxflow/simulate.hpp"
#include "doctest.h"

using namespace coxflow;

namespace {

Dictionary stub_dictionary(std::function<double(double, double)> f) {
  Dictionary d;
  d.horizon = 1.0;
  d.dim = 1;
  d.description = "test stub";
  d.eval = [f](int, double t, std::span<const double> z) { return f(t, z[0]); };
  d.sup_bound = [](int) { return 1.0; };
  return d;
}

CovariatePath flat_cov(double horizon = 1.0) {
  return CovariatePath{{0.0, horizon}, {0.5}, 1};
}

}  // namespace

TEST_CASE("compute_phi: constant integrand integrates the window") {
  auto ones = stub_dictionary([](double, double) { return 1.0; });
  CovariatePath z = flat_cov();

  CountingPath full{1.0, {0.4}, 3};  // tau = T
  CHECK(compute_phi(ones, 1, full, z) == doctest::Approx(1.0).epsilon(1e-14));

  CountingPath stopped{1.0, {0.3, 0.7}, 2};  // tau = 0.7
  CHECK(compute_phi(ones, 1, stopped, z) ==
        doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("compute_phi: cos(pi s) integrates to zero over [0,1]") {
  auto cosine = stub_dictionary(
      [](double t, double) { return std::cos(3.14159265358979323846 * t); });
  CovariatePath z{{0.0, 0.3, 1.0}, {0.2, 0.9}, 1};
  CountingPath x{1.0, {}, 5};
  CHECK(std::fabs(compute_phi(cosine, 1, x, z)) < 1e-12);
}

TEST_CASE("compute_phi: doubling quadrature nodes is a no-op for smooth bases") {
  auto dict = cosine_dictionary(1, 1.0);
  RngStream rng(8);
  auto z = simulate_covariate("logistic-OU", 1, 1.0, 8, rng);
  CountingPath x{1.0, {0.21, 0.55, 0.83}, 5};
  for (int j = 1; j <= 8; ++j) {
    const double coarse = compute_phi(dict, j, x, z, 16);
    const double fine = compute_phi(dict, j, x, z, 32);
    CHECK(std::fabs(coarse - fine) < 1e-10);
  }
}

TEST_CASE("compute_psi: counts jumps for the constant element") {
  auto ones = stub_dictionary([](double, double) { return 1.0; });
  CovariatePath z = flat_cov();
  CountingPath x{1.0, {0.2, 0.5, 0.9}, 5};
  CHECK(compute_psi(ones, 1, x, z) == 3.0);
  CountingPath empty{1.0, {}, 5};
  CHECK(compute_psi(ones, 1, empty, z) == 0.0);
}

TEST_CASE("compute_psi: hand sum for phi(s,z) = s") {
  auto ident = stub_dictionary([](double t, double) { return t; });
  CovariatePath z = flat_cov();
  CountingPath x{1.0, {0.2, 0.5}, 5};
  CHECK(compute_psi(ident, 1, x, z) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("compute_psi: additive under splitting the jump sequence in time") {
  auto dict = cosine_dictionary(1, 1.0);
  CovariatePath z = flat_cov();
  CountingPath x{1.0, {0.1, 0.3, 0.6, 0.8}, 10};
  CountingPath head{1.0, {0.1, 0.3}, 10};
  CountingPath tail{1.0, {0.6, 0.8}, 10};
  for (int j = 1; j <= 5; ++j)
    CHECK(compute_psi(dict, j, x, z) ==
          doctest::Approx(compute_psi(dict, j, head, z) +
                          compute_psi(dict, j, tail, z))
              .epsilon(1e-15));
}

TEST_CASE("feature_matrix: shape, prefix nesting and bound U") {
  auto model = scenario_by_name("affine-1d");
  SimConfig cfg;
  cfg.seed = 12;
  cfg.n = 40;
  cfg.u = 6;
  cfg.grid_steps = 8;
  auto data = simulate_dataset(model, cfg);
  auto dict = cosine_dictionary(1, 1.0);

  CHECK_THROWS_AS(feature_matrix(data, dict, 0, cfg.u), std::invalid_argument);

  auto fm1 = feature_matrix(data, dict, 1, cfg.u);
  CHECK(fm1.B == 1);
  CHECK(fm1.n == 40);

  auto fm3 = feature_matrix(data, dict, 3, cfg.u);
  auto fm7 = feature_matrix(data, dict, 7, cfg.u, /*threads=*/3);
  for (int i = 0; i < fm3.n; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(fm3.phi_row(i)[j] == fm7.phi_row(i)[j]);
      CHECK(fm3.psi_row(i)[j] == fm7.psi_row(i)[j]);
    }

  CHECK(fm7.bound_U == 1.0 + (1.0 + cfg.u) * dict.sup_bound(7));

  SUBCASE("per-entry feature bounds") {
    const double L = dict.sup_bound(7);
    for (int i = 0; i < fm7.n; ++i)
      for (int j = 0; j < 7; ++j) {
        CHECK(std::fabs(fm7.phi_row(i)[j]) <= 1.0 * L + 1e-12);
        CHECK(std::fabs(fm7.psi_row(i)[j]) <= cfg.u * L + 1e-12);
      }
  }

  SUBCASE("empty dataset gives an empty matrix") {
    auto fm0 = feature_matrix({}, dict, 2, cfg.u);
    CHECK(fm0.n == 0);
    CHECK(fm0.phi.empty());
  }
}

TEST_CASE("class members stay within the U*B envelope") {
  auto model = scenario_by_name("affine-1d");
  SimConfig cfg;
  cfg.seed = 77;
  cfg.n = 50;
  cfg.u = 5;
  auto data = simulate_dataset(model, cfg);
  auto dict = cosine_dictionary(1, 1.0);
  const int B = 4;
  auto fm = feature_matrix(data, dict, B, cfg.u);
  const double UB = fm.bound_U * B;

  RngStream rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    // random feasible coefficients: scaled so each l1 norm is <= B
    std::vector<double> a(B), b(B);
    double na = 0, nb = 0;
    for (int j = 0; j < B; ++j) {
      a[j] = 2.0 * rng.uniform() - 1.0;
      b[j] = 2.0 * rng.uniform() - 1.0;
      na += std::fabs(a[j]);
      nb += std::fabs(b[j]);
    }
    const double sa = B * rng.uniform() / na, sb = B * rng.uniform() / nb;
    for (int j = 0; j < B; ++j) {
      a[j] *= sa;
      b[j] *= sb;
    }
    const double c = B * (2.0 * rng.uniform() - 1.0);
    for (int i = 0; i < fm.n; ++i) {
      double f = c;
      for (int j = 0; j < B; ++j)
        f += a[j] * fm.phi_row(i)[j] + b[j] * fm.psi_row(i)[j];
      CHECK(std::fabs(f) <= UB + 1e-9);
    }
  }
}
