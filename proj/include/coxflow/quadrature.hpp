#ifndef COXFLOW_QUADRATURE_HPP_
#define COXFLOW_QUADRATURE_HPP_

#include <array>
#include <utility>

namespace coxflow {

// 16-point Gauss-Legendre rule on [-1,1].
inline constexpr std::array<std::pair<double, double>, 16> kGauss16 = {{
    {-0.98940093499164994, 0.027152459411754037},
    {-0.9445750230732326, 0.062253523938647706},
    {-0.86563120238783176, 0.095158511682492591},
    {-0.755404408355003, 0.12462897125553403},
    {-0.61787624440264377, 0.14959598881657676},
    {-0.45801677765722737, 0.16915651939500262},
    {-0.28160355077925892, 0.18260341504492361},
    {-0.095012509837637454, 0.18945061045506859},
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037},
}};

// Integrate f over [a,b] with a single fixed-order Gauss-Legendre panel.
template <typename F>
double gauss16(double a, double b, F&& f) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (const auto& [x, w] : kGauss16) acc += w * f(mid + half * x);
  return half * acc;
}

// Same rule with 2*order points, for convergence checks.
template <typename F>
double gauss16_split(double a, double b, F&& f) {
  const double mid = 0.5 * (a + b);
  return gauss16(a, mid, f) + gauss16(mid, b, f);
}

}  // namespace coxflow

#endif  // COXFLOW_QUADRATURE_HPP_
