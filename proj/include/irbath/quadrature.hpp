#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstddef>
#include <type_traits>

namespace irbath::quad {

template <class V>
struct Result {
  V value{};
  double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]; infinite limits allowed. The
/// integrand may return double or std::complex<double>.
template <class F>
auto gk(F&& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 18) {
  using V = std::decay_t<decltype(f(a))>;
  Result<V> r;
  double l1 = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol, &r.error, &l1);
  return r;
}

/// Splits [a, b] into equal panels no wider than `width`, integrates each with
/// gk() and sums the panels left to right.
template <class F>
auto panels(F&& f, double a, double b, double width, double rel_tol = 1e-12, unsigned max_depth = 12) {
  using V = std::decay_t<decltype(f(a))>;
  Result<V> total;
  if (!(b > a)) return total;
  auto n = static_cast<std::size_t>(std::ceil((b - a) / width));
  if (n == 0) n = 1;
  const double h = (b - a) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = a + h * static_cast<double>(i);
    double hi = (i + 1 == n) ? b : lo + h;
    auto p = gk(f, lo, hi, rel_tol, max_depth);
    total.value += p.value;
    total.error += p.error;
  }
  return total;
}

}  // namespace irbath::quad
