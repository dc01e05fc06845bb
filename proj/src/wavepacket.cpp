#include "irbath/wavepacket.hpp"

#include <cmath>
#include <numbers>

#include "irbath/error.hpp"

namespace irbath {

double spread_width(const SpreadLaw& law, double t) {
  require(t >= 0.0, "spread_width needs t >= 0");
  return spread_width(law, t, law.Theta * t);
}

double spread_width(const SpreadLaw& law, double free_time, double theta_t) {
  require(law.l > 0.0 && law.m > 0.0 && theta_t >= 0.0, "invalid spread law");
  double s = free_time / (law.m * law.l);
  return std::sqrt(law.l * law.l + s * s + 4.0 * theta_t);
}

double gaussian_density(const SpreadLaw& law, const Vec3& x, double t) {
  double lt = spread_width(law, t);
  return std::exp(-norm2(x) / (lt * lt)) / (std::pow(std::numbers::pi, 1.5) * lt * lt * lt);
}

double focused_width2(double l, double Theta, double tau) {
  require(tau >= 0.0 && Theta >= 0.0 && l > 0.0, "invalid focused packet parameters");
  return l * l + 4.0 * Theta * tau;
}

double focused_density(double l, double Theta, double tau, const Vec3& x) {
  double w2 = focused_width2(l, Theta, tau);
  return std::exp(-norm2(x) / w2) / (std::pow(std::numbers::pi * w2, 1.5));
}

WidthOptimum optimal_initial_width(const SpreadLaw& law, double t) {
  require(t > 0.0, "optimal_initial_width needs t > 0");
  // f(u) = e^{2u} + c e^{-2u} + const with c = t^2/m^2, u = ln l.
  const double c = (t / law.m) * (t / law.m);
  double u = std::log(law.l);
  WidthOptimum out;
  for (int it = 0; it < 200; ++it) {
    double a = std::exp(2.0 * u), b = c * std::exp(-2.0 * u);
    double grad = 2.0 * (a - b);
    double hess = 4.0 * (a + b);
    double step = grad / hess;
    u -= step;
    out.iterations = it + 1;
    if (std::abs(step) < 1e-15) break;
  }
  out.l = std::exp(u);
  SpreadLaw opt = law;
  opt.l = out.l;
  out.width = spread_width(opt, t);
  return out;
}

}  // namespace irbath
