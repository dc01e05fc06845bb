#pragma once

#include "irbath/types.hpp"

namespace irbath {

struct SpreadLaw {
  double l = 1.0;      // initial width (1/eV)
  double Theta = 0.0;  // 2 alpha T / (3 m^2)
  double m = 1.0;
};

/// l_t = (l^2 + t^2/(m^2 l^2) + 4 Theta t)^{1/2}.
double spread_width(const SpreadLaw& law, double t);
/// General form with free evolution time and accumulated Theta*t given
/// separately: (l^2 + free_time^2/(m^2 l^2) + 4 theta_t)^{1/2}.
double spread_width(const SpreadLaw& law, double free_time, double theta_t);

/// pi^{-3/2} l_t^{-3} exp(-x^2/l_t^2).
double gaussian_density(const SpreadLaw& law, const Vec3& x, double t);

/// Squared width l^2 + 4 Theta tau of a packet prepared to refocus at tau.
double focused_width2(double l, double Theta, double tau);
double focused_density(double l, double Theta, double tau, const Vec3& x);

struct WidthOptimum {
  double l = 0.0;
  double width = 0.0;
  int iterations = 0;
};

/// Initial width minimizing l_t at fixed t, found by Newton iteration on
/// log l with the analytic gradient.
WidthOptimum optimal_initial_width(const SpreadLaw& law, double t);

}  // namespace irbath
