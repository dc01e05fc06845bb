#pragma once

#include <vector>

#include "irbath/density_matrix.hpp"
#include "irbath/units.hpp"

namespace irbath {

/// Slit half-spacing d, slit-to-screen distance L, incident momentum k.
struct TwoSlitGeometry {
  double d = 0.0;
  double L = 0.0;
  double k = 0.0;

  /// L >= 100 d, k > 0, k <= 0.1 m.
  void validate(double m) const;
  double kappa() const { return 2.0 * k * d / L; }
  double travel_time(double m) const { return m * L / k; }
};

/// exp(-(2 alpha T L / 3 m k) kappa^2).
double visibility(const TwoSlitGeometry& geom, const PhysicalParams& params);
/// 1 + V cos(kappa x), |x| <= L/10.
double pattern(const TwoSlitGeometry& geom, const PhysicalParams& params, double x);

struct ThresholdResult {
  double exponent = 0.0;      // through to_natural
  double exponent_lab = 0.0;  // lab coefficient times X
  double X = 0.0;             // T_K L_cm / (sqrt(eps_eV) r_cm^2)
};

/// Exponent for fringe spacing r (kappa = 1/r) of an electron with kinetic
/// energy eps, with the electron mass from CODATA.
ThresholdResult threshold_constant(double T_K, double L_cm, double eps_eV, double r_cm);
/// Exponent per unit X: 2 alpha kB hbar c / (3 sqrt(2) m^{3/2}).
double threshold_coefficient();

/// Two slit waves near the screen, locally plane waves with transverse
/// momenta +-kappa/2, as a 1D grid density matrix.
GridState two_wave_state(const TwoSlitGeometry& geom);

struct PipelineResult {
  double visibility = 0.0;
  std::vector<double> x;
  std::vector<double> density;
};

/// two_wave_state -> propagate over the travel time -> charge_density on
/// `samples` points over one fringe period -> (max-min)/(max+min).
PipelineResult pipeline_visibility(const TwoSlitGeometry& geom, const PhysicalParams& params, int samples = 1024);

/// (max-min)/(max+min) over the given samples.
double fringe_visibility(const std::vector<double>& values);

}  // namespace irbath
