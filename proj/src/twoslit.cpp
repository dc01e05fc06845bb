#include "irbath/twoslit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irbath/error.hpp"
#include "irbath/observables.hpp"

namespace irbath {

void TwoSlitGeometry::validate(double m) const {
  require(d > 0.0 && L > 0.0, "slit spacing and distance must be positive");
  require(L >= 100.0 * d, "geometry needs L >= 100 d");
  require(k > 0.0 && k <= 0.1 * m, "incident momentum must satisfy 0 < k <= 0.1 m");
}

double visibility(const TwoSlitGeometry& geom, const PhysicalParams& params) {
  geom.validate(params.m);
  const double kap = geom.kappa();
  double v = std::exp(-(2.0 * params.alpha * params.T * geom.L / (3.0 * params.m * geom.k)) * kap * kap);
  double via_factor = ir_decoherence_factor(kap * kap, geom.travel_time(params.m), params);
  if (std::abs(v - via_factor) > 1e-12 * std::max(v, 1e-300)) throw NumericError("visibility disagrees with decoherence factor");
  return v;
}

double pattern(const TwoSlitGeometry& geom, const PhysicalParams& params, double x) {
  require(std::abs(x) <= geom.L / 10.0, "x outside paraxial window |x| <= L/10");
  return 1.0 + visibility(geom, params) * std::cos(geom.kappa() * x);
}

double threshold_coefficient() {
  const double m = codata::electron_mass_eV;
  return 2.0 * codata::alpha * codata::kB_eV_per_K * codata::hbar_c_eV_cm / (3.0 * std::sqrt(2.0) * std::pow(m, 1.5));
}

ThresholdResult threshold_constant(double T_K, double L_cm, double eps_eV, double r_cm) {
  require(T_K >= 0.0 && L_cm > 0.0 && eps_eV > 0.0 && r_cm > 0.0, "threshold inputs must be positive");
  const double m = codata::electron_mass_eV;
  const double T = to_natural({T_K, Unit::kelvin});
  const double L = to_natural({L_cm, Unit::cm});
  const double r = to_natural({r_cm, Unit::cm});
  const double k = std::sqrt(2.0 * m * eps_eV);
  const double kap = 1.0 / r;
  ThresholdResult out;
  out.exponent = 2.0 * codata::alpha * T * L / (3.0 * m * k) * kap * kap;
  out.X = T_K * L_cm / (std::sqrt(eps_eV) * r_cm * r_cm);
  out.exponent_lab = threshold_coefficient() * out.X;
  return out;
}

GridState two_wave_state(const TwoSlitGeometry& geom) {
  const double kap = geom.kappa();
  require(kap > 0.0, "fringe wavevector must be positive");
  GridState s;
  s.q = MomentumGrid{1, Axis{-0.5 * kap, kap, 2}};
  s.p = MomentumGrid{1, Axis{-kap, kap, 3}};
  s.values.assign(s.q.size() * s.p.size(), 0.0);
  // Unit-amplitude plane waves: psi(q) = (2 pi / h) at q = +-kappa/2.
  const double a = 2.0 * std::numbers::pi / kap;
  for (std::size_t iq = 0; iq < 2; ++iq) {
    for (std::size_t ip = 0; ip < 3; ++ip) {
      long jq = s.q.find(s.q.point(iq) + s.p.point(ip));
      if (jq >= 0) s.values[iq * 3 + ip] = a * a;
    }
  }
  return s;
}

double fringe_visibility(const std::vector<double>& values) {
  require(!values.empty(), "no samples");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return (*hi - *lo) / (*hi + *lo);
}

PipelineResult pipeline_visibility(const TwoSlitGeometry& geom, const PhysicalParams& params, int samples) {
  geom.validate(params.m);
  require(samples >= 8, "need at least 8 samples per period");
  DensityMatrix rho = propagate(two_wave_state(geom), geom.travel_time(params.m), params);
  const double period = 2.0 * std::numbers::pi / geom.kappa();
  PipelineResult out;
  for (int i = 0; i < samples; ++i) {
    // One period centered on x = 0; the grid's Nyquist range is |x| <= pi/kappa.
    double x = period * (static_cast<double>(i - samples / 2) / samples);
    out.x.push_back(x);
    out.density.push_back(charge_density(rho, Vec3{x, 0.0, 0.0}));
  }
  out.visibility = fringe_visibility(out.density);
  return out;
}

}  // namespace irbath
