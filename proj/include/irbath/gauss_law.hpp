#pragma once

#include <vector>

#include "irbath/types.hpp"

namespace irbath {

/// Static charge at the origin. A point source is smeared into a Gaussian of
/// width `sigma`, or r/50 at probe radius r when sigma is left at 0.
struct SourceProfile {
  enum class Kind { point, gaussian };
  Kind kind = Kind::gaussian;
  double sigma = 0.0;
  double charge = 1.0;  // units of e

  double width_at(double r) const;
  /// J0(p) = exp(-sigma^2 p^2 / 2)
  double spectrum(double p, double sigma_eff) const;
};

struct TreeField {
  double A0 = 0.0;
  Vec3 A{0.0, 0.0, 0.0};  // contravariant
};

/// Tree-level potential of the static source switched on at t = 0, by radial
/// quadrature of its Fourier integral. Without the non-covariant term the
/// vector part vanishes and the Lorenz condition fails.
TreeField tree_field(const SourceProfile& src, const Vec3& x, double t, bool include_noncov, double e);

/// d_mu A^mu at (x, t). Zero when the non-covariant term is included.
double divergence_residual(const SourceProfile& src, const Vec3& x, double t, double e,
                           bool include_noncov = false);

/// Closed form of A0 for a Gaussian source:
/// (e/4 pi r)[erf(r/s) - (erf((r+t)/s) + erf((r-t)/s))/2], s = sigma sqrt 2.
double gaussian_A0_closed(double r, double t, double sigma, double e);
/// Closed form of the divergence without the non-covariant term.
double gaussian_divergence_closed(double r, double t, double sigma, double e);

struct SpectralResiduals {
  double lorenz = 0.0;  // max |d_t a0 + i p.a| / |e J0|
  double gauss = 0.0;   // max |div E - e J0| / |e J0|
  double wave = 0.0;    // max |box a_mu - e J_mu| / |e J0|
};

/// Mode-by-mode check of the field equations on probe momenta and times;
/// time derivatives by 7-point central differences.
SpectralResiduals spectral_residuals(double sigma, const std::vector<double>& p_probe,
                                     const std::vector<double>& t_probe, bool include_noncov, double e);

/// Richardson extrapolation of A0 to sigma -> 0 from sigma = r/25, r/50, r/100.
double A0_point_limit(double r, double t, double e);

struct DecayFit {
  double slope = 0.0;     // d ln(residual / t) / d t^2
  double expected = 0.0;  // -1 / (2 sigma^2)
};

/// Fits the x = 0 divergence over t in [t_lo, t_hi].
DecayFit divergence_decay_fit(double sigma, double t_lo, double t_hi, int n, double e);

}  // namespace irbath
