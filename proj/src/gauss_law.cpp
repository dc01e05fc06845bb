#include "irbath/gauss_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irbath/error.hpp"
#include "irbath/fit.hpp"
#include "irbath/quadrature.hpp"

namespace irbath {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^{12/sigma} f(p) dp in panels of a quarter period of the fastest
// oscillation.
template <class F>
double radial(F&& f, double sigma, double r, double t) {
  double pmax = 12.0 / sigma;
  double freq = std::max({r + t, 1.0 / sigma, 1e-300});
  double width = std::min(pmax, 0.5 * kPi / freq);
  return quad::panels(f, 0.0, pmax, width, 1e-13, 3).value;
}

// (u cos u - sin u) / u^2
double dsinc(double u) {
  if (std::abs(u) < 1e-2) {
    double u2 = u * u;
    return u * (-1.0 / 3.0 + u2 / 30.0 - u2 * u2 / 840.0);
  }
  return (u * std::cos(u) - std::sin(u)) / (u * u);
}

}  // namespace

double SourceProfile::width_at(double r) const {
  if (kind == Kind::gaussian) {
    require(sigma > 0.0, "gaussian source needs sigma > 0");
    return sigma;
  }
  if (sigma > 0.0) return sigma;
  require(r > 0.0, "point source needs a smearing width or a probe radius");
  return r / 50.0;
}

double SourceProfile::spectrum(double p, double s) const { return charge * std::exp(-0.5 * s * s * p * p); }

TreeField tree_field(const SourceProfile& src, const Vec3& x, double t, bool include_noncov, double e) {
  require(t > 0.0, "tree_field needs t > 0");
  const double r = norm(x);
  const double s = src.width_at(r);
  TreeField out;
  if (r < 1e-12 * s) {
    auto f = [&](double p) { return (1.0 - std::cos(p * t)) * src.spectrum(p, s); };
    out.A0 = e / (2.0 * kPi * kPi) * radial(f, s, 0.0, t);
    return out;
  }
  auto f0 = [&](double p) {
    double pt = p * t;
    // (1 - cos pt) / p without cancellation
    double c = pt < 1e-4 ? 0.5 * p * t * t : 2.0 * std::sin(0.5 * pt) * std::sin(0.5 * pt) / p;
    return std::sin(p * r) * c * src.spectrum(p, s);
  };
  out.A0 = e / (2.0 * kPi * kPi * r) * radial(f0, s, r, t);
  if (include_noncov) {
    auto fr = [&](double p) { return dsinc(p * r) * std::sin(p * t) * src.spectrum(p, s); };
    double Ar = e / (2.0 * kPi * kPi) * radial(fr, s, r, t);
    out.A = (Ar / r) * x;
  }
  return out;
}

double divergence_residual(const SourceProfile& src, const Vec3& x, double t, double e, bool include_noncov) {
  require(t >= 0.0, "divergence_residual needs t >= 0");
  if (include_noncov || t == 0.0) return 0.0;
  const double r = norm(x);
  const double s = src.width_at(r > 0.0 ? r : t);
  if (r < 1e-12 * s) {
    auto f = [&](double p) { return p * std::sin(p * t) * src.spectrum(p, s); };
    return e / (2.0 * kPi * kPi) * radial(f, s, 0.0, t);
  }
  auto f = [&](double p) { return std::sin(p * r) * std::sin(p * t) * src.spectrum(p, s); };
  return e / (2.0 * kPi * kPi * r) * radial(f, s, r, t);
}

double gaussian_A0_closed(double r, double t, double sigma, double e) {
  const double s = sigma * std::sqrt(2.0);
  if (r == 0.0) {
    // limit r -> 0
    double g = 2.0 / (std::sqrt(kPi) * s);
    return e / (4.0 * kPi) * (g - g * std::exp(-t * t / (s * s)));
  }
  return e / (4.0 * kPi * r) * (std::erf(r / s) - 0.5 * (std::erf((r + t) / s) + std::erf((r - t) / s)));
}

double gaussian_divergence_closed(double r, double t, double sigma, double e) {
  const double s2 = sigma * sigma;
  if (r == 0.0) return e / (2.0 * kPi * kPi) * std::sqrt(0.5 * kPi) * t / (s2 * sigma) * std::exp(-t * t / (2.0 * s2));
  double c = 0.25 * std::sqrt(2.0 * kPi) / sigma;
  return e / (2.0 * kPi * kPi * r) * c *
         (std::exp(-(r - t) * (r - t) / (2.0 * s2)) - std::exp(-(r + t) * (r + t) / (2.0 * s2)));
}

SpectralResiduals spectral_residuals(double sigma, const std::vector<double>& p_probe,
                                     const std::vector<double>& t_probe, bool include_noncov, double e) {
  require(sigma > 0.0, "spectral_residuals needs sigma > 0");
  SpectralResiduals res;
  // 7-point central stencils
  static const double d1[4] = {0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  static const double d2[4] = {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
  for (double p : p_probe) {
    require(p > 0.0, "probe momenta must be positive");
    const double eJ = e * std::exp(-0.5 * sigma * sigma * p * p);
    // mode a0(t) and the longitudinal amplitude b(t) with a = i p_hat b(t)
    auto a0 = [&](double t) { return eJ * (1.0 - std::cos(p * t)) / (p * p); };
    auto b = [&](double t) { return include_noncov ? eJ * std::sin(p * t) / (p * p) : 0.0; };
    const double h = 3e-2 / p;
    for (double t : t_probe) {
      double a0t = d1[0] * a0(t), a0tt = d2[0] * a0(t), bt = 0.0, btt = d2[0] * b(t);
      for (int k = 1; k <= 3; ++k) {
        a0t += d1[k] * (a0(t + k * h) - a0(t - k * h));
        a0tt += d2[k] * (a0(t + k * h) + a0(t - k * h));
        bt += d1[k] * (b(t + k * h) - b(t - k * h));
        btt += d2[k] * (b(t + k * h) + b(t - k * h));
      }
      a0t /= h;
      bt /= h;
      a0tt /= h * h;
      btt /= h * h;
      // d_t a0 + i p.a with a = i p_hat b: i p . (i p_hat b) = -p b
      double lorenz = a0t - p * b(t);
      // div E = -lap a0 - d_t div a = p^2 a0 + p bt
      double gauss = p * p * a0(t) + p * bt - eJ;
      double wave0 = a0tt + p * p * a0(t) - eJ;
      double wavev = btt + p * p * b(t);
      res.lorenz = std::max(res.lorenz, std::abs(lorenz) / eJ);
      res.gauss = std::max(res.gauss, std::abs(gauss) / eJ);
      res.wave = std::max({res.wave, std::abs(wave0) / eJ, std::abs(wavev) / eJ});
    }
  }
  return res;
}

double A0_point_limit(double r, double t, double e) {
  require(r > 0.0 && t > 0.0, "A0_point_limit needs r, t > 0");
  const double s[3] = {r / 25.0, r / 50.0, r / 100.0};
  double v[3];
  for (int i = 0; i < 3; ++i) {
    SourceProfile src{SourceProfile::Kind::point, s[i], 1.0};
    v[i] = tree_field(src, {0.0, 0.0, r}, t, true, e).A0;
  }
  // quadratic through (s_i, v_i) evaluated at s = 0
  double L0 = s[1] * s[2] / ((s[0] - s[1]) * (s[0] - s[2]));
  double L1 = s[0] * s[2] / ((s[1] - s[0]) * (s[1] - s[2]));
  double L2 = s[0] * s[1] / ((s[2] - s[0]) * (s[2] - s[1]));
  return L0 * v[0] + L1 * v[1] + L2 * v[2];
}

DecayFit divergence_decay_fit(double sigma, double t_lo, double t_hi, int n, double e) {
  require(sigma > 0.0 && t_hi > t_lo && t_lo > 0.0 && n >= 3, "bad decay-fit window");
  SourceProfile src{SourceProfile::Kind::gaussian, sigma, 1.0};
  std::vector<double> x, y;
  for (int i = 0; i < n; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / (n - 1);
    double d = divergence_residual(src, {0.0, 0.0, 0.0}, t, e);
    if (!(d > 0.0)) throw NumericError("divergence not positive in decay window");
    x.push_back(t * t);
    y.push_back(std::log(d / t));
  }
  DecayFit f;
  f.slope = fit_line(x, y).slope;
  f.expected = -1.0 / (2.0 * sigma * sigma);
  return f;
}

}  // namespace irbath
