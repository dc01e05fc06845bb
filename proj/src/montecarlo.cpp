#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "irbath/error.hpp"
#include "irbath/kinetics.hpp"
#include "irbath/parallel.hpp"
#include "irbath/rng.hpp"

namespace irbath {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeta3 = 1.2020569031595942;

// Inverse CDF of the photon number spectrum x^2/(e^x - 1), x = P/T,
// tabulated on [0, 50].
class PlanckSampler {
 public:
  PlanckSampler() : x_(kN + 1), cdf_(kN + 1) {
    const double h = kXmax / kN;
    auto f = [](double x) { return x > 0.0 ? x * x / std::expm1(x) : 0.0; };
    cdf_[0] = 0.0;
    for (int i = 0; i <= kN; ++i) x_[i] = h * i;
    for (int i = 1; i <= kN; ++i) {
      double a = x_[i - 1], b = x_[i];
      cdf_[i] = cdf_[i - 1] + (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    for (auto& c : cdf_) c /= cdf_.back();
  }

  double sample(double u) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    auto i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - cdf_.begin(), 1, kN));
    double c0 = cdf_[i - 1], c1 = cdf_[i];
    double s = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
    return x_[i - 1] + s * (x_[i] - x_[i - 1]);
  }

 private:
  static constexpr int kN = 20000;
  static constexpr double kXmax = 50.0;
  std::vector<double> x_, cdf_;
};

Vec3 isotropic(CounterRng& g) {
  double c = 2.0 * g.uniform() - 1.0;
  double phi = 2.0 * kPi * g.uniform();
  double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return {s * std::cos(phi), s * std::sin(phi), c};
}

// mu with density (3/8)(1 + mu^2) on [-1, 1]: root of mu^3 + 3 mu + 4 - 8u = 0.
double dipole_cosine(double u) {
  double r = 4.0 * u - 2.0;
  double d = std::sqrt(r * r + 1.0);
  return std::cbrt(r + d) + std::cbrt(r - d);
}

// Unit vector at polar cosine mu from axis a.
Vec3 rotate_from(const Vec3& a, double mu, double phi) {
  Vec3 t = std::abs(a[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = t - dot(t, a) * a;
  e1 = (1.0 / norm(e1)) * e1;
  Vec3 e2{a[1] * e1[2] - a[2] * e1[1], a[2] * e1[0] - a[0] * e1[2], a[0] * e1[1] - a[1] * e1[0]};
  double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  return mu * a + (s * std::cos(phi)) * e1 + (s * std::sin(phi)) * e2;
}

}  // namespace

MonteCarloEstimate energy_drift_mc(const MomentumDistribution& rho, const PhysicalParams& params,
                                   std::uint64_t samples_per_shell, std::uint64_t seed, int threads,
                                   bool stimulated) {
  require(params.T > 0.0 && params.m > 0.0, "Monte Carlo needs m > 0 and T > 0");
  require(samples_per_shell >= 2, "Monte Carlo needs at least 2 samples per shell");
  static const PlanckSampler sampler;
  const double m = params.m, T = params.T;
  const auto N = rho.populations();
  struct Shell {
    double mean = 0.0, var = 0.0;
  };
  auto shells = parallel_map<Shell>(N.size(), threads, [&](std::size_t i) {
    CounterRng g(seed, i);
    const double eps = std::sqrt(m * m + rho.q[i] * rho.q[i]);
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t s = 0; s < samples_per_shell; ++s) {
      Vec3 Q = rho.q[i] * isotropic(g);
      double P = T * sampler.sample(g.uniform());
      Vec3 pin = isotropic(g);
      Vec3 nout = rotate_from(pin, dipole_cosine(g.uniform()), 2.0 * kPi * g.uniform());
      double Pout = compton_energy(m, Q, P * pin, nout);
      Vec3 Qf = Q + P * pin - Pout * nout;
      double ef = energy(m, Qf);
      double vn = dot(Qf, nout) / ef;
      double w = (Pout / P) / std::abs(1.0 - vn);
      if (stimulated) w *= 1.0 + 1.0 / std::expm1(Pout / T);
      double x = w * (ef - eps);
      sum += x;
      sum2 += x * x;
    }
    double n = static_cast<double>(samples_per_shell);
    Shell sh;
    sh.mean = sum / n;
    sh.var = std::max(0.0, (sum2 / n - sh.mean * sh.mean) / (n - 1.0));
    return sh;
  });
  const double pref = params.e2() * params.e2() / (3.0 * kPi * m * m) * kZeta3 * T * T * T / (kPi * kPi);
  MonteCarloEstimate est;
  double var = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    est.value += N[i] * pref * shells[i].mean;
    var += N[i] * N[i] * pref * pref * shells[i].var;
  }
  est.std_error = std::sqrt(var);
  return est;
}

}  // namespace irbath
