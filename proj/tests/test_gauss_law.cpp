#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "irbath/error.hpp"
#include "irbath/gauss_law.hpp"
#include "irbath/quadrature.hpp"

using namespace irbath;
using std::numbers::pi;

namespace {

const double kE = std::sqrt(4.0 * pi / 137.035999);
const SourceProfile kSrc{SourceProfile::Kind::gaussian, 1.0, 1.0};

// Retarded potential of the Gaussian charge switched on at t = 0, summed over
// spherical shells of the source: only the part of each shell within
// distance t of the probe contributes.
double retarded_A0(double r, double t, double sigma) {
  auto rho = [&](double s) { return std::exp(-s * s / (2.0 * sigma * sigma)) / std::pow(2.0 * pi * sigma * sigma, 1.5); };
  auto f = [&](double s) {
    double len = std::max(0.0, std::min(t, r + s) - std::abs(r - s));
    return 4.0 * pi * s * s * rho(s) * len / (2.0 * r * s) / (4.0 * pi);
  };
  double hi = 12.0 * sigma + r;
  std::vector<double> cuts{0.0, std::abs(r - t), r + t, hi};
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) sum += quad::gk(f, cuts[i], std::min(cuts[i + 1], hi), 1e-13).value;
  return kE * sum;
}

}  // namespace

TEST_CASE("potential of a smeared charge against the retarded shell sum") {
  for (double r : {0.5, 3.0, 10.0})
    for (double t : {0.3, 2.0, 9.0, 14.0}) {
      double oracle = retarded_A0(r, t, 1.0);
      double closed = gaussian_A0_closed(r, t, 1.0, kE);
      double field = tree_field(kSrc, {0.0, r, 0.0}, t, false, kE).A0;
      double scale = kE / (4.0 * pi * r);
      CHECK(std::abs(closed - oracle) <= 1e-10 * scale);
      CHECK(std::abs(field - closed) <= 1e-8 * scale);
    }
  CHECK(tree_field(kSrc, {0.0, 0.0, 0.0}, 2.0, false, kE).A0 == doctest::Approx(gaussian_A0_closed(0.0, 2.0, 1.0, kE)));
}

TEST_CASE("Coulomb field appears behind the light front") {
  const double r = 30.0, coul = kE / (4.0 * pi * r);
  for (bool noncov : {false, true}) {
    CHECK(std::abs(tree_field(kSrc, {r, 0.0, 0.0}, r - 6.0, noncov, kE).A0) <= 0.01 * coul);
    CHECK(tree_field(kSrc, {r, 0.0, 0.0}, r + 6.0, noncov, kE).A0 == doctest::Approx(coul).epsilon(0.01));
  }
}

TEST_CASE("vector potential exists only with the non-covariant term") {
  Vec3 x{3.0, -4.0, 12.0};
  double r = norm(x);
  for (double t : {5.0, r, 20.0}) {
    auto plain = tree_field(kSrc, x, t, false, kE);
    auto full = tree_field(kSrc, x, t, true, kE);
    CHECK(plain.A[0] == 0.0);
    CHECK(plain.A[1] == 0.0);
    CHECK(plain.A[2] == 0.0);
    CHECK(full.A0 == plain.A0);
    // radial, hence curl free
    Vec3 c{full.A[1] * x[2] - full.A[2] * x[1], full.A[2] * x[0] - full.A[0] * x[2], full.A[0] * x[1] - full.A[1] * x[0]};
    CHECK(norm(c) <= 1e-14 * norm(full.A) * r);
  }
  CHECK(norm(tree_field(kSrc, x, r, true, kE).A) > 1e-3 * kE / (4.0 * pi * r));
}

TEST_CASE("divergence without the non-covariant term") {
  CHECK(divergence_residual(kSrc, {0.0, 0.0, 2.0}, 0.0, kE) == 0.0);
  CHECK(divergence_residual(kSrc, {0.0, 0.0, 2.0}, 3.0, kE, true) == 0.0);
  for (double t : {0.5, 1.5, 3.0}) {
    double closed = gaussian_divergence_closed(0.0, t, 1.0, kE);
    CHECK(divergence_residual(kSrc, {0.0, 0.0, 0.0}, t, kE) == doctest::Approx(closed).epsilon(1e-6));
    // sqrt(pi/2) t / sigma^3 exp(-t^2 / 2 sigma^2) is the p-integral
    CHECK(closed == doctest::Approx(kE / (2.0 * pi * pi) * std::sqrt(pi / 2.0) * t * std::exp(-t * t / 2.0)));
  }
  for (double r : {1.0, 4.0})
    for (double t : {0.5, 4.0}) {
      double closed = gaussian_divergence_closed(r, t, 1.0, kE);
      double num = divergence_residual(kSrc, {r, 0.0, 0.0}, t, kE);
      CHECK(std::abs(num - closed) <= 1e-8 * kE / (4.0 * pi * r));
    }
  CHECK_THROWS_AS(divergence_residual(kSrc, {0.0, 0.0, 0.0}, -1.0, kE), ValidationError);
}

TEST_CASE("divergence decays as a Gaussian in t") {
  for (double sigma : {0.5, 1.0, 2.0}) {
    auto d = divergence_decay_fit(sigma, 2.0 * sigma, 5.0 * sigma, 13, kE);
    CHECK(d.expected == doctest::Approx(-0.5 / (sigma * sigma)));
    CHECK(d.slope / d.expected == doctest::Approx(1.0).epsilon(0.05));
  }
  CHECK_THROWS_AS(divergence_decay_fit(1.0, 3.0, 2.0, 13, kE), ValidationError);
}

TEST_CASE("mode equations") {
  std::vector<double> p, t;
  for (int i = 1; i <= 6; ++i) p.push_back(0.7 * i);
  for (int i = 0; i < 4; ++i) t.push_back(0.9 + 2.3 * i);
  auto with = spectral_residuals(1.0, p, t, true, kE);
  CHECK(with.lorenz <= 1e-10);
  CHECK(with.gauss <= 1e-10);
  CHECK(with.wave <= 1e-10);
  auto without = spectral_residuals(1.0, p, t, false, kE);
  CHECK(without.wave <= 1e-10);
  CHECK(without.lorenz > 0.1);
  CHECK(without.gauss > 0.1);
}

TEST_CASE("point-source limit is a sharp front") {
  const double r = 10.0, coul = kE / (4.0 * pi * r);
  CHECK(A0_point_limit(r, 2.0 * r, kE) == doctest::Approx(coul).epsilon(1e-6));
  CHECK(std::abs(A0_point_limit(r, 0.5 * r, kE)) <= 1e-6 * coul);
  SourceProfile point{SourceProfile::Kind::point, 0.0, 1.0};
  CHECK(point.width_at(10.0) == doctest::Approx(0.2));
  CHECK(point.spectrum(0.0, 0.2) == 1.0);
  CHECK_THROWS_AS(point.width_at(0.0), ValidationError);
  CHECK_THROWS_AS(tree_field(kSrc, {1.0, 0.0, 0.0}, 0.0, false, kE), ValidationError);
}
