#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "irbath/error.hpp"
#include "irbath/kinetics.hpp"
#include "irbath/quadrature.hpp"

using namespace irbath;
using std::numbers::pi;

namespace {

const PhysicalParams kBath{1.0, 0.02, codata::alpha, 0.5};

double q_max(const PhysicalParams& p) { return std::sqrt(std::pow(1.0 + 40.0 * p.T, 2) - 1.0); }

Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng), n(rng)};
}

}  // namespace

TEST_CASE("Planck occupation") {
  const double T = 0.37;
  CHECK(planck_n(T * std::log(2.0), T) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(planck_n(10.0 * T, T) == doctest::Approx(std::exp(-10.0)).epsilon(0.01));
  CHECK(planck_n(1e-6 * T, T) == doctest::Approx(1e6).epsilon(1e-3));
  CHECK(planck_n(1e-6 * T, T) - 1e6 == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK_THROWS_AS(planck_n(0.0, T), ValidationError);
  CHECK_THROWS_AS(planck_n(1.0, 0.0), ValidationError);
}

TEST_CASE("nonrelativistic scattering probability") {
  const double e4 = kBath.e2() * kBath.e2();
  Vec3 a{0.0, 0.0, 2e-3}, b{0.0, 0.0, 5e-3}, c{3e-3, 0.0, 0.0};
  CHECK(w_nonrel(a, b, kBath) == doctest::Approx(pi * e4 / (2e-3 * 5e-3)));
  CHECK(w_nonrel(a, c, kBath) == doctest::Approx(pi * e4 / (2.0 * 2e-3 * 3e-3)));
  // isotropic average of the angular bracket
  auto avg = quad::gk(
      [&](double cth) {
        Vec3 k2{std::sqrt(1.0 - cth * cth), 0.0, cth};
        return w_nonrel(Vec3{0.0, 0.0, 1.0}, k2, kBath) * 2.0 / (pi * e4);
      },
      -1.0, 1.0);
  CHECK(0.5 * avg.value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("Dirac trace reduces to the Thomson form") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    Vec3 q = random_vec(rng, 3e-4), k2 = random_vec(rng, 3e-4), dir = random_vec(rng, 1.0);
    Vec3 n1 = (1.0 / norm(dir)) * dir;
    Vec3 k1 = compton_energy(1.0, q, k2, n1) * n1;
    double wt = w_trace(q, k1, k2, kBath), wn = w_nonrel(k1, k2, kBath);
    CHECK(std::abs(wt / wn - 1.0) <= 0.01);
    // reversed process: q + k2 - k1 absorbs k1 and emits k2
    Vec3 qr = q + k2 - k1;
    double back = w_trace(qr, k2, k1, kBath);
    CHECK(std::abs(back - wt) <= 1e-9 * wt);
  }
}

TEST_CASE("deviation from the Thomson form is first order in v") {
  auto dev = [](double s) {
    Vec3 q{0.2 * s, -0.3 * s, 0.1 * s}, k2{0.5 * s, 0.0, -0.5 * s}, n1{0.0, 0.8, 0.6};
    Vec3 k1 = compton_energy(1.0, q, k2, n1) * n1;
    return std::abs(w_trace(q, k1, k2, kBath) / w_nonrel(k1, k2, kBath) - 1.0);
  };
  double order = std::log2(dev(4e-3) / dev(2e-3));
  CHECK(order == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("Compton kinematics conserve energy") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    Vec3 q = random_vec(rng, 0.1), k = random_vec(rng, 0.05), d = random_vec(rng, 1.0);
    Vec3 n1 = (1.0 / norm(d)) * d;
    double w = compton_energy(1.0, q, k, n1);
    Vec3 out = q + k - w * n1;
    CHECK(energy(1.0, q) + norm(k) == doctest::Approx(energy(1.0, out) + w).epsilon(1e-13));
  }
}

TEST_CASE("collision rate obeys detailed balance") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    Vec3 q = random_vec(rng, 0.1), k = random_vec(rng, 0.04);
    double fwd = collision_rate(q, k, kBath);
    double rev = collision_rate(q + k, -1.0 * k, kBath);
    if (fwd == 0.0 && rev == 0.0) continue;
    ++checked;
    double lhs = fwd * std::exp(-energy(1.0, q + k) / kBath.T);
    double rhs = rev * std::exp(-energy(1.0, q) / kBath.T);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * rhs);
  }
  CHECK(checked > 10);
  CHECK(collision_rate({0.1, 0.0, 0.0}, {0.0, 0.0, 0.0}, kBath) == 0.0);
}

TEST_CASE("shell kernel obeys detailed balance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.4);
  for (int i = 0; i < 30; ++i) {
    double a = u(rng), b = u(rng);
    // K(a -> b) exp(-eps_a / T) = K(b -> a) exp(-eps_b / T)
    double ea = energy(1.0, {0.0, 0.0, a}), eb = energy(1.0, {0.0, 0.0, b});
    double lhs = shell_kernel(a, b, kBath);
    double rhs = shell_kernel(b, a, kBath) * std::exp(-(eb - ea) / kBath.T);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * lhs);
  }
}

TEST_CASE("slow electron scatters at the Thomson rate") {
  PhysicalParams p{1.0, 1e-3, codata::alpha, 0.5};
  KineticsOptions o;
  o.stimulated = false;
  const double zeta3 = 1.2020569031595942;
  double sigma_n = 8.0 * pi * p.alpha * p.alpha / 3.0 * 2.0 * zeta3 * std::pow(p.T, 3) / (pi * pi);
  CHECK(thomson_rate(p) == doctest::Approx(sigma_n).epsilon(1e-14));
  CHECK(total_out_rate({0.0, 0.0, 0.0}, p, o) == doctest::Approx(sigma_n).epsilon(0.1));
}

TEST_CASE("distributions") {
  auto b = MomentumDistribution::boltzmann(1.0, 0.02, q_max(kBath), 40);
  CHECK(b.trace() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.q.front() == doctest::Approx(0.5 * b.dq));
  auto N = b.populations();
  double s = 0.0;
  for (double v : N) s += v;
  CHECK(s == doctest::Approx(1.0));
  auto half = N;
  for (auto& v : half) v *= 0.5;
  b.set_populations(half);
  CHECK(b.trace() == doctest::Approx(0.5));
}

TEST_CASE("master equation stationarity and conservation") {
  const int n = 40;
  auto bath = MomentumDistribution::boltzmann(1.0, kBath.T, q_max(kBath), n);
  CollisionMatrix C(bath.q, bath.dq, kBath, {}, 4);
  double eq = equilibrium_residual(C, bath);
  CHECK(eq <= 1e-8);
  CHECK(std::abs(energy_drift(C, bath)) <= 1e-8 * std::abs(energy_drift(C, MomentumDistribution::boltzmann(
                                                                                   1.0, 2.0 * kBath.T, q_max(kBath), n))));

  auto cold = MomentumDistribution::boltzmann(1.0, 0.5 * kBath.T, q_max(kBath), n);
  double rc = equilibrium_residual(C, cold);
  CHECK(rc > 0.0);
  CHECK(rc > 10.0 * eq);
  auto shell = MomentumDistribution::shell(0.2, 0.05, q_max(kBath), n);
  CHECK(equilibrium_residual(C, shell) > 0.0);

  double dt = 0.01 / C.max_out_rate();
  for (auto rho : {shell, cold}) {
    for (int k = 0; k < 20; ++k) {
      auto r = step(C, rho, dt);
      CHECK(r.accepted);
      CHECK(std::abs(r.rho.trace() - rho.trace()) <= 1e-10);
      rho = r.rho;
    }
  }
  CHECK_THROWS_AS(step(C, shell, 0.02 / C.max_out_rate()), ValidationError);

  // rates out of a shell sum to the loss term
  std::vector<double> unit(n, 0.0), gain, loss;
  unit[7] = 1.0;
  C.gain_loss(unit, gain, loss);
  double out = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != 7) out += C.rate(i, 7);
  CHECK(loss[7] == doctest::Approx(out).epsilon(1e-12));
}

TEST_CASE("hot electrons cool monotonically and match the Monte Carlo drift") {
  const int n = 40;
  auto hot = MomentumDistribution::boltzmann(1.0, 2.0 * kBath.T, q_max(kBath), n);
  CollisionMatrix C(hot.q, hot.dq, kBath, {}, 4);
  const double ref = kBath.alpha * kBath.alpha * std::pow(kBath.T, 3);
  auto run = relax(C, hot, 2.0 / ref, 0.01, 10, 2);
  CHECK(run.monotone);
  CHECK(run.max_trace_drift <= 1e-10);
  CHECK(run.history.back().mean_energy < run.history.front().mean_energy);
  CHECK(run.history.back().mean_energy > run.equilibrium_energy);

  double dm = energy_drift(C, hot);
  CHECK(dm < 0.0);
  auto mc = energy_drift_mc(hot, kBath, 50000, 99, 4);
  CHECK(std::abs(mc.value - dm) <= 4.0 * mc.std_error + 0.02 * std::abs(dm));
  auto again = energy_drift_mc(hot, kBath, 50000, 99, 1);
  CHECK(again.value == mc.value);
}
