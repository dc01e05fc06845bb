#include <iomanip>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "irbath/error.hpp"
#include "irbath/ir_kernel.hpp"
#include "irbath/kinetics.hpp"
#include "irbath/quadrature.hpp"

using namespace irbath;
using std::numbers::pi;

namespace {

const PhysicalParams kThermal{1.0, 1e-4, codata::alpha, 0.1};

Vec4 random_k(std::mt19937_64& rng, bool on_shell) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 k{n(rng), n(rng), n(rng)};
  double k0 = on_shell ? (n(rng) > 0 ? 1.0 : -1.0) * norm(k) : n(rng);
  return {k0, k[0], k[1], k[2]};
}

std::vector<double> log_times(double lo, double hi, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return t;
}

double thermal_slope(const PhysicalParams& P, const Vec3& p) {
  KernelInput in;
  in.p = p;
  in.params = P;
  KernelOptions ko;
  ko.vacuum = false;
  auto ts = log_times(10.0 / P.T, 100.0 / P.T, 8);
  std::vector<double> g;
  for (double t : ts) {
    in.t = t;
    g.push_back(exponent(in, ko).g.real());
  }
  return asymptotic_fit(ts, g).linear;
}

}  // namespace

TEST_CASE("Coulomb projector") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    Vec4 k = random_k(rng, i % 2 == 0);
    auto d = coulomb_projector(k);
    auto c = vertex_contraction(k);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        CHECK(d[a][b] == d[b][a]);
        CHECK(std::abs(c[a][b] - d[a][b]) <= 1e-12 * (1.0 + std::abs(d[a][b])));
      }
    if (i % 2 == 0) CHECK(std::abs(d[0][0]) <= 1e-14);
  }
  Vec4 k{0.3, 0.0, 0.0, 0.5};
  CHECK(coulomb_projector(k)[0][0] == doctest::Approx(1.0 - 0.09 / 0.25));
  CHECK_THROWS_AS(coulomb_projector(Vec4{1.0, 0.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("radial integrals against direct quadrature") {
  const double T = 1e-3;
  for (double Lambda : {0.01, 0.1}) {
    for (double y : {0.0, 50.0, 3e3}) {
      auto f = [&](double k) {
        double s = std::sin(0.5 * y * k);
        return planck_n(k, T) * 2.0 * s * s / k;
      };
      double w = y > 0.0 ? std::min(Lambda, pi / (2.0 * y)) : Lambda;
      auto ref = quad::panels(f, 0.0, Lambda, w, 1e-13);
      INFO("Lambda " << Lambda << " y " << y << " got " << std::setprecision(17) << thermal_radial(y, T, Lambda) << " ref " << ref.value);
      CHECK(thermal_radial(y, T, Lambda) == doctest::Approx(ref.value).epsilon(1e-9).scale(1e-300));
    }
  }
  for (double z : {-30.0, -0.4, 0.0, 1e-3, 0.9, 1.1, 7.0, 250.0}) {
    auto f = [](double u) { return u == 0.0 ? cplx(0.0, 1.0) : (std::polar(1.0, u) - 1.0) / u; };
    auto ref = z >= 0.0 ? quad::panels(f, 0.0, z, 1.0, 1e-14).value : -quad::panels(f, z, 0.0, 1.0, 1e-14).value;
    auto got = vacuum_radial(z);
    CHECK(std::abs(got - ref) <= 1e-11 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("kernel vanishes at t = 0") {
  KernelInput in;
  in.q = {1e-3, 0.0, 2e-3};
  in.p = {0.0, 1e-3, 0.0};
  in.params = kThermal;
  auto r = exponent(in);
  CHECK(std::abs(r.g11) == 0.0);
  CHECK(std::abs(r.g21) == 0.0);
  CHECK(std::abs(r.g) == 0.0);
}

TEST_CASE("semi-analytic kernel against brute-force quadrature") {
  KernelInput in;
  in.q = {2e-3, 0.0, 1e-3};
  in.p = {0.0, 1e-3, 2e-3};
  in.params = PhysicalParams{1.0, 1e-4, codata::alpha, 0.01};
  in.t = 150.0;
  KernelOptions ko;
  ko.rel_tol = 1e-10;
  auto compare = [&] {
    for (auto [r, s] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
      cplx a = g_rs(r, s, in, ko), b = g_rs_direct(r, s, in, 1e-8, 16);
      CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
    }
  };
  compare();
  // collinear momenta with the cutoff close to T, where the radial tail is numeric
  in.q = {0.0, 0.0, 2e-3};
  in.p = {0.0, 0.0, -1e-3};
  in.params.T = 1e-3;
  compare();
}

TEST_CASE("diagonal indices swap when q and q+p are exchanged") {
  // eta flips sign between the two lines, so the swap comes with complex conjugation
  KernelInput a;
  a.q = {1e-3, -2e-3, 0.5e-3};
  a.p = {0.7e-3, 0.4e-3, -1e-3};
  a.t = 2e5;
  a.params = kThermal;
  KernelInput b = a;
  b.q = a.q + a.p;
  b.p = -1.0 * a.p;
  CHECK(std::abs(g_rs(1, 1, a) - std::conj(g_rs(2, 2, b))) <= 1e-9 * std::abs(g_rs(1, 1, a)));
  CHECK(std::abs(g_rs(2, 2, a) - std::conj(g_rs(1, 1, b))) <= 1e-9 * std::abs(g_rs(2, 2, a)));
}

TEST_CASE("no growth without momentum transfer") {
  KernelInput in;
  in.q = {2e-4, 1e-4, 0.0};
  in.params = kThermal;
  for (double Tt : {10.0, 100.0, 1000.0}) {
    in.t = Tt / kThermal.T;
    auto r = exponent(in);
    CHECK(std::abs(r.g) <= 1e-9 * std::abs(r.g11));
  }
}

TEST_CASE("exponent damps") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  std::uniform_real_distribution<double> lt(1.0, 6.0);
  for (int i = 0; i < 12; ++i) {
    KernelInput in;
    in.q = {u(rng), u(rng), u(rng)};
    in.p = {u(rng), u(rng), u(rng)};
    in.t = std::pow(10.0, lt(rng));
    in.params = kThermal;
    if (i % 3 == 0) in.params.T = 0.0;
    auto r = exponent(in);
    CHECK(std::abs(std::exp(0.5 * in.params.e2() * r.g)) <= 1.0 + 1e-3);
    CHECK(std::isfinite(r.error));
  }
}

TEST_CASE("thermal exponent at Tt = 50") {
  KernelInput in;
  in.p = {0.0, 0.0, 1e-3};
  in.params = kThermal;
  in.t = 50.0 / kThermal.T;
  double got = 0.5 * kThermal.e2() * exponent(in).g.real();
  double expect = -2.0 * kThermal.alpha * norm2(in.p) * kThermal.T * in.t / 3.0;
  CHECK(got == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("thermal slope is linear in T and insensitive to the cutoff") {
  Vec3 p{0.0, 0.0, 1e-3};
  double a = thermal_slope(kThermal, p);
  CHECK(a == doctest::Approx(-norm2(p) * kThermal.T / (3.0 * pi)).epsilon(0.05));
  PhysicalParams hot = kThermal;
  hot.T *= 2.0;
  CHECK(thermal_slope(hot, p) / a == doctest::Approx(2.0).epsilon(0.05));
  PhysicalParams soft = kThermal;
  soft.Lambda /= 2.0;
  CHECK(thermal_slope(soft, p) == doctest::Approx(a).epsilon(0.02));
}

TEST_CASE("input validation") {
  KernelInput in;
  in.p = {0.0, 0.0, 0.02};
  in.params = kThermal;
  in.t = 1.0;
  CHECK_THROWS_AS(g_rs(1, 1, in), ValidationError);
  in.p = {0.0, 0.0, 1e-3};
  CHECK_THROWS_AS(g_rs(0, 1, in), ValidationError);
  in.t = -1.0;
  CHECK_THROWS_AS(g_rs(1, 2, in), ValidationError);
}

TEST_CASE("asymptotic fit") {
  std::vector<double> t = log_times(1e3, 1e5, 12), y;
  for (double s : t) y.push_back(-2.5e-7 * s + 3e-3 * std::log(s) - 0.7);
  auto f = asymptotic_fit(t, y);
  CHECK(f.linear == doctest::Approx(-2.5e-7).epsilon(1e-8));
  CHECK(f.log == doctest::Approx(3e-3).epsilon(1e-8));
  CHECK(f.constant == doctest::Approx(-0.7).epsilon(1e-8));
  CHECK(f.residual <= 1e-12);
  CHECK_THROWS_AS(asymptotic_fit({1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(asymptotic_fit({1.0, 1.1, 1.2, 1.3}, {0.0, 1.0, 2.0, 3.0}), ValidationError);
}

TEST_CASE("eikonal factorization") {
  Vec4 q{1.0, 0.1, -0.2, 0.05};
  Vec4 w1{0.3, 0.1, 0.0, 0.2}, w2{0.5, -0.2, 0.3, 0.0};
  auto c = eikonal_factorization_check(q, {w1, w2}, 0.0);
  double a = mdot(w1, q), b = mdot(w2, q);
  CHECK(std::abs(c.lhs - 1.0 / (a * (a + b)) - 1.0 / (b * (a + b))) <= 1e-12 * std::abs(c.lhs));
  CHECK(std::abs(c.rhs - 1.0 / (a * b)) <= 1e-12 * std::abs(c.rhs));

  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int m : {3, 4, 5}) {
    std::vector<Vec4> w;
    for (int k = 0; k < m; ++k) w.push_back({std::abs(n(rng)) + 0.2, n(rng), n(rng), n(rng)});
    auto e = eikonal_factorization_check(q, w, 0.01);
    CHECK(std::abs(e.lhs - e.rhs) <= 1e-9 * std::abs(e.rhs));
  }
  Vec4 w3{-0.3, -0.1, 0.0, -0.2};
  CHECK_THROWS_AS(eikonal_factorization_check(q, {w1, w3}, 0.0), ValidationError);
  CHECK_THROWS_AS(eikonal_factorization_check(q, {w1}, 0.0), ValidationError);
}

TEST_CASE("delta identity") {
  CHECK(delta_identity_check(1.0) == doctest::Approx(2.0 * pi).epsilon(1e-6));
  CHECK(delta_identity_check(10.0) == doctest::Approx(20.0 * pi).epsilon(1e-6));
  for (double t : {0.3, 2.0, 17.0}) CHECK(delta_identity_check(2.0 * t) / delta_identity_check(t) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(delta_identity_check(0.0), ValidationError);
}
