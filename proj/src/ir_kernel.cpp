#include "irbath/ir_kernel.hpp"

#include <gsl/gsl_sf_expint.h>

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "irbath/error.hpp"
#include "irbath/quadrature.hpp"

namespace irbath {

namespace {

constexpr double kPi = std::numbers::pi;

Vec4 lower(const Vec4& k) { return {k[0], -k[1], -k[2], -k[3]}; }

double metric(int mu, int nu) { return mu != nu ? 0.0 : (mu == 0 ? 1.0 : -1.0); }

double spatial_norm2(const Vec4& k) { return k[1] * k[1] + k[2] * k[2] + k[3] * k[3]; }

// log(sinh z / z) without cancellation at either end.
double log_sinhc(double z) {
  if (z < 0.5) {
    double z2 = z * z;
    double s = z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0 * (1.0 + z2 / 72.0 * (1.0 + z2 / 110.0))));
    return std::log1p(s);
  }
  if (z < 20.0) return std::log(std::sinh(z) / z);
  return z - std::numbers::ln2 - std::log(z) + std::log1p(-std::exp(-2.0 * z));
}

double planck(double k, double T) { return 1.0 / std::expm1(k / T); }

}  // namespace

Tensor4 coulomb_projector(const Vec4& k) {
  double k2 = spatial_norm2(k);
  require(k2 > 0.0, "coulomb_projector needs |k| > 0");
  Vec4 kl = lower(k);
  const Vec4 n{1.0, 0.0, 0.0, 0.0};
  Tensor4 d{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      d[mu][nu] = metric(mu, nu) - (k[0] * kl[mu] * n[nu] + k[0] * kl[nu] * n[mu] - kl[mu] * kl[nu]) / k2;
  return d;
}

Tensor4 lorentz_vertex(const Vec4& k) {
  double k2 = spatial_norm2(k);
  require(k2 > 0.0, "lorentz_vertex needs |k| > 0");
  Vec4 kl = lower(k);
  const Vec4 n{1.0, 0.0, 0.0, 0.0};
  Tensor4 g{};
  for (int mu = 0; mu < 4; ++mu)
    for (int a = 0; a < 4; ++a) g[mu][a] = (mu == a ? 1.0 : 0.0) + kl[a] * (k[mu] - n[mu] * k[0]) / k2;
  return g;
}

Tensor4 vertex_contraction(const Vec4& k) {
  Tensor4 g = lorentz_vertex(k);
  Tensor4 c{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int mu = 0; mu < 4; ++mu) s += g[mu][a] * metric(mu, mu) * g[mu][b];
      c[a][b] = s;
    }
  return c;
}

double thermal_radial(double y, double T, double Lambda) {
  if (y == 0.0 || T == 0.0) return 0.0;
  y = std::abs(y);
  double full = 0.5 * log_sinhc(kPi * T * y);
  if (Lambda >= 40.0 * T) return full;
  // Remove the part of the spectrum above the soft threshold.
  auto f = [&](double k) { return planck(k, T) * (1.0 - std::cos(y * k)) / k; };
  double width = std::min(0.5 * kPi / y, T);
  auto tail = quad::panels(f, Lambda, Lambda + 45.0 * T, width, 1e-12);
  return full - tail.value;
}

cplx vacuum_radial(double z) {
  double a = std::abs(z);
  if (a == 0.0) return 0.0;
  double re, im;
  if (a < 1.0) {
    // -Cin(a) and Si(a) by their power series.
    double a2 = a * a, term = 1.0, cin = 0.0, si = 0.0;
    for (int k = 1; k < 30; ++k) {
      term *= a2 / ((2.0 * k - 1.0) * (2.0 * k));
      double c = term / (2.0 * k);
      cin += (k % 2 ? c : -c);
      if (c < 1e-18 * cin) break;
    }
    term = a;
    si = a;
    for (int k = 1; k < 30; ++k) {
      term *= -a2 / ((2.0 * k) * (2.0 * k + 1.0));
      si += term / (2.0 * k + 1.0);
      if (std::abs(term) < 1e-18 * si) break;
    }
    re = -cin;
    im = si;
  } else {
    re = gsl_sf_Ci(a) - std::numbers::egamma - std::log(a);
    im = gsl_sf_Si(a);
  }
  return {re, z < 0.0 ? -im : im};
}

namespace {

struct Frame {
  Vec3 e, e1, e2;
  bool axial = false;
};

Vec3 unit(const Vec3& v) { return (1.0 / norm(v)) * v; }

Frame make_frame(const Vec3& vr, const Vec3& vs) {
  Frame f;
  Vec3 dv = vs - vr;
  if (norm(dv) > 0.0)
    f.e = unit(dv);
  else if (norm(vr) > 0.0)
    f.e = unit(vr);
  else
    f.e = {0.0, 0.0, 1.0};
  Vec3 trial = std::abs(f.e[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  f.e1 = unit(trial - dot(trial, f.e) * f.e);
  f.e2 = {f.e[1] * f.e1[2] - f.e[2] * f.e1[1], f.e[2] * f.e1[0] - f.e[0] * f.e1[2], f.e[0] * f.e1[1] - f.e[1] * f.e1[0]};
  auto along = [&](const Vec3& v) { return norm(v - dot(v, f.e) * f.e) <= 1e-12 * norm(v); };
  f.axial = along(vr) && along(vs);
  return f;
}

int eta(int r) { return r == 1 ? 1 : -1; }

void check_input(int r, int s, const KernelInput& in) {
  require((r == 1 || r == 2) && (s == 1 || s == 2), "g_rs indices must be 1 or 2");
  in.params.validate();
  require(in.t >= 0.0, "g_rs needs t >= 0");
  double lim = 0.01 * in.params.m;
  require(norm(in.q) <= lim && norm(in.p) <= lim, "g_rs needs |q|, |p| <= 0.01 m");
}

}  // namespace

cplx g_rs(int r, int s, const KernelInput& in, const KernelOptions& opt, double* error) {
  check_input(r, s, in);
  if (error) *error = 0.0;
  if (in.t == 0.0) return 0.0;
  const double m = in.params.m, T = in.params.T, Lam = in.params.Lambda, t = in.t;
  const Vec3 v1 = (1.0 / energy(m, in.q)) * in.q;
  const Vec3 qp = in.q + in.p;
  const Vec3 v2 = (1.0 / energy(m, qp)) * qp;
  const Vec3& vr = r == 1 ? v1 : v2;
  const Vec3& vs = s == 1 ? v1 : v2;
  const int er = eta(r), es = eta(s);
  const Frame fr = make_frame(vr, vs);
  const bool thermal = opt.thermal && T > 0.0;
  const int nphi = fr.axial ? 1 : std::max(4, opt.n_phi);

  auto direction_term = [&](double c, double phi) -> cplx {
    double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
    Vec3 n = c * fr.e + (sn * std::cos(phi)) * fr.e1 + (sn * std::sin(phi)) * fr.e2;
    double cr = dot(n, vr), cs = dot(n, vs);
    double P = (dot(vr, vs) - cr * cs) / ((1.0 - cr) * (1.0 - cs));
    double X1 = cs - cr, X2 = -er * (1.0 - cr), X3 = -es * (1.0 - cs);
    cplx b = 0.0;
    if (opt.vacuum) b += vacuum_radial(X1 * Lam * t) - vacuum_radial(X2 * Lam * t) - vacuum_radial(X3 * Lam * t);
    if (thermal)
      b += 2.0 * (-thermal_radial(X1 * t, T, Lam) + thermal_radial(X2 * t, T, Lam) + thermal_radial(X3 * t, T, Lam));
    return P * b;
  };
  auto over_phi = [&](double c) -> cplx {
    if (nphi == 1) return 2.0 * kPi * direction_term(c, 0.0);
    cplx acc = 0.0;
    for (int j = 0; j < nphi; ++j) acc += direction_term(c, 2.0 * kPi * j / nphi);
    return acc * (2.0 * kPi / nphi);
  };
  auto lo = quad::gk(over_phi, -1.0, 0.0, opt.rel_tol, 18);
  auto hi = quad::gk(over_phi, 0.0, 1.0, opt.rel_tol, 18);
  const double pref = -er * es / (16.0 * kPi * kPi * kPi);
  if (error) *error = std::abs(pref) * (lo.error + hi.error);
  return pref * (lo.value + hi.value);
}

ExponentResult exponent(const KernelInput& in, const KernelOptions& opt) {
  ExponentResult res;
  double e11 = 0.0, e22 = 0.0, e21 = 0.0;
  res.g11 = g_rs(1, 1, in, opt, &e11);
  res.g22 = g_rs(2, 2, in, opt, &e22);
  res.g21 = g_rs(2, 1, in, opt, &e21);
  res.g = res.g11 + res.g22 + 2.0 * res.g21;
  res.error = e11 + e22 + 2.0 * e21;
  return res;
}

cplx g_rs_direct(int r, int s, const KernelInput& in, double rel_tol, int n_phi) {
  check_input(r, s, in);
  if (in.t == 0.0) return 0.0;
  using GL = boost::math::quadrature::gauss<double, 30>;
  const double m = in.params.m, T = in.params.T, Lam = in.params.Lambda, t = in.t;
  const Vec4 q1 = on_shell(m, in.q);
  const Vec4 q2 = on_shell(m, in.q + in.p);
  const Vec4& qr = r == 1 ? q1 : q2;
  const Vec4& qs = s == 1 ? q1 : q2;
  const int er = eta(r), es = eta(s);

  auto integrand = [&](double kk, double c, double phi, int sigma) -> cplx {
    double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
    Vec4 k{sigma * kk, kk * sn * std::cos(phi), kk * sn * std::sin(phi), kk * c};
    Tensor4 d = coulomb_projector(k);
    double num = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) num += d[mu][nu] * qr[mu] * qs[nu];
    double kqr = mdot(k, qr), kqs = mdot(k, qs);
    double ar = kqr / qr[0], as = kqs / qs[0];
    // e^{i th} - 1 = 2i sin(th/2) e^{i th/2} keeps the small-k cancellation exact
    auto em1 = [](double th) { return std::polar(2.0 * std::sin(0.5 * th), 0.5 * th) * cplx(0.0, 1.0); };
    cplx br = em1(t * (ar - as)) - em1(-t * er * ar) - em1(-t * es * as);
    double n = T > 0.0 ? planck(kk, T) : 0.0;
    double w = sigma > 0 ? 1.0 + n : n;
    return w * num / (kqr * kqs) * br;
  };
  auto shell = [&](double kk) -> cplx {
    auto ang = [&](double c) -> cplx {
      cplx acc = 0.0;
      for (int j = 0; j < n_phi; ++j) {
        double phi = 2.0 * kPi * (j + 0.5) / n_phi;
        acc += integrand(kk, c, phi, +1) + integrand(kk, c, phi, -1);
      }
      return acc * (2.0 * kPi / n_phi);
    };
    cplx a = GL::integrate(ang, -1.0, 0.0) + GL::integrate(ang, 0.0, 1.0);
    // d^3k / ((2pi)^3 2|k|) = k dk dOmega / (2 (2pi)^3)
    return a * kk / (2.0 * std::pow(2.0 * kPi, 3));
  };
  auto res = quad::panels(shell, 0.0, Lam, 0.25 * kPi / t, rel_tol, 10);
  return static_cast<double>(er * es) * res.value;
}

FitResult asymptotic_fit(const std::vector<double>& t, const std::vector<double>& re_g) {
  require(t.size() == re_g.size() && t.size() >= 4, "fit needs at least 4 samples");
  auto [tmin, tmax] = std::minmax_element(t.begin(), t.end());
  require(*tmin > 0.0 && *tmax / *tmin >= 1.5, "t-range too narrow for a stable fit");
  const double tref = std::sqrt(*tmin * *tmax);
  const double yscale = std::max(1e-300, std::abs(re_g.back()));
  Eigen::MatrixXd A(t.size(), 3);
  Eigen::VectorXd y(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    A(i, 0) = t[i] / tref;
    A(i, 1) = std::log(t[i] / tref);
    A(i, 2) = 1.0;
    y(i) = re_g[i] / yscale;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 3) throw ValidationError("ill-conditioned asymptotic fit");
  Eigen::VectorXd c = qr.solve(y);
  FitResult f;
  f.linear = c(0) * yscale / tref;
  f.log = c(1) * yscale;
  f.constant = (c(2) - c(1) * std::log(tref)) * yscale;
  f.residual = std::sqrt((A * c - y).squaredNorm() / static_cast<double>(t.size())) * yscale;
  return f;
}

EikonalCheck eikonal_factorization_check(const Vec4& q, const std::vector<Vec4>& w, double epsilon) {
  require(w.size() >= 2 && w.size() <= 6, "eikonal check needs 2..6 photon momenta");
  // i0 is attached to each w_k.q, so partial sums carry k*epsilon.
  std::vector<cplx> a(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) a[k] = cplx(mdot(w[k], q), epsilon);
  EikonalCheck out;
  out.rhs = 1.0;
  for (auto ak : a) {
    if (std::abs(ak) < 1e-12) throw ValidationError("degenerate eikonal denominator");
    out.rhs /= ak;
  }
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  out.lhs = 0.0;
  do {
    cplx prod = 1.0, partial = 0.0;
    for (auto idx : perm) {
      partial += a[idx];
      if (std::abs(partial) < 1e-12) throw ValidationError("degenerate eikonal denominator");
      prod /= partial;
    }
    out.lhs += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double delta_identity_check(double t) {
  require(t > 0.0, "delta identity needs t > 0");
  // 4 int_0^Z (1 - cos zt)/z^2 dz with Z t = 100 pi, plus the exact tail
  // 1/Z - cos(Zt)/Z + t (pi/2 - Si(Zt)).
  const double Z = 100.0 * kPi / t;
  auto f = [&](double z) {
    double u = z * t;
    if (u < 1e-4) return t * t * (0.5 - u * u / 24.0);
    return (1.0 - std::cos(u)) / (z * z);
  };
  auto body = quad::panels(f, 0.0, Z, 0.5 * kPi / t, 1e-14, 10);
  double tail = 1.0 / Z - std::cos(Z * t) / Z + t * (0.5 * kPi - gsl_sf_Si(Z * t));
  return 4.0 * (body.value + tail);
}

}  // namespace irbath
