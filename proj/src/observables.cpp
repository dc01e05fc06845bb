#include "irbath/observables.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "irbath/error.hpp"
#include "irbath/wavepacket.hpp"

namespace irbath {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void nyquist_check(const GridState& g, const Vec3& x) {
  const double limit = std::numbers::pi / g.p.axis.step;
  for (int d = 0; d < g.p.dim; ++d)
    require(std::abs(x[d]) <= limit * (1.0 + 1e-12), "grid too coarse for requested x (Nyquist check)");
}

// Sum over grid entries of rho(q,q+p) * kernel(p) * exp(-i p.x), with the
// propagation factor applied on the fly when params is non-null.
template <class K>
cplx grid_transform(const GridState& g, const Vec3& x, double t, const PhysicalParams* params, K&& kernel) {
  nyquist_check(g, x);
  const std::size_t nq = g.q.size(), np = g.p.size();
  std::vector<cplx> phase(np);
  std::vector<double> kern(np), damp(np, 1.0);
  for (std::size_t ip = 0; ip < np; ++ip) {
    Vec3 p = g.p.point(ip);
    phase[ip] = std::polar(1.0, -dot(p, x));
    kern[ip] = kernel(p);
    if (params) damp[ip] = ir_decoherence_factor(norm2(p), t, *params);
  }
  cplx total = 0.0;
  for (std::size_t iq = 0; iq < nq; ++iq) {
    Vec3 q = g.q.point(iq);
    double eq = params ? energy(params->m, q) : 0.0;
    cplx row = 0.0;
    for (std::size_t ip = 0; ip < np; ++ip) {
      if (kern[ip] == 0.0) continue;
      cplx v = g.values[iq * np + ip] * phase[ip] * (kern[ip] * damp[ip]);
      if (params && t != 0.0) v *= std::polar(1.0, (energy(params->m, q + g.p.point(ip)) - eq) * t);
      row += v;
    }
    total += row;
  }
  return total * (g.q.weight() * g.p.weight() / std::pow(kTwoPi, 2 * g.q.dim));
}

double checked_real(cplx v) {
  if (std::abs(v.imag()) > 1e-10 * std::max(std::abs(v.real()), 1e-300) && std::abs(v.imag()) > 1e-300)
    throw NumericError("charge density has a non-negligible imaginary part");
  return v.real();
}

double gaussian_width(const GaussianPure& g) {
  return spread_width(SpreadLaw{g.l, 0.0, g.m}, g.elapsed - g.tau, g.theta_t);
}

}  // namespace

double charge_density(const DensityMatrix& rho, const Vec3& x) {
  if (const auto* g = std::get_if<GaussianPure>(&rho)) {
    double lt = gaussian_width(*g);
    return std::exp(-norm2(x - g->x0) / (lt * lt)) / (std::pow(std::numbers::pi, 1.5) * lt * lt * lt);
  }
  const auto& g = std::get<GridState>(rho);
  return checked_real(grid_transform(g, x, 0.0, nullptr, [](const Vec3&) { return 1.0; }));
}

double charge_density(const DensityMatrix& rho0, const Vec3& x, double t, const PhysicalParams& params) {
  if (std::holds_alternative<GaussianPure>(rho0)) return charge_density(propagate(rho0, t, params), x);
  const auto& g = std::get<GridState>(rho0);
  return checked_real(grid_transform(g, x, t, &params, [](const Vec3&) { return 1.0; }));
}

double coulomb_potential(const DensityMatrix& rho, const Vec3& x, const PhysicalParams& params) {
  const double e = std::sqrt(params.e2());
  if (const auto* g = std::get_if<GaussianPure>(&rho)) {
    double lt = gaussian_width(*g);
    double r = norm(x - g->x0);
    if (r == 0.0) return e * 2.0 / (4.0 * std::numbers::pi * lt * std::sqrt(std::numbers::pi));
    return e * std::erf(r / lt) / (4.0 * std::numbers::pi * r);
  }
  const auto& g = std::get<GridState>(rho);
  require(g.p.dim == 3, "coulomb_potential on a grid needs a 3D state");
  auto kernel = [](const Vec3& p) {
    double p2 = norm2(p);
    return p2 > 0.0 ? 1.0 / p2 : 0.0;
  };
  return e * checked_real(grid_transform(g, x, 0.0, nullptr, kernel));
}

double coulomb_potential(const DensityMatrix& rho0, const Vec3& x, double t, const PhysicalParams& params) {
  return coulomb_potential(propagate(rho0, t, params), x, params);
}

std::vector<cplx> density_spectrum(const GridState& g) {
  const std::size_t nq = g.q.size(), np = g.p.size();
  std::vector<cplx> out(np, 0.0);
  const double w = g.q.weight() / std::pow(kTwoPi, g.q.dim);
  for (std::size_t ip = 0; ip < np; ++ip) {
    cplx s = 0.0;
    for (std::size_t iq = 0; iq < nq; ++iq) s += g.values[iq * np + ip];
    out[ip] = s * w;
  }
  return out;
}

double gauss_residual(const DensityMatrix& rho, const PhysicalParams& params, int probe) {
  const double e = std::sqrt(params.e2());
  std::vector<Vec3> ps;
  std::vector<cplx> J;
  if (const auto* g = std::get_if<GaussianPure>(&rho)) {
    // Fourier image of the closed-form density: exp(-p^2 lt^2/4 - i p.x0).
    double lt = gaussian_width(*g);
    MomentumGrid probe_grid{3, Axis::symmetric(4.0 / lt, static_cast<std::size_t>(probe))};
    for (std::size_t i = 0; i < probe_grid.size(); ++i) {
      Vec3 p = probe_grid.point(i);
      ps.push_back(p);
      J.push_back(std::polar(std::exp(-0.25 * norm2(p) * lt * lt), -dot(p, g->x0)));
    }
  } else {
    const auto& grid = std::get<GridState>(rho);
    J = density_spectrum(grid);
    for (std::size_t ip = 0; ip < grid.p.size(); ++ip) ps.push_back(grid.p.point(ip));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    double p2 = norm2(ps[i]);
    if (p2 == 0.0) continue;
    cplx eJ = e * J[i];
    cplx A0 = eJ / p2;
    worst = std::max(worst, std::abs(p2 * A0 - eJ) / (std::abs(eJ) + 1e-300));
  }
  return worst;
}

double axis_product_density(const GaussianPure& g, const Vec3& x, double t, const PhysicalParams& params,
                            std::size_t n, double half_width) {
  require(norm(g.x0) == 0.0, "axis_product_density needs a packet centred at the origin");
  MomentumGrid axis{1, Axis::symmetric(half_width, n)};
  DensityMatrix state = sample(g, axis, axis);
  double rho = 1.0;
  for (int d = 0; d < 3; ++d) rho *= charge_density(state, Vec3{x[d], 0.0, 0.0}, t, params);
  return rho;
}

void write_field_csv(std::ostream& os, const std::vector<FieldSample>& samples) {
  os << "x1,x2,x3,t,J0,A0\n";
  char buf[256];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.x[0], s.x[1], s.x[2], s.t, s.J0, s.A0);
    os << buf;
  }
}

}  // namespace irbath
