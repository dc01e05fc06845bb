#include "irbath/density_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "irbath/error.hpp"
#include "irbath/parallel.hpp"

namespace irbath {

long Axis::find(double x) const {
  double r = (x - start) / step;
  double ri = std::round(r);
  if (std::abs(r - ri) > 1e-9 || ri < 0.0 || ri >= static_cast<double>(n)) return -1;
  return static_cast<long>(ri);
}

Axis Axis::symmetric(double half_width, std::size_t n) {
  require(n >= 2 && half_width > 0.0, "axis needs n >= 2 and positive width");
  return Axis{-half_width, 2.0 * half_width / static_cast<double>(n - 1), n};
}

std::size_t MomentumGrid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= axis.n;
  return s;
}

Vec3 MomentumGrid::point(std::size_t flat) const {
  Vec3 v{0.0, 0.0, 0.0};
  for (int d = dim - 1; d >= 0; --d) {
    v[d] = axis.at(flat % axis.n);
    flat /= axis.n;
  }
  return v;
}

double MomentumGrid::weight() const { return std::pow(axis.step, dim); }

long MomentumGrid::find(const Vec3& v) const {
  long flat = 0;
  for (int d = 0; d < dim; ++d) {
    long i = axis.find(v[d]);
    if (i < 0) return -1;
    flat = flat * static_cast<long>(axis.n) + i;
  }
  return flat;
}

double gaussian_amplitude_1d(double l, double q) {
  return std::pow(4.0 * std::numbers::pi * l * l, 0.25) * std::exp(-0.5 * l * l * q * q);
}

namespace {

Vec3 truncate(const Vec3& q, int dim) {
  Vec3 r{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) r[d] = q[d];
  return r;
}

}  // namespace

cplx GaussianPure::amplitude(const Vec3& qin, int dim) const {
  Vec3 q = truncate(qin, dim);
  double a = 1.0;
  for (int d = 0; d < dim; ++d) a *= gaussian_amplitude_1d(l, q[d]);
  double phase = -dot(q, truncate(x0, dim)) + energy(m, q) * tau;
  return std::polar(a, phase);
}

cplx GaussianPure::value(const Vec3& q, const Vec3& qp, int dim) const {
  Vec3 a = truncate(q, dim), b = truncate(qp, dim);
  cplx v = amplitude(a, dim) * std::conj(amplitude(b, dim));
  double phase = (energy(m, b) - energy(m, a)) * elapsed;
  return v * std::polar(std::exp(-theta_t * norm2(b - a)), phase);
}

double ir_decoherence_factor(double p2, double t, const PhysicalParams& params) {
  require(p2 >= 0.0 && t >= 0.0, "ir_decoherence_factor needs p2 >= 0 and t >= 0");
  return std::exp(-2.0 * params.alpha * p2 * params.T * t / (3.0 * params.m * params.m));
}

DensityMatrix propagate(const DensityMatrix& rho0, double t, const PhysicalParams& params, int threads) {
  require(t >= 0.0, "propagate needs t >= 0");
  if (const auto* g = std::get_if<GaussianPure>(&rho0)) {
    require(std::abs(g->m - params.m) <= 1e-12 * params.m, "GaussianPure mass differs from params.m");
    GaussianPure out = *g;
    out.elapsed += t;
    out.theta_t += params.theta() * t;
    return out;
  }
  const auto& g = std::get<GridState>(rho0);
  require(g.values.size() == g.q.size() * g.p.size(), "grid values do not match grid shape");
  const double qmax = 0.1 * params.m;
  const std::size_t nq = g.q.size(), np = g.p.size();
  GridState out = g;
  parallel_for(nq, threads, [&](std::size_t iq) {
    Vec3 q = g.q.point(iq);
    require(norm(q) <= qmax, "grid momentum outside nonrelativistic range |q| <= 0.1 m");
    double eq = energy(params.m, q);
    for (std::size_t ip = 0; ip < np; ++ip) {
      Vec3 p = g.p.point(ip);
      Vec3 qp = q + p;
      require(norm(qp) <= qmax, "grid momentum outside nonrelativistic range |q+p| <= 0.1 m");
      double f = ir_decoherence_factor(norm2(p), t, params);
      out.values[iq * np + ip] = g.values[iq * np + ip] * std::polar(f, (energy(params.m, qp) - eq) * t);
    }
  });
  return out;
}

double trace_norm(const DensityMatrix& rho) {
  if (std::holds_alternative<GaussianPure>(rho)) return 1.0;
  const auto& g = std::get<GridState>(rho);
  long ip0 = g.p.find({0.0, 0.0, 0.0});
  require(ip0 >= 0, "p-grid must contain p = 0 for trace_norm");
  double s = 0.0;
  for (std::size_t iq = 0; iq < g.q.size(); ++iq) {
    cplx v = g.at(iq, static_cast<std::size_t>(ip0));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("non-finite density matrix entry");
    s += v.real();
  }
  return s * g.q.weight() / std::pow(2.0 * std::numbers::pi, g.q.dim);
}

double hermiticity_defect(const GridState& g) {
  double worst = 0.0;
  const std::size_t np = g.p.size();
  for (std::size_t iq = 0; iq < g.q.size(); ++iq) {
    Vec3 q = g.q.point(iq);
    for (std::size_t ip = 0; ip < np; ++ip) {
      Vec3 p = g.p.point(ip);
      long jq = g.q.find(q + p);
      long jp = g.p.find(-1.0 * p);
      if (jq < 0 || jp < 0) continue;
      cplx a = g.at(iq, ip), b = g.at(static_cast<std::size_t>(jq), static_cast<std::size_t>(jp));
      worst = std::max(worst, std::abs(b - std::conj(a)));
    }
  }
  return worst;
}

GridState sample(const GaussianPure& g, const MomentumGrid& q, const MomentumGrid& p) {
  require(q.dim == p.dim, "q and p grids must share dimensionality");
  require(q.dim == 1 || q.dim == 3, "grid dimensionality must be 1 or 3");
  GridState s{q, p, {}};
  s.values.resize(q.size() * p.size());
  for (std::size_t iq = 0; iq < q.size(); ++iq) {
    Vec3 qq = q.point(iq);
    for (std::size_t ip = 0; ip < p.size(); ++ip) s.values[iq * p.size() + ip] = g.value(qq, qq + p.point(ip), q.dim);
  }
  return s;
}

void write_csv(std::ostream& os, const GridState& g) {
  os << "q1,q2,q3,p1,p2,p3,re_rho,im_rho\n";
  char buf[512];
  for (std::size_t iq = 0; iq < g.q.size(); ++iq) {
    Vec3 q = g.q.point(iq);
    for (std::size_t ip = 0; ip < g.p.size(); ++ip) {
      Vec3 p = g.p.point(ip);
      cplx v = g.at(iq, ip);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", q[0], q[1], q[2], p[0], p[1],
                    p[2], v.real(), v.imag());
      os << buf;
    }
  }
}

}  // namespace irbath
