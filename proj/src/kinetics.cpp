#include "irbath/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irbath/error.hpp"
#include "irbath/fit.hpp"
#include "irbath/parallel.hpp"
#include "irbath/quadrature.hpp"

namespace irbath {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeta3 = 1.2020569031595942;

void check_bath(const PhysicalParams& p) {
  require(p.m > 0.0, "kinetics needs m > 0");
  require(p.T > 0.0, "kinetics needs T > 0");
  require(p.alpha > 0.0 && p.alpha < 1.0, "kinetics needs 0 < alpha < 1");
}

double occupation(double k, double T) { return 1.0 / std::expm1(k / T); }

// Thermal weight n(P) [1 + n(P + w)] or n(P) alone.
double bath_weight(double P, double w, double T, bool stimulated) {
  double n = occupation(P, T);
  return stimulated ? n * (1.0 + occupation(P + w, T)) : n;
}

// int (1 + ((A - kappa^2)/B)^2) dkappa over [ka, kb]. The integrand is a
// quartic, so three Gauss-Legendre nodes are exact.
double angular_factor(double P, double w, double ka, double kb) {
  if (!(kb > ka)) return 0.0;
  const double A = P * P + (P + w) * (P + w);
  const double B = 2.0 * P * (P + w);
  static const double x[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double wt[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double c = 0.5 * (ka + kb), h = 0.5 * (kb - ka);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    double k = c + h * x[i];
    double u = (A - k * k) / B;
    s += wt[i] * (1.0 + u * u);
  }
  return h * s;
}

double e4(const PhysicalParams& p) { return p.e2() * p.e2(); }

}  // namespace

double planck_n(double k, double T) {
  require(k > 0.0, "planck_n needs k > 0");
  require(T > 0.0, "planck_n needs T > 0");
  return occupation(k, T);
}

double w_nonrel(const Vec3& k1, const Vec3& k2, const PhysicalParams& params) {
  double a = norm(k1), b = norm(k2);
  require(a > 0.0 && b > 0.0, "w_nonrel needs nonzero photon momenta");
  double c = dot(k1, k2) / (a * b);
  return kPi * e4(params) / (2.0 * params.m * params.m * a * b) * (1.0 + c * c);
}

double compton_energy(double m, const Vec3& q, const Vec3& k_in, const Vec3& n_out) {
  double eps = energy(m, q), K = norm(k_in);
  double qk = eps * K - dot(q, k_in);
  return qk / (eps - dot(q, n_out) + K - dot(k_in, n_out));
}

double collision_rate(const Vec3& q, const Vec3& k, const PhysicalParams& params, const KineticsOptions& opt) {
  check_bath(params);
  const double kappa = norm(k);
  if (kappa == 0.0) return 0.0;
  const double m = params.m, T = params.T;
  const double w = energy(m, q + k) - energy(m, q);
  if (std::abs(w) >= kappa) return 0.0;
  const double Pmin = 0.5 * (kappa - w);
  auto f = [&](double P) {
    double c = (P * P + (P + w) * (P + w) - kappa * kappa) / (2.0 * P * (P + w));
    return (1.0 + c * c) * bath_weight(P, w, T, opt.stimulated);
  };
  auto r = quad::gk(f, Pmin, Pmin + 60.0 * T, opt.rel_tol);
  return e4(params) / (8.0 * kPi * m * m * kappa) * r.value;
}

double shell_kernel(double from, double to, const PhysicalParams& params, const KineticsOptions& opt) {
  check_bath(params);
  require(from >= 0.0 && to >= 0.0, "shell_kernel needs nonnegative momenta");
  const double m = params.m, T = params.T;
  const double w = std::sqrt(m * m + from * from) - std::sqrt(m * m + to * to);
  const double ka = std::max(std::abs(from - to), std::abs(w));
  const double kb = from + to;
  if (!(kb > ka)) return 0.0;
  const double Pmin = 0.5 * (ka - w);
  const double Pbreak = 0.5 * (kb - w);
  const double Pmax = Pmin + 60.0 * T;
  auto f = [&](double P) {
    double hi = std::min(kb, 2.0 * P + w);
    return bath_weight(P, w, T, opt.stimulated) * angular_factor(P, w, ka, hi);
  };
  double s = 0.0;
  if (Pbreak < Pmax) {
    s += quad::gk(f, Pmin, Pbreak, opt.rel_tol).value;
    s += quad::gk(f, Pbreak, Pbreak + 60.0 * T, opt.rel_tol).value;
  } else {
    s += quad::gk(f, Pmin, Pmax, opt.rel_tol).value;
  }
  return e4(params) / (8.0 * kPi * m * m) * s;
}

double total_out_rate(const Vec3& q, const PhysicalParams& params, const KineticsOptions& opt) {
  check_bath(params);
  const double T = params.T;
  const double qn = norm(q);
  Vec3 e = qn > 0.0 ? (1.0 / qn) * q : Vec3{0.0, 0.0, 1.0};
  Vec3 e1 = std::abs(e[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  e1 = e1 - dot(e1, e) * e;
  e1 = (1.0 / norm(e1)) * e1;
  KineticsOptions inner = opt;
  inner.rel_tol = std::max(opt.rel_tol, 1e-10);
  auto over_c = [&](double kappa) {
    auto g = [&](double c) {
      Vec3 k = (kappa * c) * e + (kappa * std::sqrt(std::max(0.0, 1.0 - c * c))) * e1;
      // C(q + k, -k)
      return collision_rate(q + k, -1.0 * k, params, inner);
    };
    double v = qn > 0.0 ? quad::gk(g, -1.0, 1.0, 1e-9, 10).value : 2.0 * g(0.0);
    return kappa * kappa * v;
  };
  auto r = quad::gk(over_c, 0.0, 130.0 * T, 1e-9, 14);
  return 2.0 * kPi / std::pow(2.0 * kPi, 3) * r.value;
}

double thomson_rate(const PhysicalParams& p) {
  double sigma = 8.0 * kPi * p.alpha * p.alpha / (3.0 * p.m * p.m);
  double n_gamma = 2.0 * kZeta3 * p.T * p.T * p.T / (kPi * kPi);
  return sigma * n_gamma;
}

// ---- distributions

namespace {
MomentumDistribution make_grid(double q_max, int n) {
  require(q_max > 0.0 && n >= 4, "momentum grid needs q_max > 0 and n >= 4");
  MomentumDistribution d;
  d.dq = q_max / n;
  d.q.resize(n);
  d.values.assign(n, 0.0);
  for (int i = 0; i < n; ++i) d.q[i] = (i + 0.5) * d.dq;
  return d;
}
}  // namespace

MomentumDistribution MomentumDistribution::boltzmann(double m, double T_e, double q_max, int n) {
  require(T_e > 0.0, "boltzmann needs T_e > 0");
  auto d = make_grid(q_max, n);
  for (int i = 0; i < n; ++i) d.values[i] = std::exp(-(std::sqrt(m * m + d.q[i] * d.q[i]) - m) / T_e);
  d.normalize();
  return d;
}

MomentumDistribution MomentumDistribution::shell(double q0, double width, double q_max, int n) {
  require(width > 0.0 && q0 >= 0.0, "shell needs q0 >= 0 and width > 0");
  auto d = make_grid(q_max, n);
  for (int i = 0; i < n; ++i) {
    double z = (d.q[i] - q0) / width;
    d.values[i] = std::exp(-0.5 * z * z);
  }
  d.normalize();
  return d;
}

std::vector<double> MomentumDistribution::populations() const {
  std::vector<double> N(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) N[i] = q[i] * q[i] * dq * values[i] / (2.0 * kPi * kPi);
  return N;
}

void MomentumDistribution::set_populations(const std::vector<double>& N) {
  require(N.size() == q.size(), "population size mismatch");
  for (std::size_t i = 0; i < q.size(); ++i) values[i] = N[i] * 2.0 * kPi * kPi / (q[i] * q[i] * dq);
}

double MomentumDistribution::trace() const { return ordered_sum(populations()); }

void MomentumDistribution::normalize() {
  double t = trace();
  require(t > 0.0, "distribution has zero norm");
  for (auto& v : values) v /= t;
}

double mean_energy(const MomentumDistribution& rho, double m) {
  auto N = rho.populations();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    num += N[i] * std::sqrt(m * m + rho.q[i] * rho.q[i]);
    den += N[i];
  }
  return num / den;
}

// ---- master equation

CollisionMatrix::CollisionMatrix(const std::vector<double>& q, double dq, const PhysicalParams& params,
                                 const KineticsOptions& opt, int threads)
    : q_(q), dq_(dq), params_(params) {
  check_bath(params);
  const std::size_t n = q_.size();
  require(n >= 2 && dq > 0.0, "collision matrix needs a grid");
  kernel_.assign(n * n, 0.0);
  rate_.assign(n * n, 0.0);
  parallel_for(n, threads, [&](std::size_t from) {
    for (std::size_t to = 0; to < n; ++to)
      if (to != from) kernel_[from * n + to] = shell_kernel(q_[from], q_[to], params_, opt);
  });
  const double c = 1.0 / (4.0 * kPi * kPi);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) rate_[i * n + j] = c * dq_ * q_[i] / q_[j] * kernel_[j * n + i];
  for (std::size_t j = 0; j < n; ++j) {
    double out = 0.0;
    for (std::size_t i = 0; i < n; ++i) out += rate_[i * n + j];
    max_out_ = std::max(max_out_, out);
  }
}

void CollisionMatrix::gain_loss(const std::vector<double>& N, std::vector<double>& gain,
                                std::vector<double>& loss) const {
  const std::size_t n = q_.size();
  require(N.size() == n, "population size mismatch");
  gain.assign(n, 0.0);
  loss.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gain[i] += rate_[i * n + j] * N[j];
      loss[i] += rate_[j * n + i] * N[i];
    }
}

std::vector<double> CollisionMatrix::derivative(const std::vector<double>& N) const {
  std::vector<double> g, l;
  gain_loss(N, g, l);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= l[i];
  return g;
}

StepResult step(const CollisionMatrix& c, const MomentumDistribution& rho, double dt) {
  require(dt > 0.0, "step needs dt > 0");
  if (dt > 0.01 / c.max_out_rate() * (1.0 + 1e-12))
    throw ValidationError("step: dt exceeds 0.01 / max rate = " + std::to_string(0.01 / c.max_out_rate()));
  require(rho.q.size() == c.size(), "distribution does not match collision grid");
  auto N = rho.populations();
  auto dN = c.derivative(N);
  StepResult r;
  r.rho = rho;
  for (std::size_t i = 0; i < N.size(); ++i) {
    N[i] += dt * dN[i];
    if (N[i] < 0.0) {
      r.accepted = false;
      r.suggested_dt = 0.5 * dt;
      r.rho = rho;
      return r;
    }
  }
  r.rho.set_populations(N);
  r.suggested_dt = dt;
  return r;
}

double equilibrium_residual(const CollisionMatrix& c, const MomentumDistribution& rho) {
  std::vector<double> g, l;
  c.gain_loss(rho.populations(), g, l);
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    scale = std::max(scale, g[i]);
    worst = std::max(worst, std::abs(g[i] - l[i]));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double energy_drift(const CollisionMatrix& c, const MomentumDistribution& rho) {
  auto dN = c.derivative(rho.populations());
  const double m = c.params().m;
  double s = 0.0;
  for (std::size_t i = 0; i < dN.size(); ++i) s += dN[i] * std::sqrt(m * m + rho.q[i] * rho.q[i]);
  return s;
}

RelaxationRun relax(const CollisionMatrix& c, MomentumDistribution rho, double t_end, double dt_fraction,
                    int record_every, int snapshots) {
  require(dt_fraction > 0.0 && dt_fraction <= 0.01, "dt fraction must lie in (0, 0.01]");
  require(t_end > 0.0 && record_every > 0, "relax needs t_end > 0");
  const double m = c.params().m;
  RelaxationRun run;
  auto eq = MomentumDistribution::boltzmann(m, c.params().T, rho.q.back() + 0.5 * rho.dq, static_cast<int>(rho.q.size()));
  run.equilibrium_energy = mean_energy(eq, m);
  double dt = dt_fraction / c.max_out_rate();
  const auto nsteps = static_cast<long>(std::ceil(t_end / dt));
  dt = t_end / static_cast<double>(nsteps);
  double prev = mean_energy(rho, m);
  const long snap_every = snapshots > 1 ? std::max(1L, nsteps / (snapshots - 1)) : nsteps + 1;
  auto record = [&](long k) {
    double t = dt * static_cast<double>(k);
    run.history.push_back({t, mean_energy(rho, m), equilibrium_residual(c, rho)});
  };
  record(0);
  run.snapshots.push_back(rho);
  run.snapshot_times.push_back(0.0);
  for (long k = 1; k <= nsteps; ++k) {
    auto r = step(c, rho, dt);
    if (!r.accepted) throw NumericError("relax: negative density at the stability limit");
    double drift = std::abs(r.rho.trace() - rho.trace());
    run.max_trace_drift = std::max(run.max_trace_drift, drift);
    rho = std::move(r.rho);
    double e = mean_energy(rho, m);
    if (e > prev + 1e-14 * std::abs(prev)) run.monotone = false;
    prev = e;
    if (k % record_every == 0 || k == nsteps) record(k);
    if (snapshots > 1 && (k % snap_every == 0 || k == nsteps) &&
        static_cast<int>(run.snapshots.size()) < snapshots) {
      run.snapshots.push_back(rho);
      run.snapshot_times.push_back(dt * static_cast<double>(k));
    }
  }
  // Fit the decay of the excess energy while it is well above round-off.
  const double excess0 = run.history.front().mean_energy - run.equilibrium_energy;
  std::vector<double> ts, ls;
  for (const auto& h : run.history) {
    double ex = h.mean_energy - run.equilibrium_energy;
    if (excess0 > 0.0 && ex > 0.02 * excess0 && ex < 0.8 * excess0) {
      ts.push_back(h.t);
      ls.push_back(std::log(ex));
    }
  }
  if (ts.size() >= 3) run.fitted_rate = -fit_line(ts, ls).slope;
  return run;
}

}  // namespace irbath
