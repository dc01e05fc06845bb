#include "irbath/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "irbath/density_matrix.hpp"
#include "irbath/error.hpp"
#include "irbath/gauss_law.hpp"
#include "irbath/ir_kernel.hpp"
#include "irbath/kinetics.hpp"
#include "irbath/observables.hpp"
#include "irbath/parallel.hpp"
#include "irbath/rng.hpp"
#include "irbath/twoslit.hpp"
#include "irbath/wavepacket.hpp"

namespace irbath {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

double quantity(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_object() && v.contains("value")) {
    require(v["value"].is_number(), "quantity value must be a number");
    Unit u = v.contains("unit") ? parse_unit(v["unit"].get<std::string>()) : Unit::natural;
    return to_natural({v["value"].get<double>(), u});
  }
  throw ValidationError("expected a number or {value, unit} object");
}

double get_q(const json& c, const std::string& key, double fallback) {
  if (!c.contains(key)) return fallback;
  try {
    return quantity(c.at(key));
  } catch (const ValidationError& e) {
    throw ValidationError(key + ": " + e.what());
  }
}

double need_q(const json& c, const std::string& key) {
  require(c.contains(key), "missing required input '" + key + "'");
  return get_q(c, key, 0.0);
}

template <class T>
T get_v(const json& c, const std::string& key, T fallback) {
  if (!c.contains(key)) return fallback;
  try {
    return c.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("input '" + key + "' has the wrong type");
  }
}

Vec3 get_vec(const json& c, const std::string& key, Vec3 fallback) {
  if (!c.contains(key)) return fallback;
  const json& v = c.at(key);
  const json& arr = v.is_object() ? v.at("value") : v;
  require(arr.is_array() && arr.size() == 3, key + " must be a 3-vector");
  Unit u = v.is_object() && v.contains("unit") ? parse_unit(v["unit"].get<std::string>()) : Unit::natural;
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = to_natural({arr[i].get<double>(), u});
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvFile {
 public:
  CsvFile(const RunOptions& opt, const std::string& name, const std::string& header) {
    if (opt.out_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + opt.out_dir + ": " + ec.message());
    path_ = (std::filesystem::path(opt.out_dir) / name).string();
    os_.open(path_);
    if (!os_) throw IoError("cannot open " + path_);
    os_ << header << '\n';
  }
  bool active() const { return os_.is_open(); }
  void row(const std::vector<double>& v) {
    if (!active()) return;
    for (std::size_t i = 0; i < v.size(); ++i) os_ << (i ? "," : "") << fmt(v[i]);
    os_ << '\n';
  }
  void close() {
    if (!active()) return;
    os_.close();
    if (os_.fail()) throw IoError("write failed for " + path_);
  }

 private:
  std::string path_;
  std::ofstream os_;
};

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

// ---- wavepacket

json run_wavepacket(const json& c, const RunOptions& opt) {
  PhysicalParams P = read_params(c);
  P.validate();
  const double l = need_q(c, "l");
  require(l > 0.0, "l must be positive");
  const auto n = get_v<std::size_t>(c, "grid_points", 81);
  const double half = get_v<double>(c, "grid_half_width", 10.0) / l;
  const int n_random = get_v<int>(c, "random_points", 10);
  const double t_max = get_q(c, "t_max", 2.0 * P.m * l * l);
  GaussianPure g{l, {0.0, 0.0, 0.0}, 0.0, P.m};
  SpreadLaw law{l, P.theta(), P.m};

  std::vector<std::array<double, 4>> pts;
  if (c.contains("points")) {
    for (const auto& p : c["points"]) {
      require(p.is_array() && p.size() == 4, "points entries are [x1, x2, x3, t]");
      pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>()});
    }
  } else {
    CounterRng rng(opt.seed, 0);
    for (int i = 0; i < n_random; ++i) {
      double t = t_max * rng.uniform();
      double lt = spread_width(law, t);
      std::array<double, 4> p{};
      for (int d = 0; d < 3; ++d) p[d] = lt * (2.0 * rng.uniform() - 1.0);
      p[3] = t;
      pts.push_back(p);
    }
  }
  struct Row {
    double grid, closed, A0;
  };
  auto rows = parallel_map<Row>(pts.size(), opt.threads, [&](std::size_t i) {
    Vec3 x{pts[i][0], pts[i][1], pts[i][2]};
    double t = pts[i][3];
    Row r;
    r.grid = axis_product_density(g, x, t, P, n, half);
    r.closed = gaussian_density(law, x, t);
    r.A0 = coulomb_potential(DensityMatrix{g}, x, t, P);
    return r;
  });
  CsvFile csv(opt, "wavepacket_density.csv", "x1,x2,x3,t,J0,A0,J0_closed");
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    worst = std::max(worst, std::abs(rows[i].grid - rows[i].closed) / rows[i].closed);
    csv.row({pts[i][0], pts[i][1], pts[i][2], pts[i][3], rows[i].grid, rows[i].A0, rows[i].closed});
  }
  csv.close();

  json s;
  s["points"] = pts.size();
  s["max_rel_error"] = worst;
  if (P.T > 0.0) {
    const double tau = get_q(c, "focus_time", l * l / (4.0 * P.theta()));
    GaussianPure f{l, {0.0, 0.0, 0.0}, tau, P.m};
    double rho0 = axis_product_density(f, {0.0, 0.0, 0.0}, tau, P, n, half);
    // rho(0) = pi^{-3/2} w^{-3}
    double w2 = std::pow(rho0 * std::pow(kPi, 1.5), -2.0 / 3.0);
    double expect = focused_width2(l, P.theta(), tau);
    s["focus"] = {{"tau", tau}, {"width2", w2}, {"expected", expect}, {"rel_error", std::abs(w2 - expect) / expect}};
  }
  auto opt_w = optimal_initial_width(law, t_max);
  s["optimal_initial_width"] = {{"t", t_max}, {"l", opt_w.l}, {"width", opt_w.width}};
  return s;
}

// ---- twoslit

json run_twoslit(const json& c, const RunOptions& opt) {
  PhysicalParams P = read_params(c);
  P.validate();
  TwoSlitGeometry geom{need_q(c, "d"), need_q(c, "L"), 0.0};
  if (c.contains("k"))
    geom.k = need_q(c, "k");
  else
    geom.k = std::sqrt(2.0 * P.m * need_q(c, "energy"));
  geom.validate(P.m);
  const int samples = get_v<int>(c, "samples", 1024);
  auto res = pipeline_visibility(geom, P, samples);
  CsvFile csv(opt, "twoslit_pattern.csv", "x,density,closed");
  for (std::size_t i = 0; i < res.x.size(); ++i) csv.row({res.x[i], res.density[i], pattern(geom, P, res.x[i])});
  csv.close();
  json s;
  double v = visibility(geom, P);
  s["kappa"] = geom.kappa();
  s["travel_time"] = geom.travel_time(P.m);
  s["visibility"] = v;
  s["pipeline_visibility"] = res.visibility;
  s["abs_diff"] = std::abs(res.visibility - v);
  if (c.contains("threshold")) {
    const json& th = c["threshold"];
    auto r = threshold_constant(get_v<double>(th, "T_K", 100.0), get_v<double>(th, "L_cm", 100.0),
                                get_v<double>(th, "eps_eV", 10.0), get_v<double>(th, "r_cm", 1e-8));
    s["threshold"] = {{"exponent", r.exponent},
                      {"exponent_lab", r.exponent_lab},
                      {"X", r.X},
                      {"X_at_exponent_1", 1.0 / threshold_coefficient()}};
  }
  return s;
}

// ---- kinetics

json run_kinetics(const json& c, const RunOptions& opt) {
  PhysicalParams P = read_params(c);
  require(P.T > 0.0, "kinetics needs T > 0");
  const double m = P.m, T = P.T;
  const json init = c.contains("initial") ? c["initial"] : json{{"boltzmann", {{"T_e", 2.0 * T}}}};
  const int n = get_v<int>(c, "grid_points", 60);
  double T_e = T;
  if (init.contains("boltzmann")) T_e = get_q(init["boltzmann"], "T_e", 2.0 * T);
  const double q_max = get_q(c, "q_max", std::sqrt(std::pow(m + 20.0 * std::max(T, T_e), 2) - m * m));
  MomentumDistribution rho;
  if (init.contains("boltzmann"))
    rho = MomentumDistribution::boltzmann(m, T_e, q_max, n);
  else if (init.contains("shell"))
    rho = MomentumDistribution::shell(need_q(init["shell"], "q0"), need_q(init["shell"], "width"), q_max, n);
  else
    throw ValidationError("initial must be {boltzmann: ...} or {shell: ...}");

  CollisionMatrix C(rho.q, rho.dq, P, {}, opt.threads);
  const double ref = P.alpha * P.alpha * T * T * T / (m * m);
  const double t_end = get_q(c, "t_end", get_v<double>(c, "t_end_ref", 15.0) / ref);
  auto bath = MomentumDistribution::boltzmann(m, T, q_max, n);

  double db = 0.0;
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i + 1; j < C.size(); ++j) {
      double ei = std::sqrt(m * m + rho.q[i] * rho.q[i]), ej = std::sqrt(m * m + rho.q[j] * rho.q[j]);
      // K(i->j) e^{-eps_i/T} = K(j->i) e^{-eps_j/T}
      double a = C.kernel(i, j), b = C.kernel(j, i) * std::exp(-(ej - ei) / T);
      if (a > 0.0) db = std::max(db, std::abs(a - b) / a);
    }

  auto run = relax(C, rho, t_end, get_v<double>(c, "dt_fraction", 0.01), get_v<int>(c, "record_every", 10),
                   get_v<int>(c, "snapshots", 5));
  CsvFile hist(opt, "kinetics_history.csv", "t,mean_energy,residual");
  for (const auto& h : run.history) hist.row({h.t, h.mean_energy, h.residual});
  hist.close();
  CsvFile dist(opt, "kinetics_rho.csv", "t,q,rho");
  for (std::size_t s = 0; s < run.snapshots.size(); ++s)
    for (std::size_t i = 0; i < run.snapshots[s].q.size(); ++i)
      dist.row({run.snapshot_times[s], run.snapshots[s].q[i], run.snapshots[s].values[i]});
  dist.close();

  json s;
  s["grid"] = {{"points", n}, {"q_max", q_max}};
  s["equilibrium_residual"] = equilibrium_residual(C, bath);
  s["initial_residual"] = equilibrium_residual(C, rho);
  s["detailed_balance_max"] = db;
  s["max_out_rate"] = C.max_out_rate();
  s["t_end"] = t_end;
  s["max_trace_drift"] = run.max_trace_drift;
  s["monotone"] = run.monotone;
  s["initial_energy"] = run.history.front().mean_energy;
  s["final_energy"] = run.history.back().mean_energy;
  s["equilibrium_energy"] = run.equilibrium_energy;
  s["fitted_rate"] = run.fitted_rate;
  s["reference_rate"] = ref;
  s["rate_ratio"] = run.fitted_rate / ref;
  const auto samples = get_v<std::uint64_t>(c, "mc_samples", 100000);
  if (samples > 0) {
    auto mc = energy_drift_mc(rho, P, samples, opt.seed, opt.threads);
    s["energy_drift"] = {{"matrix", energy_drift(C, rho)}, {"monte_carlo", mc.value}, {"mc_std_error", mc.std_error}};
  }
  return s;
}

// ---- irkernel

json run_irkernel(const json& c, const RunOptions& opt) {
  PhysicalParams P = read_params(c);
  P.validate();
  KernelInput base;
  base.q = get_vec(c, "q", {0.0, 0.0, 0.0});
  base.p = get_vec(c, "p", {0.0, 0.0, 1e-3 * P.m});
  base.params = P;
  KernelOptions ko;
  ko.thermal = get_v<bool>(c, "thermal", true);
  ko.vacuum = get_v<bool>(c, "vacuum", true);
  ko.rel_tol = get_v<double>(c, "rel_tol", 1e-10);
  ko.n_phi = get_v<int>(c, "n_phi", 32);
  const int npts = get_v<int>(c, "points", 10);
  require(npts >= 4, "irkernel needs at least 4 time points");
  double t_lo, t_hi;
  if (c.contains("Tt")) {
    require(P.T > 0.0, "a Tt window needs T > 0");
    auto w = c["Tt"].get<std::vector<double>>();
    require(w.size() == 2 && w[0] > 0.0 && w[1] > w[0], "Tt must be [lo, hi]");
    t_lo = w[0] / P.T;
    t_hi = w[1] / P.T;
  } else {
    t_lo = need_q(c, "t_min");
    t_hi = need_q(c, "t_max");
    require(t_lo > 0.0 && t_hi > t_lo, "need 0 < t_min < t_max");
  }
  std::vector<double> ts(npts);
  for (int i = 0; i < npts; ++i) ts[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (npts - 1));
  auto gs = parallel_map<ExponentResult>(ts.size(), opt.threads, [&](std::size_t i) {
    KernelInput in = base;
    in.t = ts[i];
    return exponent(in, ko);
  });
  std::vector<double> re(gs.size());
  CsvFile csv(opt, "irkernel_g.csv", "t,re_g,im_g,error,decoherence_quadrature,decoherence_closed");
  double worst_exp = 0.0;
  const double p2 = norm2(base.p);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    re[i] = gs[i].g.real();
    double fq = std::exp(0.5 * P.e2() * re[i]);
    double fc = ir_decoherence_factor(p2, ts[i], P);
    worst_exp = std::max(worst_exp, std::abs(fq - fc) / fc);
    csv.row({ts[i], re[i], gs[i].g.imag(), gs[i].error, fq, fc});
  }
  csv.close();
  auto fit = asymptotic_fit(ts, re);
  const double m2 = P.m * P.m;
  json s;
  s["q"] = vec_json(base.q);
  s["p"] = vec_json(base.p);
  s["t_window"] = {t_lo, t_hi};
  s["fit"] = {{"linear", fit.linear}, {"log", fit.log}, {"constant", fit.constant}, {"rms", fit.residual}};
  if (ko.thermal && P.T > 0.0) {
    double target = -p2 * P.T / (3.0 * kPi * m2);
    s["target_slope"] = target;
    s["slope_ratio"] = fit.linear / target;
    s["decoherence_max_rel_diff"] = worst_exp;
  }
  if (!ko.thermal || P.T == 0.0) {
    double small = -p2 / (3.0 * kPi * kPi * m2);
    double large = -(p2 + norm2(base.q) + dot(base.p, base.q)) / (3.0 * kPi * kPi * m2);
    bool is_large = std::sqrt(p2) * t_lo >= 1.0;
    s["target_log_small_pt"] = small;
    s["target_log_large_pt"] = large;
    s["regime"] = is_large ? "large_pt" : "small_pt";
    s["log_ratio"] = fit.log / (is_large ? large : small);
  }
  return s;
}

// ---- gausslaw

json run_gausslaw(const json& c, const RunOptions& opt) {
  PhysicalParams P = read_params(c);
  const double e = std::sqrt(P.e2());
  const double sigma = need_q(c, "sigma");
  require(sigma > 0.0, "sigma must be positive");
  auto radii = get_v<std::vector<double>>(c, "radii", {20.0 * sigma, 50.0 * sigma});
  auto times = get_v<std::vector<double>>(c, "times", {10.0 * sigma, 40.0 * sigma, 80.0 * sigma});
  SourceProfile src{SourceProfile::Kind::gaussian, sigma, 1.0};
  struct Row {
    double r, t, A0, Ar, residual, closed;
  };
  std::vector<std::pair<double, double>> pts;
  for (double r : radii)
    for (double t : times) pts.emplace_back(r, t);
  auto rows = parallel_map<Row>(pts.size(), opt.threads, [&](std::size_t i) {
    auto [r, t] = pts[i];
    Vec3 x{0.0, 0.0, r};
    auto f = tree_field(src, x, t, true, e);
    return Row{r, t, f.A0, f.A[2], divergence_residual(src, x, t, e), gaussian_A0_closed(r, t, sigma, e)};
  });
  CsvFile csv(opt, "gausslaw.csv", "r,t,A0,residual,A_r,A0_closed");
  double worst_front = 0.0, worst_closed = 0.0;
  for (const auto& r : rows) {
    csv.row({r.r, r.t, r.A0, r.residual, r.Ar, r.closed});
    double coul = e / (4.0 * kPi * r.r);
    worst_closed = std::max(worst_closed, std::abs(r.A0 - r.closed) / coul);
    if (std::abs(r.t - r.r) > 5.0 * sigma) {
      double step = r.t > r.r ? coul : 0.0;
      worst_front = std::max(worst_front, std::abs(r.A0 - step) / coul);
    }
  }
  csv.close();
  std::vector<double> pp, tt;
  for (int i = 1; i <= 9; ++i) pp.push_back(0.5 * i / sigma);
  for (int i = 0; i <= 4; ++i) tt.push_back(sigma * (0.7 + 3.1 * i));
  auto with = spectral_residuals(sigma, pp, tt, true, e);
  auto without = spectral_residuals(sigma, pp, tt, false, e);
  auto decay = divergence_decay_fit(sigma, 2.0 * sigma, 5.0 * sigma, 13, e);
  const double t0 = 1.5 * sigma;
  double num = divergence_residual(src, {0.0, 0.0, 0.0}, t0, e);
  double cf = gaussian_divergence_closed(0.0, t0, sigma, e);
  json s;
  s["sigma"] = sigma;
  s["front_max_rel_dev"] = worst_front;
  s["A0_closed_max_rel_dev"] = worst_closed;
  s["spectral_with_noncov"] = {{"lorenz", with.lorenz}, {"gauss", with.gauss}, {"wave", with.wave}};
  s["spectral_without_noncov"] = {{"lorenz", without.lorenz}, {"gauss", without.gauss}, {"wave", without.wave}};
  s["origin_divergence"] = {{"t", t0}, {"numeric", num}, {"closed", cf}, {"rel_error", std::abs(num - cf) / cf}};
  s["decay_fit"] = {{"slope", decay.slope}, {"expected", decay.expected}, {"ratio", decay.slope / decay.expected}};
  return s;
}

// ---- units-check

json run_units_check(const json& c, const RunOptions&) {
  json s;
  double prod = cm_kelvin_product();
  s["cm_kelvin_product"] = prod;
  s["rel_dev_from_4.36"] = std::abs(prod - 4.36) / 4.36;
  json conv = json::array();
  if (c.contains("quantities")) {
    for (const auto& q : c["quantities"]) {
      double v = quantity(q);
      conv.push_back({{"input", q}, {"natural", v}});
    }
  }
  s["conversions"] = conv;
  if (c.contains("stage_ratio")) {
    const json& sr = c["stage_ratio"];
    double r_cm = get_v<double>(sr, "r_cm", 1e-4), T_K = get_v<double>(sr, "T_K", 300.0);
    s["stage_ratio"] = {{"r_cm", r_cm}, {"T_K", T_K}, {"value", stage_ratio(r_cm, T_K)}};
  }
  return s;
}

}  // namespace

PhysicalParams read_params(const json& c) {
  PhysicalParams p;
  p.m = get_q(c, "m", codata::electron_mass_eV);
  p.T = get_q(c, "T", 0.0);
  p.alpha = get_v<double>(c, "alpha", codata::alpha);
  p.Lambda = get_q(c, "Lambda", 0.1 * p.m);
  return p;
}

json params_json(const PhysicalParams& p) {
  return {{"m", p.m}, {"T", p.T}, {"alpha", p.alpha}, {"Lambda", p.Lambda}, {"units", "natural (eV)"}};
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"wavepacket", "twoslit", "kinetics", "irkernel", "gausslaw", "units-check"};
  return names;
}

json run_scenario(const std::string& name, const json& config, const RunOptions& opt) {
  require(opt.threads >= 1, "threads must be a positive integer");
  require(config.is_object(), "config must be a JSON object");
  json summary;
  if (name == "wavepacket")
    summary = run_wavepacket(config, opt);
  else if (name == "twoslit")
    summary = run_twoslit(config, opt);
  else if (name == "kinetics")
    summary = run_kinetics(config, opt);
  else if (name == "irkernel")
    summary = run_irkernel(config, opt);
  else if (name == "gausslaw")
    summary = run_gausslaw(config, opt);
  else if (name == "units-check")
    summary = run_units_check(config, opt);
  else
    throw ValidationError("unknown scenario '" + name + "'");
  json out;
  out["scenario"] = name;
  out["seed"] = opt.seed;
  out["params"] = params_json(read_params(config));
  out["result"] = summary;
  return out;
}

}  // namespace irbath
