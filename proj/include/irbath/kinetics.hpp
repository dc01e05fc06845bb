#pragma once

#include <cstdint>
#include <vector>

#include "irbath/types.hpp"
#include "irbath/units.hpp"

namespace irbath {

/// Bose-Einstein occupation 1/(e^{k/T} - 1). Throws for k <= 0 or T <= 0.
double planck_n(double k, double T);

/// Thomson-limit scattering probability
/// pi e^4 / (2 m^2 |k1||k2|) [1 + cos^2(k1, k2)].
double w_nonrel(const Vec3& k1, const Vec3& k2, const PhysicalParams& params);

/// Full Dirac trace for electron(q) + photon(k2) -> electron(q+k) + photon(k1),
/// k = k2 - k1, with Coulomb-gauge projectors on both photons. Requires
/// energy conservation to 1e-9 relative to m.
double w_trace(const Vec3& q, const Vec3& k1, const Vec3& k2, const PhysicalParams& params);

/// Energy of the outgoing photon along unit vector n_out when an electron of
/// momentum q absorbs photon k_in.
double compton_energy(double m, const Vec3& q, const Vec3& k_in, const Vec3& n_out);

struct KineticsOptions {
  double rel_tol = 1e-12;
  bool stimulated = true;  // 1 + n factor for the emitted photon
};

/// Rate C(q, k) for the jump q + k -> q, with the delta function resolved in
/// the photon angle. Zero for k = 0 and for empty kinematic ranges.
double collision_rate(const Vec3& q, const Vec3& k, const PhysicalParams& params, const KineticsOptions& opt = {});

/// Angle-integrated kernel for the jump |q| = from -> |q| = to:
/// int kappa dkappa C over |from - to| <= kappa <= from + to.
double shell_kernel(double from, double to, const PhysicalParams& params, const KineticsOptions& opt = {});

/// Total rate out of momentum q, int d^3k/(2pi)^3 C(q+k, -k).
double total_out_rate(const Vec3& q, const PhysicalParams& params, const KineticsOptions& opt = {});
/// sigma_T n_gamma = (8 pi alpha^2 / 3 m^2)(2 zeta(3) T^3 / pi^2).
double thomson_rate(const PhysicalParams& params);

/// Isotropic distribution rho(|q|) on midpoint shells q_i = (i + 1/2) dq.
struct MomentumDistribution {
  double dq = 0.0;
  std::vector<double> q;
  std::vector<double> values;

  static MomentumDistribution boltzmann(double m, double T_e, double q_max, int n);
  static MomentumDistribution shell(double q0, double width, double q_max, int n);

  /// sum 4 pi q^2 dq rho / (2 pi)^3
  double trace() const;
  /// Per-shell probabilities 4 pi q^2 dq rho / (2 pi)^3.
  std::vector<double> populations() const;
  void set_populations(const std::vector<double>& N);
  void normalize();
};

double mean_energy(const MomentumDistribution& rho, double m);

/// Master equation dN_i/dt = sum_j [G(j->i) N_j - G(i->j) N_i] on a fixed grid.
class CollisionMatrix {
 public:
  CollisionMatrix(const std::vector<double>& q, double dq, const PhysicalParams& params, const KineticsOptions& opt = {},
                  int threads = 1);

  std::size_t size() const { return q_.size(); }
  /// Rate from shell j into shell i.
  double rate(std::size_t i, std::size_t j) const { return rate_[i * q_.size() + j]; }
  double kernel(std::size_t from, std::size_t to) const { return kernel_[from * q_.size() + to]; }
  double max_out_rate() const { return max_out_; }
  const std::vector<double>& q() const { return q_; }
  const PhysicalParams& params() const { return params_; }

  /// Gain and loss per shell for populations N.
  void gain_loss(const std::vector<double>& N, std::vector<double>& gain, std::vector<double>& loss) const;
  std::vector<double> derivative(const std::vector<double>& N) const;

 private:
  std::vector<double> q_;
  double dq_;
  PhysicalParams params_;
  std::vector<double> kernel_, rate_;
  double max_out_ = 0.0;
};

struct StepResult {
  MomentumDistribution rho;
  bool accepted = true;
  double suggested_dt = 0.0;
};

/// One explicit Euler step. Throws ValidationError if dt > 0.01 / max rate;
/// a step that would make any shell negative is rejected with dt/2 suggested.
StepResult step(const CollisionMatrix& c, const MomentumDistribution& rho, double dt);

/// sup_i |gain_i - loss_i| / max_i gain_i.
double equilibrium_residual(const CollisionMatrix& c, const MomentumDistribution& rho);

/// d<E>/dt = sum_i eps_i dN_i/dt.
double energy_drift(const CollisionMatrix& c, const MomentumDistribution& rho);

struct RelaxationSample {
  double t = 0.0;
  double mean_energy = 0.0;
  double residual = 0.0;
};

struct RelaxationRun {
  std::vector<RelaxationSample> history;
  std::vector<MomentumDistribution> snapshots;
  std::vector<double> snapshot_times;
  double equilibrium_energy = 0.0;
  double fitted_rate = 0.0;  // from ln(<E> - E_eq) versus t
  double max_trace_drift = 0.0;
  bool monotone = true;
};

/// Steps rho with dt = dt_fraction / max rate until t_end. History is
/// recorded every `record_every` steps.
RelaxationRun relax(const CollisionMatrix& c, MomentumDistribution rho, double t_end, double dt_fraction = 0.01,
                    int record_every = 10, int snapshots = 5);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Independent sampler for d<E>/dt: Planck photons by inverse CDF, outgoing
/// direction from the 1 + cos^2 law, exact Compton energies.
MonteCarloEstimate energy_drift_mc(const MomentumDistribution& rho, const PhysicalParams& params,
                                   std::uint64_t samples_per_shell, std::uint64_t seed, int threads = 1,
                                   bool stimulated = true);

}  // namespace irbath
