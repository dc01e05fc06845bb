#pragma once

#include <vector>

#include "irbath/types.hpp"
#include "irbath/units.hpp"

namespace irbath {

using Tensor4 = std::array<std::array<double, 4>, 4>;

/// Coulomb-gauge projector d_{mu nu}(k) with lower indices:
/// eta_{mu nu} - (k0 k_mu n_nu + k0 k_nu n_mu - k_mu k_nu)/|k|^2, n = (1,0,0,0).
Tensor4 coulomb_projector(const Vec4& k);
/// Lorentz-gauge vertex g^mu_alpha = delta^mu_alpha + k_alpha (k^mu - n^mu k0)/|k|^2.
Tensor4 lorentz_vertex(const Vec4& k);
/// g^mu_alpha eta_{mu nu} g^nu_beta.
Tensor4 vertex_contraction(const Vec4& k);

struct KernelInput {
  Vec3 q{0.0, 0.0, 0.0};
  Vec3 p{0.0, 0.0, 0.0};
  double t = 0.0;
  PhysicalParams params;
};

struct KernelOptions {
  double rel_tol = 1e-10;
  int n_phi = 32;  // azimuthal nodes when the integrand is not axially symmetric
  bool vacuum = true;
  bool thermal = true;
};

struct ExponentResult {
  cplx g11, g22, g21, g;
  double error = 0.0;
};

/// g_rs over both light-cone branches, |k| < Lambda. The radial integral is
/// done in closed form (sine/cosine integrals for the vacuum branch and
/// log(sinh(pi T y)/(pi T y))/2 for the thermal one); the sphere of photon
/// directions is integrated numerically.
cplx g_rs(int r, int s, const KernelInput& in, const KernelOptions& opt = {}, double* error = nullptr);
ExponentResult exponent(const KernelInput& in, const KernelOptions& opt = {});

/// Same integral by brute force: |k| panels of at most pi/2 phase, with the
/// photon-direction integral inside and the projector built explicitly.
cplx g_rs_direct(int r, int s, const KernelInput& in, double rel_tol = 1e-8, int n_phi = 16);

/// int_0^Lambda dk n(k) (1 - cos(y k)) / k.
double thermal_radial(double y, double T, double Lambda);
/// int_0^z (e^{iu} - 1)/u du for real z.
cplx vacuum_radial(double z);

struct FitResult {
  double linear = 0.0;
  double log = 0.0;
  double constant = 0.0;
  double residual = 0.0;  // rms
};

/// Least squares Re g(t) = a t + b ln t + c.
FitResult asymptotic_fit(const std::vector<double>& t, const std::vector<double>& re_g);

struct EikonalCheck {
  cplx lhs, rhs;
};

/// Sum over orderings of prod_k 1/(W_k.q + i eps), W_k partial sums, versus
/// prod_k 1/(w_k.q + i eps).
EikonalCheck eikonal_factorization_check(const Vec4& q, const std::vector<Vec4>& w, double epsilon);

/// int d zeta (1 - e^{i zeta t})(1 - e^{-i zeta t}) / zeta^2; equals 2 pi t.
double delta_identity_check(double t);

}  // namespace irbath
