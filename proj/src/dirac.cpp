#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>

#include "irbath/error.hpp"
#include "irbath/ir_kernel.hpp"
#include "irbath/kinetics.hpp"

namespace irbath {

namespace {

using Mat = Eigen::Matrix4cd;

// Dirac representation.
std::array<Mat, 4> gammas() {
  const cplx I(0.0, 1.0);
  std::array<Mat, 4> g;
  for (auto& x : g) x.setZero();
  g[0].diagonal() << 1.0, 1.0, -1.0, -1.0;
  Eigen::Matrix2cd s[3];
  s[0] << 0.0, 1.0, 1.0, 0.0;
  s[1] << 0.0, -I, I, 0.0;
  s[2] << 1.0, 0.0, 0.0, -1.0;
  for (int i = 0; i < 3; ++i) {
    g[i + 1].block<2, 2>(0, 2) = s[i];
    g[i + 1].block<2, 2>(2, 0) = -s[i];
  }
  return g;
}

Mat slash(const std::array<Mat, 4>& g, const Vec4& p) { return g[0] * p[0] - g[1] * p[1] - g[2] * p[2] - g[3] * p[3]; }

Vec4 photon(const Vec3& k) { return {norm(k), k[0], k[1], k[2]}; }

Vec4 sub(const Vec4& a, const Vec4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }
Vec4 add(const Vec4& a, const Vec4& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

}  // namespace

double w_trace(const Vec3& q3, const Vec3& k1_3, const Vec3& k2_3, const PhysicalParams& params) {
  const double m = params.m;
  require(m > 0.0, "w_trace needs m > 0");
  require(norm(k1_3) > 0.0 && norm(k2_3) > 0.0, "w_trace needs nonzero photon momenta");
  const Vec4 q = on_shell(m, q3);
  const Vec4 k1 = photon(k1_3), k2 = photon(k2_3);
  const Vec3 qk3 = q3 + k2_3 - k1_3;
  const Vec4 qk = on_shell(m, qk3);
  if (std::abs(q[0] + k2[0] - qk[0] - k1[0]) > 1e-9 * m) throw ValidationError("w_trace: energy not conserved");
  const double den1 = m * m - mdot(sub(q, k1), sub(q, k1));
  const double den2 = m * m - mdot(add(q, k2), add(q, k2));
  if (std::abs(den1) < 1e-8 * m * m || std::abs(den2) < 1e-8 * m * m)
    throw ValidationError("w_trace: near-collinear configuration excluded");

  static const std::array<Mat, 4> g = gammas();
  const Mat one = Mat::Identity();
  const Mat S1 = (slash(g, sub(q, k1)) + m * one) / den1;
  const Mat S2 = (slash(g, add(q, k2)) + m * one) / den2;
  // M[a][b] = g^a S1 g^b + g^b S2 g^a
  std::array<std::array<Mat, 4>, 4> M;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) M[a][b] = g[a] * S1 * g[b] + g[b] * S2 * g[a];

  const Tensor4 d1 = coulomb_projector(k1), d2 = coulomb_projector(k2);
  const Mat Qf = slash(g, qk) + m * one;
  const Mat Qi = slash(g, q) + m * one;
  cplx tr = 0.0;
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be) {
      // sum_{mu nu} d_{mu al}(k1) d_{nu be}(k2) M[mu][nu]
      Mat A = Mat::Zero();
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          double c = d1[mu][al] * d2[nu][be];
          if (c != 0.0) A += c * M[mu][nu];
        }
      tr += (Qf * M[be][al] * Qi * A).trace();
    }
  if (std::abs(tr.imag()) > 1e-8 * std::abs(tr)) throw NumericError("w_trace: complex trace");
  const double pref = std::numbers::pi * params.e2() * params.e2() / (16.0 * q[0] * qk[0] * k1[0] * k2[0]);
  return pref * tr.real();
}

}  // namespace irbath
