#pragma once

#include <iosfwd>
#include <vector>

#include "irbath/density_matrix.hpp"

namespace irbath {

struct FieldSample {
  Vec3 x{0.0, 0.0, 0.0};
  double t = 0.0;
  double J0 = 0.0;
  double A0 = 0.0;
};

/// J0(x) = int d^dq d^dp/(2pi)^{2d} rho(q,q+p) exp(-i p.x) for the state as
/// given. The vertex factor is taken as 1, so the density integrates to the
/// trace. Throws NumericError if the imaginary part exceeds 1e-10 relative.
double charge_density(const DensityMatrix& rho, const Vec3& x);
/// Same, evaluated on propagate(rho0, t) without materializing the state.
double charge_density(const DensityMatrix& rho0, const Vec3& x, double t, const PhysicalParams& params);

/// A0(x) = e int rho exp(-i p.x) / p^2 with the p = 0 node skipped. Grid
/// states must be three-dimensional.
double coulomb_potential(const DensityMatrix& rho, const Vec3& x, const PhysicalParams& params);
double coulomb_potential(const DensityMatrix& rho0, const Vec3& x, double t, const PhysicalParams& params);

/// max_p |p^2 A0(p) - e J0(p)| / (|e J0(p)| + eps) over the p-grid. For a
/// GaussianPure state a 3D probe grid of `probe` points per axis is used.
double gauss_residual(const DensityMatrix& rho, const PhysicalParams& params, int probe = 9);

/// Fourier image J0(p) = int d^dq/(2pi)^d rho(q, q+p) for each p-grid node.
std::vector<cplx> density_spectrum(const GridState& g);

/// Density of a packet centred at the origin from three independent 1D grid
/// pipelines (sample -> propagate -> charge_density), one per axis, with
/// n nodes on [-half_width, half_width] for both q and p. Exact for
/// eps_q additive over axes, i.e. up to O(q^4 t / m^3).
double axis_product_density(const GaussianPure& g, const Vec3& x, double t, const PhysicalParams& params,
                            std::size_t n, double half_width);

void write_field_csv(std::ostream& os, const std::vector<FieldSample>& samples);

}  // namespace irbath
