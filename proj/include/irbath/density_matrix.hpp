#pragma once

#include <cstddef>
#include <iosfwd>
#include <variant>
#include <vector>

#include "irbath/types.hpp"
#include "irbath/units.hpp"

namespace irbath {

/// Uniform axis x_i = start + i*step, i < n.
struct Axis {
  double start = 0.0;
  double step = 1.0;
  std::size_t n = 1;

  double at(std::size_t i) const { return start + step * static_cast<double>(i); }
  /// Index of the node equal to x (within 1e-9 step), or -1.
  long find(double x) const;
  static Axis symmetric(double half_width, std::size_t n);
};

/// Cartesian product of one axis in 1 or 3 dimensions.
struct MomentumGrid {
  int dim = 1;
  Axis axis;

  std::size_t size() const;
  Vec3 point(std::size_t flat) const;  // unused components are 0
  double weight() const;               // step^dim
  long find(const Vec3& v) const;
};

/// Pure Gaussian packet phi0(q) exp(-i q.x0 + i eps_q tau) after an elapsed
/// evolution time; theta_t accumulates Theta*t over propagate calls.
struct GaussianPure {
  double l = 1.0;
  Vec3 x0{0.0, 0.0, 0.0};
  double tau = 0.0;
  double m = 1.0;  // mass entering eps_q
  double elapsed = 0.0;
  double theta_t = 0.0;

  /// Momentum amplitude restricted to the first `dim` components.
  cplx amplitude(const Vec3& q, int dim = 3) const;
  cplx value(const Vec3& q, const Vec3& qp, int dim = 3) const;
};

/// rho(q, q+p) tabulated on q-grid x p-grid, index iq*np + ip.
struct GridState {
  MomentumGrid q;
  MomentumGrid p;
  std::vector<cplx> values;

  cplx at(std::size_t iq, std::size_t ip) const { return values[iq * p.size() + ip]; }
};

using DensityMatrix = std::variant<GridState, GaussianPure>;

/// exp(-2 alpha p2 T t / (3 m^2)).
double ir_decoherence_factor(double p2, double t, const PhysicalParams& params);

/// Closed-form infrared propagator: multiplies rho(q, q+p) by
/// exp(i (eps_{q+p} - eps_q) t) * ir_decoherence_factor(p^2, t).
DensityMatrix propagate(const DensityMatrix& rho0, double t, const PhysicalParams& params, int threads = 1);

/// Sum over q of rho(q,q) d^dq/(2pi)^d; exactly 1 for GaussianPure.
double trace_norm(const DensityMatrix& rho);

/// Largest |rho(q',q) - conj rho(q,q')| over pairs present on the grid.
double hermiticity_defect(const GridState& g);

/// Tabulates a Gaussian packet on the given grids.
GridState sample(const GaussianPure& g, const MomentumGrid& q, const MomentumGrid& p);

/// Per-dimension normalization (4 pi l^2)^{1/4}; the 3D state is the cube.
double gaussian_amplitude_1d(double l, double q);

void write_csv(std::ostream& os, const GridState& g);

}  // namespace irbath
