#pragma once

#include <string>

namespace irbath {

namespace codata {
inline constexpr double kB_eV_per_K = 8.617333262e-5;
inline constexpr double hbar_c_eV_cm = 1.973269804e-5;
inline constexpr double hbar_eV_s = 6.582119569e-16;
inline constexpr double electron_mass_eV = 510998.95;
inline constexpr double alpha = 1.0 / 137.035999;
}  // namespace codata

/// Electron mass m, bath temperature T, coupling alpha and soft threshold
/// Lambda, all in natural units (eV).
struct PhysicalParams {
  double m = codata::electron_mass_eV;
  double T = 0.0;
  double alpha = codata::alpha;
  double Lambda = 0.0;

  /// Throws ValidationError unless m > 0, T >= 0, 0 < alpha < 1, T < Lambda < m.
  void validate() const;
  double e2() const;     // e^2 = 4 pi alpha
  double theta() const;  // spreading coefficient 2 alpha T / (3 m^2)
};

enum class Unit { kelvin, eV, cm, meter, angstrom, second, natural };

struct LabQuantity {
  double value = 0.0;
  Unit unit = Unit::natural;
};

Unit parse_unit(const std::string& name);
std::string unit_name(Unit u);

/// Energies map to eV, lengths and times to 1/eV.
double to_natural(const LabQuantity& q);
double from_natural(double value, Unit unit);

/// 1 cm in 1/eV times 1 K in eV.
double cm_kelvin_product();

/// tau_1 = m^2 r^2 / (alpha T). Throws ValidationError for T = 0.
double tau_ir(double r, const PhysicalParams& p);
/// tau_2 = m^2 / (alpha^2 T^3). Throws ValidationError for T = 0.
double tau_kinetic(const PhysicalParams& p);
/// (1/137) (4.36 r T)^2 with r in cm and T in kelvin.
double stage_ratio(double r_cm, double T_K);

}  // namespace irbath
