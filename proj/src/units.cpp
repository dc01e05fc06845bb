#include "irbath/units.hpp"

#include <cmath>
#include <numbers>

#include "irbath/error.hpp"

namespace irbath {

void PhysicalParams::validate() const {
  require(std::isfinite(m) && m > 0.0, "m must be positive");
  require(std::isfinite(T) && T >= 0.0, "T must be non-negative");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(std::isfinite(Lambda) && Lambda > T && Lambda < m, "need T < Lambda < m");
}

double PhysicalParams::e2() const { return 4.0 * std::numbers::pi * alpha; }

double PhysicalParams::theta() const { return 2.0 * alpha * T / (3.0 * m * m); }

Unit parse_unit(const std::string& name) {
  if (name == "K" || name == "kelvin") return Unit::kelvin;
  if (name == "eV") return Unit::eV;
  if (name == "cm") return Unit::cm;
  if (name == "m" || name == "meter") return Unit::meter;
  if (name == "A" || name == "angstrom") return Unit::angstrom;
  if (name == "s" || name == "second") return Unit::second;
  if (name == "natural") return Unit::natural;
  throw ValidationError("unsupported unit '" + name + "'");
}

std::string unit_name(Unit u) {
  switch (u) {
    case Unit::kelvin: return "kelvin";
    case Unit::eV: return "eV";
    case Unit::cm: return "cm";
    case Unit::meter: return "meter";
    case Unit::angstrom: return "angstrom";
    case Unit::second: return "second";
    case Unit::natural: return "natural";
  }
  return "?";
}

namespace {

double factor(Unit u) {
  const double per_cm = 1.0 / codata::hbar_c_eV_cm;
  switch (u) {
    case Unit::kelvin: return codata::kB_eV_per_K;
    case Unit::eV: return 1.0;
    case Unit::cm: return per_cm;
    case Unit::meter: return 100.0 * per_cm;
    case Unit::angstrom: return 1e-8 * per_cm;
    case Unit::second: return 1.0 / codata::hbar_eV_s;
    case Unit::natural: return 1.0;
  }
  throw ValidationError("unsupported unit");
}

}  // namespace

double to_natural(const LabQuantity& q) {
  require(std::isfinite(q.value), "quantity must be finite");
  return q.value * factor(q.unit);
}

double from_natural(double value, Unit unit) { return value / factor(unit); }

double cm_kelvin_product() { return factor(Unit::cm) * factor(Unit::kelvin); }

double tau_ir(double r, const PhysicalParams& p) {
  require(r > 0.0, "r must be positive");
  if (p.T == 0.0) throw ValidationError("vacuum: no finite thermal time scale");
  return p.m * p.m * r * r / (p.alpha * p.T);
}

double tau_kinetic(const PhysicalParams& p) {
  if (p.T == 0.0) throw ValidationError("vacuum: no finite thermal time scale");
  return p.m * p.m / (p.alpha * p.alpha * p.T * p.T * p.T);
}

double stage_ratio(double r_cm, double T_K) {
  require(r_cm > 0.0 && T_K > 0.0, "stage_ratio needs r > 0 and T > 0");
  const double x = 4.36 * r_cm * T_K;
  return x * x / 137.0;
}

}  // namespace irbath
