#include "tunnelgate/units.hpp"

#include <cmath>

#include "tunnelgate/errors.hpp"

namespace tunnelgate {

const char* to_string(UnitMode mode) {
  return mode == UnitMode::Natural ? "natural" : "si";
}

UnitSystem UnitSystem::si(double mass_kg) {
  if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
    fail(ErrorCode::InvalidInput, "SI unit system requires a positive mass in kg");
  }
  return {UnitMode::Si, mass_kg};
}

double UnitSystem::rest_energy_J() const {
  return mass_kg * constants::c_m_per_s * constants::c_m_per_s;
}

double UnitSystem::energy_to_natural(double energy_eV) const {
  if (mode == UnitMode::Natural) return energy_eV;
  return energy_eV * constants::eV_J / rest_energy_J();
}

double UnitSystem::energy_from_natural(double energy) const {
  if (mode == UnitMode::Natural) return energy;
  return energy * rest_energy_J() / constants::eV_J;
}

double UnitSystem::length_to_natural(double length_m) const {
  if (mode == UnitMode::Natural) return length_m;
  // Unit of length is the reduced Compton wavelength hbar / (m c).
  const double compton_m =
      constants::hbar_J_s / (mass_kg * constants::c_m_per_s);
  return length_m / compton_m;
}

double UnitSystem::length_from_natural(double length) const {
  if (mode == UnitMode::Natural) return length;
  const double compton_m =
      constants::hbar_J_s / (mass_kg * constants::c_m_per_s);
  return length * compton_m;
}

double UnitSystem::time_to_natural(double time_s) const {
  if (mode == UnitMode::Natural) return time_s;
  return time_s * rest_energy_J() / constants::hbar_J_s;
}

double UnitSystem::time_from_natural(double time) const {
  if (mode == UnitMode::Natural) return time;
  return time * constants::hbar_J_s / rest_energy_J();
}

}  // namespace tunnelgate
