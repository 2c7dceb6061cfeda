#pragma once

namespace tunnelgate {

// SI values of the constants that are set to 1 internally (CODATA 2018;
// c and eV are exact by definition).
namespace constants {
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double c_m_per_s = 2.99792458e8;
inline constexpr double eV_J = 1.602176634e-19;
}  // namespace constants

enum class UnitMode { Natural, Si };

const char* to_string(UnitMode mode);

/// Conversions between SI quantities and the natural system hbar = c = 1 of a
/// particle of rest mass `mass_kg`: energies in units of m c^2, lengths in
/// units of hbar/(m c) (reduced Compton wavelength), times in hbar/(m c^2).
/// In Natural mode every conversion is the identity.
struct UnitSystem {
  UnitMode mode = UnitMode::Natural;
  double mass_kg = 0.0;  // meaningful in Si mode only

  static UnitSystem natural() { return {UnitMode::Natural, 0.0}; }
  static UnitSystem si(double mass_kg);

  // SI side: energies in eV, lengths in meters, times in seconds.
  double energy_to_natural(double energy_eV) const;
  double energy_from_natural(double energy) const;
  double length_to_natural(double length_m) const;
  double length_from_natural(double length) const;
  double time_to_natural(double time_s) const;
  double time_from_natural(double time) const;

 private:
  double rest_energy_J() const;
};

}  // namespace tunnelgate
