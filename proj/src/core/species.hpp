// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_CORE_SPECIES_HPP
#define PYROBED_CORE_SPECIES_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

namespace pyrobed::core {

enum class Phase { gas, liquid, solid };

std::string phase_name(Phase p);

/// One NASA-7 validity interval: cp/R = a0 + a1 T + a2 T^2 + a3 T^3 + a4 T^4,
/// h/(R T) adds the integration constant a5/T, a6 belongs to entropy and is
/// carried only for round-tripping the database file.
struct PolyPiece {
  double t_min = 0.0;
  double t_max = 0.0;
  std::array<double, 7> a{};
};

/// Element composition parsed from a formula such as "WO2.9" or "CH1.4O0.6".
/// Keys are element symbols, values may be fractional.
using ElementMap = std::map<std::string, double>;

ElementMap parse_formula(const std::string& formula);

/// A chemical species with temperature-dependent thermodynamic properties.
/// Enthalpies are absolute (NASA convention): h at 298.15 K equals the
/// enthalpy of formation, so reaction heats fall out of species data.
class Species {
public:
  Species() = default;
  Species(std::string name, double molar_mass, Phase phase, std::vector<PolyPiece> pieces,
          ElementMap elements);

  const std::string& name() const { return name_; }
  double molar_mass() const { return molar_mass_; } // kg/mol
  Phase phase() const { return phase_; }
  const ElementMap& elements() const { return elements_; }
  const std::vector<PolyPiece>& pieces() const { return pieces_; }

  double t_min() const { return pieces_.front().t_min; }
  double t_max() const { return pieces_.back().t_max; }

  /// Specific enthalpy, J/kg. Out-of-range temperatures are a hard error;
  /// silent extrapolation would corrupt energy balances.
  double enthalpy(double temperature) const;
  /// Specific heat capacity, J/(kg K).
  double heat_capacity(double temperature) const;

  double molar_enthalpy(double temperature) const;      // J/mol
  double molar_heat_capacity(double temperature) const; // J/(mol K)

  // Optional constant transport properties (database keys viscosity /
  // conductivity / diffusivity). Zero means "not set".
  double viscosity = 0.0;    // Pa s
  double conductivity = 0.0; // W/(m K)
  double diffusivity = 0.0;  // m^2/s

private:
  const PolyPiece& piece_for(double temperature) const;

  std::string name_;
  double molar_mass_ = 0.0;
  Phase phase_ = Phase::gas;
  std::vector<PolyPiece> pieces_;
  ElementMap elements_;
};

} // namespace pyrobed::core

#endif
