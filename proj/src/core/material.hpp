// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_CORE_MATERIAL_HPP
#define PYROBED_CORE_MATERIAL_HPP

#include <string>

#include "common/error.hpp"

namespace pyrobed::core {

/// Bulk properties of a particle material. The melting block is optional;
/// melt_temperature is +inf for materials that never melt.
struct Material {
  std::string name;
  double intrinsic_density = 0.0;  // kg/m^3 of the condensed matrix
  double conductivity = 0.0;       // W/(m K)
  double porosity = 0.0;           // pore volume fraction, [0,1)
  double permeability = 0.0;       // m^2
  double emissivity = 0.0;         // [0,1]
  double melt_temperature = 0.0;   // K
  double latent_heat_fusion = 0.0; // J/kg
  std::string solid_species;       // condensed species making up the matrix
  std::string melt_species;        // species the melt is released as

  void validate() const {
    auto fail = [&](const std::string& m) { throw ConfigError("material " + name + ": " + m); };
    if (intrinsic_density <= 0.0)
      fail("intrinsic_density must be positive");
    if (conductivity <= 0.0)
      fail("conductivity must be positive");
    if (porosity < 0.0 || porosity >= 1.0)
      fail("porosity must lie in [0,1)");
    if (permeability <= 0.0)
      fail("permeability must be positive");
    if (emissivity < 0.0 || emissivity > 1.0)
      fail("emissivity must lie in [0,1]");
    if (melt_temperature <= 0.0)
      fail("melt_temperature must be positive");
    if (latent_heat_fusion < 0.0)
      fail("latent_heat_fusion must be non-negative");
    if (solid_species.empty())
      fail("solid_species is required");
  }
};

} // namespace pyrobed::core

#endif
