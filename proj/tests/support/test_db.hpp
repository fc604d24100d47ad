// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

// Small synthetic property databases used by solver tests that need exactly
// controlled constants (constant cp, chosen conductivities, ...).

#ifndef PYROBED_TESTS_TEST_DB_HPP
#define PYROBED_TESTS_TEST_DB_HPP

#include <limits>
#include <string>

#include "common/constants.hpp"
#include "core/database.hpp"

namespace testsupport {

/// Species with constant specific heat cp_kg anchored so that
/// h(anchor_t) = anchor_h (both per kg).
inline pyrobed::core::Species const_cp_species(const std::string& name, double molar_mass,
                                               pyrobed::core::Phase phase, double cp_kg,
                                               double anchor_t = 300.0, double anchor_h = 0.0,
                                               double t_lo = 10.0, double t_hi = 4000.0) {
  using namespace pyrobed;
  core::PolyPiece p;
  p.t_min = t_lo;
  p.t_max = t_hi;
  const double a0 = cp_kg * molar_mass / constants::gas_constant;
  p.a = {a0, 0, 0, 0, 0, anchor_h * molar_mass / constants::gas_constant - a0 * anchor_t, 0};
  return core::Species(name, molar_mass, phase, {p}, {{name.substr(0, 1), 1.0}});
}

/// One inert solid ("SOLID(s)") and one inert gas ("GAS(g)"), both with
/// cp = 1000 J/(kg K); gas viscosity 2e-5, diffusivity 2e-5. Material
/// "stone": conductivity / porosity / density as given, permeability 1e-12.
inline pyrobed::core::PropertyDatabase solver_db(double solid_conductivity = 1.0,
                                                 double porosity = 0.5,
                                                 double intrinsic_density = 2000.0,
                                                 double cp = 1000.0) {
  using namespace pyrobed;
  core::PropertyDatabase db;
  auto solid = const_cp_species("SOLID(s)", 0.05, core::Phase::solid, cp);
  auto gas = const_cp_species("GAS(g)", 0.05, core::Phase::gas, cp);
  gas.viscosity = 2.0e-5;
  gas.conductivity = 0.026;
  gas.diffusivity = 2.0e-5;
  db.add_species(std::move(solid));
  db.add_species(std::move(gas));

  core::Material m;
  m.name = "stone";
  m.intrinsic_density = intrinsic_density;
  m.conductivity = solid_conductivity;
  m.porosity = porosity;
  m.permeability = 1e-12;
  m.emissivity = 0.9;
  m.melt_temperature = std::numeric_limits<double>::infinity();
  m.latent_heat_fusion = 0.0;
  m.solid_species = "SOLID(s)";
  db.add_material(m);
  return db;
}

} // namespace testsupport

#endif
