// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_PARTICLE_INTERIOR_HPP
#define PYROBED_PARTICLE_INTERIOR_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/database.hpp"
#include "core/material.hpp"
#include "kinetics/mechanism.hpp"
#include "particle/radial_mesh.hpp"

namespace pyrobed::particle {

/// Far-field data seen by one particle over one step. Fluxes q_rad / q_cond
/// are positive when heat leaves the particle; mass_flux entries are positive
/// when mass enters it.
struct ParticleBoundaryCondition {
  double t_inf = 298.15;         // K
  std::vector<double> rho_inf;   // kg/m^3 per gas species in the ambient
  double alpha = 0.0;            // W/(m^2 K)
  std::vector<double> beta;      // m/s per gas species
  double q_rad = 0.0;            // W/m^2 net radiative loss to neighbours
  double q_cond = 0.0;           // W/m^2 net contact-conduction loss
  std::vector<double> mass_flux; // kg/(m^2 s) imposed species flux into the particle
  double ambient_pressure = 101325.0; // Pa, pore-pressure datum at the surface
};

/// Radially resolved particle contents. Cell energies are absolute enthalpy
/// integrals (J); temperature is the consistent inversion of them and is kept
/// up to date by the solver.
struct InteriorState {
  RadialMesh mesh;
  std::vector<double> cell_energy;    // J per cell
  std::vector<double> temperature;    // K per cell
  std::vector<double> porosity;       // per cell
  std::vector<double> pressure;       // Pa per cell (derived)
  std::vector<double> gas_density;    // [cell * n_gas + i], kg/m^3 of pore volume
  std::vector<double> condensed_mass; // [cell * n_cond + j], kg per cell
  std::vector<double> face_velocity;  // m/s per face (derived)
  double reference_cell_width = 0.0;  // consumption threshold, set at creation
  bool consumed = false;

  double gas(std::size_t cell, std::size_t i, std::size_t n_gas) const {
    return gas_density[cell * n_gas + i];
  }
};

/// Per-step exchange record: everything that crossed the particle surface,
/// plus bookkeeping used by conservation audits.
struct InteriorStepResult {
  std::vector<double> mass_to_ambient; // kg per gas species, + = left the particle
  std::vector<double> enthalpy_to_ambient_species; // J carried by those flows
  double melt_mass = 0.0;              // kg released as melt this step
  double melt_enthalpy = 0.0;          // J carried by the melt stream
  double convective_heat_in = 0.0;     // J entering through alpha
  double contact_heat_in = 0.0;        // J entering through q_rad/q_cond (usually negative)
  double source_energy = 0.0;          // J injected by explicit reaction-enthalpy overrides
  double stored_energy = 0.0;          // J total at end of step
  double stored_mass = 0.0;            // kg total at end of step
  double energy_balance_error = 0.0;   // relative, should be ~1e-12
};

struct InteriorSolverParams {
  int max_picard_iterations = 60;
  double picard_tolerance = 1e-11; // relative temperature change
  double advective_cfl = 0.4;
  int max_chemistry_substeps = 4096;
};

/// Transient conservation solver for a single porous particle: implicit
/// conduction, upwinded Darcy advection of pore gas, implicit species
/// diffusion, finite-rate chemistry and heat-limited phase changes.
class InteriorModel {
public:
  InteriorModel(const core::PropertyDatabase& db, core::Material material,
                core::ParticleGeometry geometry, std::vector<std::string> gas_species,
                const kinetics::ReactionMechanism* mechanism = nullptr,
                InteriorSolverParams params = {});

  const core::Material& material() const { return material_; }
  const std::vector<std::string>& gas_species() const { return gas_names_; }
  const std::vector<std::string>& condensed_species() const { return cond_names_; }
  std::size_t gas_count() const { return gas_names_.size(); }
  std::size_t condensed_count() const { return cond_names_.size(); }

  /// Fresh state: uniform temperature, matrix at the material bulk density,
  /// pore gas in equilibrium with the given ambient composition.
  InteriorState make_state(double radius, std::size_t node_count, double temperature,
                           std::span<const double> ambient_gas_density,
                           double moisture_mass_fraction = 0.0) const;

  /// Advance all conserved fields by dt. Books must balance: the relative
  /// energy closure error is recorded in the result (and should be at
  /// round-off level).
  InteriorStepResult step(InteriorState& state, const ParticleBoundaryCondition& bc,
                          double dt) const;

  /// Melting rate per cell, kg/(m^3 s): rho (h - h_m) / (L_f dt) where the
  /// enthalpy excess is positive, zero otherwise.
  std::vector<double> melt_rate(const InteriorState& state, double dt) const;

  /// Darcy velocity at every face, zero at the center by symmetry.
  std::vector<double> darcy_velocity(const InteriorState& state,
                                     double ambient_pressure = 101325.0) const;

  /// Compacts the mesh after surface mass loss; profiles are carried over in
  /// normalized radius so totals are preserved exactly. Returns the new R.
  double shrink(InteriorState& state, double surface_mass_loss) const;

  // -- inspection helpers -------------------------------------------------
  double total_mass(const InteriorState& state) const;
  double total_energy(const InteriorState& state) const;
  double species_mass(const InteriorState& state, const std::string& name) const;
  double cell_mass(const InteriorState& state, std::size_t cell) const;
  /// Mixture enthalpy the cell would hold at temperature t, J.
  double cell_energy_at(const InteriorState& state, std::size_t cell, double t) const;
  double surface_temperature(const InteriorState& state,
                             const ParticleBoundaryCondition& bc) const;
  /// Element inventory (moles) over the whole particle.
  core::ElementMap element_inventory(const InteriorState& state) const;
  double invert_temperature(const InteriorState& state, std::size_t cell, double energy) const;
  double mixture_gas_viscosity(const InteriorState& state, std::size_t cell) const;
  /// Recomputes the ideal-gas pore pressure from composition and temperature.
  void update_pressure(InteriorState& state) const;

  const core::Species& gas_species_ref(std::size_t i) const { return *gas_[i]; }
  const core::Species& condensed_species_ref(std::size_t j) const { return *cond_[j]; }
  std::optional<std::size_t> condensed_index(const std::string& name) const;

private:
  double effective_conductivity(const InteriorState& state, std::size_t cell) const;
  void apply_chemistry(InteriorState& state, double dt, InteriorStepResult& result) const;
  void apply_phase_changes(InteriorState& state, double dt, InteriorStepResult& result) const;

  const core::PropertyDatabase* db_;
  core::Material material_;
  core::ParticleGeometry geometry_;
  InteriorSolverParams params_;
  const kinetics::ReactionMechanism* mechanism_;

  std::vector<std::string> gas_names_;
  std::vector<const core::Species*> gas_;
  std::vector<std::string> cond_names_;
  std::vector<const core::Species*> cond_;
  std::size_t matrix_index_ = 0; // slot of the material's solid species
  std::optional<std::size_t> melt_source_index_; // condensed species that melts
  const core::Species* melt_species_ = nullptr;  // species the melt leaves as

  // mechanism species slot -> (is_gas, local index)
  struct SlotRef {
    bool is_gas = false;
    std::size_t index = 0;
  };
  std::vector<SlotRef> mech_slots_;
};

} // namespace pyrobed::particle

#endif
