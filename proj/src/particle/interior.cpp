// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include "particle/interior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/constants.hpp"
#include "common/error.hpp"
#include "common/tridiag.hpp"

namespace pyrobed::particle {

using core::Phase;
using core::Species;

namespace {
constexpr double tiny_mass = 1e-300;

void check_finite(double v, const char* field, std::size_t cell) {
  if (!std::isfinite(v))
    throw StepError(std::string("interior step diverged: non-finite ") + field + " at node " +
                    std::to_string(cell));
}
} // namespace

InteriorModel::InteriorModel(const core::PropertyDatabase& db, core::Material material,
                             core::ParticleGeometry geometry,
                             std::vector<std::string> gas_species,
                             const kinetics::ReactionMechanism* mechanism,
                             InteriorSolverParams params)
  : db_(&db)
  , material_(std::move(material))
  , geometry_(geometry)
  , params_(params)
  , mechanism_(mechanism) {
  material_.validate();

  auto add_gas = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < gas_names_.size(); ++i)
      if (gas_names_[i] == name)
        return i;
    gas_names_.push_back(name);
    gas_.push_back(&db_->species(name));
    return gas_names_.size() - 1;
  };
  auto add_cond = [&](const std::string& name) -> std::size_t {
    for (std::size_t j = 0; j < cond_names_.size(); ++j)
      if (cond_names_[j] == name)
        return j;
    cond_names_.push_back(name);
    cond_.push_back(&db_->species(name));
    return cond_names_.size() - 1;
  };

  for (const auto& g : gas_species)
    add_gas(g);
  matrix_index_ = add_cond(material_.solid_species);

  if (mechanism_) {
    mech_slots_.resize(mechanism_->species_count());
    for (std::size_t s = 0; s < mechanism_->species_count(); ++s) {
      const auto& name = mechanism_->species_names()[s];
      const auto& sp = db_->species(name);
      if (sp.phase() == Phase::gas)
        mech_slots_[s] = {true, add_gas(name)};
      else
        mech_slots_[s] = {false, add_cond(name)};
    }
    for (const auto& r : mechanism_->reactions()) {
      if (r.model != kinetics::RateModel::heat_limited)
        continue;
      if (r.reactants.size() != 1 || r.products.size() != 1 ||
          r.reactants[0].nu != r.products[0].nu)
        throw ConfigError("heat-limited reaction '" + r.equation +
                          "' must convert one condensed species into one gas species");
      if (mech_slots_[r.reactants[0].species].is_gas ||
          !mech_slots_[r.products[0].species].is_gas)
        throw ConfigError("heat-limited reaction '" + r.equation +
                          "' must have a condensed reactant and a gaseous product");
    }
  }

  if (std::isfinite(material_.melt_temperature) && !material_.melt_species.empty()) {
    melt_source_index_ = matrix_index_;
    melt_species_ = &db_->species(material_.melt_species);
  }
}

std::optional<std::size_t> InteriorModel::condensed_index(const std::string& name) const {
  for (std::size_t j = 0; j < cond_names_.size(); ++j)
    if (cond_names_[j] == name)
      return j;
  return std::nullopt;
}

InteriorState InteriorModel::make_state(double radius, std::size_t node_count,
                                        double temperature,
                                        std::span<const double> ambient_gas_density,
                                        double moisture_mass_fraction) const {
  InteriorState s;
  s.mesh = RadialMesh::uniform(geometry_, radius, node_count);
  const std::size_t n = s.mesh.cells();
  const std::size_t ng = gas_count(), nc = condensed_count();
  s.porosity.assign(n, material_.porosity);
  s.gas_density.assign(n * ng, 0.0);
  s.condensed_mass.assign(n * nc, 0.0);
  s.temperature.assign(n, temperature);
  s.cell_energy.assign(n, 0.0);
  s.pressure.assign(n, 0.0);
  s.face_velocity.assign(n + 1, 0.0);
  s.reference_cell_width = s.mesh.cell_width(0);

  std::optional<std::size_t> water = condensed_index("H2O(l)");
  if (moisture_mass_fraction > 0.0 && !water)
    throw ConfigError("moisture requested but H2O(l) is not a condensed species here "
                      "(attach the drying mechanism)");

  for (std::size_t c = 0; c < n; ++c) {
    const double v = s.mesh.cell_volumes[c];
    const double matrix = material_.intrinsic_density * (1.0 - material_.porosity) * v;
    s.condensed_mass[c * nc + matrix_index_] = matrix;
    if (moisture_mass_fraction > 0.0)
      s.condensed_mass[c * nc + *water] =
        matrix * moisture_mass_fraction / (1.0 - moisture_mass_fraction);
    for (std::size_t i = 0; i < ng && i < ambient_gas_density.size(); ++i)
      s.gas_density[c * ng + i] = ambient_gas_density[i];
    s.cell_energy[c] = cell_energy_at(s, c, temperature);
  }
  update_pressure(s);
  return s;
}

double InteriorModel::cell_mass(const InteriorState& s, std::size_t c) const {
  const std::size_t ng = gas_count(), nc = condensed_count();
  double m = 0.0;
  for (std::size_t j = 0; j < nc; ++j)
    m += s.condensed_mass[c * nc + j];
  const double pore = s.porosity[c] * s.mesh.cell_volumes[c];
  for (std::size_t i = 0; i < ng; ++i)
    m += s.gas_density[c * ng + i] * pore;
  return m;
}

double InteriorModel::cell_energy_at(const InteriorState& s, std::size_t c, double t) const {
  const std::size_t ng = gas_count(), nc = condensed_count();
  double e = 0.0;
  for (std::size_t j = 0; j < nc; ++j) {
    const double m = s.condensed_mass[c * nc + j];
    if (m > tiny_mass)
      e += m * cond_[j]->enthalpy(t);
  }
  const double pore = s.porosity[c] * s.mesh.cell_volumes[c];
  for (std::size_t i = 0; i < ng; ++i) {
    const double m = s.gas_density[c * ng + i] * pore;
    if (m > tiny_mass)
      e += m * gas_[i]->enthalpy(t);
  }
  return e;
}

double InteriorModel::invert_temperature(const InteriorState& s, std::size_t c,
                                         double energy) const {
  const std::size_t ng = gas_count(), nc = condensed_count();
  // temperature bracket: intersection of validity ranges of present species
  double t_lo = 1.0, t_hi = 1e9;
  double mass = 0.0;
  for (std::size_t j = 0; j < nc; ++j)
    if (s.condensed_mass[c * nc + j] > tiny_mass) {
      t_lo = std::max(t_lo, cond_[j]->t_min());
      t_hi = std::min(t_hi, cond_[j]->t_max());
      mass += s.condensed_mass[c * nc + j];
    }
  const double pore = s.porosity[c] * s.mesh.cell_volumes[c];
  for (std::size_t i = 0; i < ng; ++i)
    if (s.gas_density[c * ng + i] * pore > tiny_mass) {
      t_lo = std::max(t_lo, gas_[i]->t_min());
      t_hi = std::min(t_hi, gas_[i]->t_max());
      mass += s.gas_density[c * ng + i] * pore;
    }
  if (mass <= tiny_mass)
    return s.temperature[c]; // empty cell keeps its temperature
  if (t_lo >= t_hi)
    throw StepError("interior: species validity ranges do not overlap at node " +
                    std::to_string(c));

  double t = std::clamp(s.temperature[c], t_lo, t_hi);
  // early out keeps untouched cells bit-stable
  double f = cell_energy_at(s, c, t) - energy;
  const double scale = std::max(std::abs(energy), mass * 1e3);
  if (std::abs(f) < 1e-13 * scale)
    return t;

  double lo = t_lo, hi = t_hi;
  if (cell_energy_at(s, c, t_lo) - energy > 0.0)
    throw StepError("interior: energy below valid range (field temperature) at node " +
                    std::to_string(c));
  if (cell_energy_at(s, c, t_hi) - energy < 0.0)
    throw StepError("interior: energy above valid range (field temperature) at node " +
                    std::to_string(c));

  for (int it = 0; it < 200; ++it) {
    if (f > 0.0)
      hi = t;
    else
      lo = t;
    double cp = 0.0;
    for (std::size_t j = 0; j < nc; ++j)
      if (s.condensed_mass[c * nc + j] > tiny_mass)
        cp += s.condensed_mass[c * nc + j] * cond_[j]->heat_capacity(t);
    for (std::size_t i = 0; i < ng; ++i)
      if (s.gas_density[c * ng + i] * pore > tiny_mass)
        cp += s.gas_density[c * ng + i] * pore * gas_[i]->heat_capacity(t);
    double t_new = t - f / cp;
    if (!(t_new > lo && t_new < hi))
      t_new = 0.5 * (lo + hi); // safeguarded bisection
    if (std::abs(t_new - t) < 1e-8 * t_new)
      return t_new;
    t = t_new;
    f = cell_energy_at(s, c, t) - energy;
  }
  throw StepError("interior: temperature inversion failed to converge at node " +
                  std::to_string(c));
}

void InteriorModel::update_pressure(InteriorState& s) const {
  const std::size_t ng = gas_count();
  for (std::size_t c = 0; c < s.mesh.cells(); ++c) {
    double molar = 0.0;
    for (std::size_t i = 0; i < ng; ++i)
      molar += s.gas_density[c * ng + i] / gas_[i]->molar_mass();
    s.pressure[c] = molar * constants::gas_constant * s.temperature[c];
  }
}

double InteriorModel::mixture_gas_viscosity(const InteriorState& s, std::size_t c) const {
  const std::size_t ng = gas_count();
  double m = 0.0, mu = 0.0;
  for (std::size_t i = 0; i < ng; ++i) {
    const double rho = s.gas_density[c * ng + i];
    const double visc = gas_[i]->viscosity > 0.0 ? gas_[i]->viscosity : 1.8e-5;
    m += rho;
    mu += rho * visc;
  }
  return m > 0.0 ? mu / m : 1.8e-5;
}

double InteriorModel::effective_conductivity(const InteriorState& s, std::size_t c) const {
  const std::size_t ng = gas_count();
  double m = 0.0, lam_gas = 0.0;
  for (std::size_t i = 0; i < ng; ++i) {
    const double rho = s.gas_density[c * ng + i];
    m += rho;
    lam_gas += rho * (gas_[i]->conductivity > 0.0 ? gas_[i]->conductivity : 0.026);
  }
  lam_gas = m > 0.0 ? lam_gas / m : 0.026;
  // volume-fraction weighted arithmetic mean of the phase conductivities
  return (1.0 - s.porosity[c]) * material_.conductivity + s.porosity[c] * lam_gas;
}

std::vector<double> InteriorModel::darcy_velocity(const InteriorState& s,
                                                  double ambient_pressure) const {
  const std::size_t n = s.mesh.cells();
  std::vector<double> u(n + 1, 0.0);
  const double k_perm = material_.permeability;
  for (std::size_t f = 1; f < n; ++f) {
    const double eps = 0.5 * (s.porosity[f - 1] + s.porosity[f]);
    if (eps < 1e-12)
      continue;
    const double dx = s.mesh.cell_center(f) - s.mesh.cell_center(f - 1);
    const double grad = (s.pressure[f] - s.pressure[f - 1]) / dx;
    const double mu =
      0.5 * (mixture_gas_viscosity(s, f - 1) + mixture_gas_viscosity(s, f));
    u[f] = -k_perm / (mu * eps) * grad;
  }
  // surface face: half-cell gradient to the ambient pore-pressure datum
  if (s.porosity[n - 1] >= 1e-12) {
    const double half = 0.5 * s.mesh.cell_width(n - 1);
    const double grad = (ambient_pressure - s.pressure[n - 1]) / half;
    u[n] = -k_perm / (mixture_gas_viscosity(s, n - 1) * s.porosity[n - 1]) * grad;
  }
  return u;
}

std::vector<double> InteriorModel::melt_rate(const InteriorState& s, double dt) const {
  if (dt <= 0.0)
    throw ConfigError("melt_rate: dt must be positive");
  const std::size_t n = s.mesh.cells();
  std::vector<double> rate(n, 0.0);
  if (!melt_source_index_)
    return rate;
  const double t_m = material_.melt_temperature;
  for (std::size_t c = 0; c < n; ++c) {
    const double mass = cell_mass(s, c);
    if (mass <= tiny_mass)
      continue;
    const double h = s.cell_energy[c] / mass;
    const double h_m = cell_energy_at(s, c, t_m) / mass;
    if (h <= h_m)
      continue;
    if (material_.latent_heat_fusion <= 0.0)
      throw ConfigError("material " + material_.name +
                        ": latent_heat_fusion is zero but enthalpy exceeds the melting point");
    const double rho = mass / s.mesh.cell_volumes[c];
    rate[c] = rho * (h - h_m) / (material_.latent_heat_fusion * dt);
  }
  return rate;
}

void InteriorModel::apply_chemistry(InteriorState& s, double dt,
                                    InteriorStepResult& result) const {
  if (!mechanism_)
    return;
  const std::size_t n = s.mesh.cells();
  const std::size_t ng = gas_count(), nc = condensed_count();
  const std::size_t ns = mechanism_->species_count();
  const auto& reactions = mechanism_->reactions();

  std::vector<double> c0(ns), k1(ns), k2(ns), trial(ns);
  std::vector<double> progress(reactions.size());

  for (std::size_t cell = 0; cell < n; ++cell) {
    const double v = s.mesh.cell_volumes[cell];
    const double t = s.temperature[cell];

    // concentrations on a total-volume basis, mol/m^3
    for (std::size_t sp = 0; sp < ns; ++sp) {
      const auto& slot = mech_slots_[sp];
      if (slot.is_gas)
        c0[sp] = s.gas_density[cell * ng + slot.index] * s.porosity[cell] /
                 gas_[slot.index]->molar_mass();
      else
        c0[sp] = s.condensed_mass[cell * nc + slot.index] / (v * cond_[slot.index]->molar_mass());
    }
    std::fill(progress.begin(), progress.end(), 0.0);

    double remaining = dt;
    int guard = 0;
    while (remaining > 1e-16 * dt) {
      double h = remaining;
      for (;; ++guard) {
        if (guard > params_.max_chemistry_substeps)
          throw StepError("interior chemistry: substep underflow at node " +
                          std::to_string(cell));
        std::fill(k1.begin(), k1.end(), 0.0);
        mechanism_->add_rates(c0, t, k1);
        bool ok = true;
        for (std::size_t sp = 0; sp < ns; ++sp) {
          trial[sp] = c0[sp] + h * k1[sp];
          check_finite(trial[sp], "concentration", cell);
          if (trial[sp] < 0.0)
            ok = false;
        }
        if (ok) {
          std::fill(k2.begin(), k2.end(), 0.0);
          mechanism_->add_rates(trial, t, k2);
          for (std::size_t sp = 0; sp < ns; ++sp) {
            trial[sp] = c0[sp] + 0.5 * h * (k1[sp] + k2[sp]);
            if (trial[sp] < 0.0)
              ok = false;
          }
        }
        if (ok)
          break;
        h *= 0.5;
      }
      // per-reaction progress for enthalpy overrides (midpoint of the stage rates)
      for (std::size_t k = 0; k < reactions.size(); ++k) {
        if (reactions[k].model == kinetics::RateModel::heat_limited)
          continue;
        const double qa = reactions[k].progress_rate(c0, t);
        const double qb = reactions[k].progress_rate(trial, t);
        progress[k] += 0.5 * (qa + qb) * h;
      }
      c0 = trial;
      remaining -= h;
    }

    // write back
    for (std::size_t sp = 0; sp < ns; ++sp) {
      const auto& slot = mech_slots_[sp];
      if (slot.is_gas)
        s.gas_density[cell * ng + slot.index] =
          c0[sp] * gas_[slot.index]->molar_mass() / s.porosity[cell];
      else
        s.condensed_mass[cell * nc + slot.index] = c0[sp] * cond_[slot.index]->molar_mass() * v;
    }

    // explicit reaction-enthalpy overrides: correct the heat release from the
    // species-data value to the prescribed one
    for (std::size_t k = 0; k < reactions.size(); ++k) {
      const auto& r = reactions[k];
      if (!r.enthalpy_override || progress[k] == 0.0)
        continue;
      double h_db = 0.0;
      for (const auto& term : r.products) {
        const auto& slot = mech_slots_[term.species];
        const Species& sp = slot.is_gas ? *gas_[slot.index] : *cond_[slot.index];
        h_db += term.nu * sp.molar_enthalpy(t);
      }
      for (const auto& term : r.reactants) {
        const auto& slot = mech_slots_[term.species];
        const Species& sp = slot.is_gas ? *gas_[slot.index] : *cond_[slot.index];
        h_db -= term.nu * sp.molar_enthalpy(t);
      }
      const double extra = (h_db - *r.enthalpy_override) * progress[k] * v;
      s.cell_energy[cell] += extra;
      result.source_energy += extra;
    }

    s.temperature[cell] = invert_temperature(s, cell, s.cell_energy[cell]);
  }
}

void InteriorModel::apply_phase_changes(InteriorState& s, double dt,
                                        InteriorStepResult& result) const {
  const std::size_t n = s.mesh.cells();
  const std::size_t ng = gas_count(), nc = condensed_count();
  (void)dt;

  // melting: enthalpy excess above T_m leaves as melt at h_solid(T_m) + L_f
  if (melt_source_index_) {
    const double t_m = material_.melt_temperature;
    const double h_out = cond_[*melt_source_index_]->enthalpy(t_m) + material_.latent_heat_fusion;
    for (std::size_t c = 0; c < n; ++c) {
      double& src = s.condensed_mass[c * nc + *melt_source_index_];
      if (src <= tiny_mass)
        continue;
      const double e_m = cell_energy_at(s, c, t_m);
      const double excess = s.cell_energy[c] - e_m;
      if (excess <= 0.0)
        continue;
      if (material_.latent_heat_fusion <= 0.0)
        throw ConfigError("material " + material_.name +
                          ": latent_heat_fusion is zero but enthalpy exceeds the melting point");
      const double dm = std::min(excess / material_.latent_heat_fusion, src);
      src -= dm;
      s.cell_energy[c] -= dm * h_out;
      result.melt_mass += dm;
      result.melt_enthalpy += dm * h_out;
      s.temperature[c] = invert_temperature(s, c, s.cell_energy[c]);
    }
  }

  // heat-limited evaporation (drying): condensed -> pore gas at T_act
  if (mechanism_) {
    for (const auto& r : mechanism_->reactions()) {
      if (r.model != kinetics::RateModel::heat_limited)
        continue;
      const auto& src_slot = mech_slots_[r.reactants[0].species];
      const auto& dst_slot = mech_slots_[r.products[0].species];
      const Species& liq = *cond_[src_slot.index];
      const Species& vap = *gas_[dst_slot.index];
      for (std::size_t c = 0; c < n; ++c) {
        double& src = s.condensed_mass[c * nc + src_slot.index];
        if (src <= tiny_mass)
          continue;
        const double t_act = r.activation_from_saturation
                               ? kinetics::saturation_temperature(
                                   std::max(s.pressure[c], 1e3))
                               : r.activation_temperature;
        const double e_act = cell_energy_at(s, c, t_act);
        const double excess = s.cell_energy[c] - e_act;
        if (excess <= 0.0)
          continue;
        const double latent = vap.enthalpy(t_act) - liq.enthalpy(t_act);
        if (latent <= 0.0)
          throw ConfigError("heat-limited reaction '" + r.equation +
                            "': product enthalpy must exceed reactant enthalpy");
        const double dm = std::min(excess / latent, src);
        src -= dm;
        s.gas_density[c * ng + dst_slot.index] +=
          dm / (s.porosity[c] * s.mesh.cell_volumes[c]);
        // cell energy unchanged: the vapour keeps its enthalpy in the cell
        s.temperature[c] = invert_temperature(s, c, s.cell_energy[c]);
      }
    }
  }
}

InteriorStepResult InteriorModel::step(InteriorState& s, const ParticleBoundaryCondition& bc,
                                       double dt) const {
  if (dt <= 0.0)
    throw ConfigError("interior step: dt must be positive");
  const std::size_t n = s.mesh.cells();
  const std::size_t ng = gas_count();

  InteriorStepResult result;
  result.mass_to_ambient.assign(ng, 0.0);
  result.enthalpy_to_ambient_species.assign(ng, 0.0);

  const double e_before = total_energy(s);

  // 1. finite-rate chemistry (lagged with respect to transport)
  apply_chemistry(s, dt, result);

  // 2. pore pressure and Darcy velocities. Venting through the surface is
  //    stiff on the outer time step, so the total-gas continuity is relaxed
  //    implicitly for pressure first; the advective fluxes then use the
  //    relaxed field and stay bounded.
  update_pressure(s);

  double eps_max = 0.0;
  for (std::size_t c = 0; c < n; ++c)
    eps_max = std::max(eps_max, s.porosity[c]);
  const bool gas_active = ng > 0 && eps_max > 1e-12;
  s.face_velocity.assign(n + 1, 0.0);

  if (gas_active) {
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), p_star(n);
    std::vector<double> rho_tot(n), mu_cell(n);
    for (std::size_t c = 0; c < n; ++c) {
      double molar = 0.0, rho = 0.0;
      for (std::size_t i = 0; i < ng; ++i) {
        rho += s.gas_density[c * ng + i];
        molar += s.gas_density[c * ng + i] / gas_[i]->molar_mass();
      }
      rho_tot[c] = rho;
      mu_cell[c] = mixture_gas_viscosity(s, c);
      // d(gas mass)/dp at fixed T and composition
      const double cap =
        molar > 0.0
          ? s.porosity[c] * s.mesh.cell_volumes[c] * (rho / molar) /
              (constants::gas_constant * s.temperature[c])
          : 1e-30;
      diag[c] = cap / dt;
      p_star[c] = cap / dt * s.pressure[c];
    }
    const double k_perm = material_.permeability;
    for (std::size_t f = 1; f < n; ++f) {
      const double mu_f = 0.5 * (mu_cell[f - 1] + mu_cell[f]);
      const double rho_f = 0.5 * (rho_tot[f - 1] + rho_tot[f]);
      const double dx = s.mesh.cell_center(f) - s.mesh.cell_center(f - 1);
      const double mob = s.mesh.face_areas[f] * rho_f * k_perm / (mu_f * dx);
      diag[f - 1] += mob;
      sup[f - 1] -= mob;
      diag[f] += mob;
      sub[f] -= mob;
    }
    {
      double rho_amb = 0.0;
      for (double r : bc.rho_inf)
        rho_amb += r;
      const double half = 0.5 * s.mesh.cell_width(n - 1);
      const double rho_f = 0.5 * (rho_tot[n - 1] + rho_amb);
      const double mob = s.mesh.face_areas[n] * rho_f * k_perm / (mu_cell[n - 1] * half);
      diag[n - 1] += mob;
      p_star[n - 1] += mob * bc.ambient_pressure;
    }
    solve_tridiagonal(sub, diag, sup, p_star);

    for (std::size_t f = 1; f < n; ++f) {
      const double eps_f = 0.5 * (s.porosity[f - 1] + s.porosity[f]);
      if (eps_f < 1e-12)
        continue;
      const double mu_f = 0.5 * (mu_cell[f - 1] + mu_cell[f]);
      const double dx = s.mesh.cell_center(f) - s.mesh.cell_center(f - 1);
      s.face_velocity[f] = -k_perm / (mu_f * eps_f) * (p_star[f] - p_star[f - 1]) / dx;
    }
    if (s.porosity[n - 1] >= 1e-12) {
      const double half = 0.5 * s.mesh.cell_width(n - 1);
      s.face_velocity[n] = -k_perm / (mu_cell[n - 1] * s.porosity[n - 1]) *
                           (bc.ambient_pressure - p_star[n - 1]) / half;
    }
  }

  // 3. species transport: explicit upwind advection (sub-stepped to the CFL
  //    bound), then implicit diffusion with the surface transfer conductance.
  //    The donor-cell drain rate A_f |u| / V_pore is the stability measure;
  //    area over volume matters near the center of the radial metric.
  int n_sub = 1;
  if (gas_active) {
    double drain_rate = 0.0;
    for (std::size_t f = 1; f <= n; ++f) {
      const double au = s.mesh.face_areas[f] * std::abs(s.face_velocity[f]);
      double v_pore = s.porosity[f - 1] * s.mesh.cell_volumes[f - 1];
      if (f < n)
        v_pore = std::min(v_pore, s.porosity[f] * s.mesh.cell_volumes[f]);
      if (v_pore > 0.0)
        drain_rate = std::max(drain_rate, au / v_pore);
    }
    if (drain_rate > 0.0)
      n_sub = std::max(
        1, static_cast<int>(std::ceil(drain_rate * dt / params_.advective_cfl)));
    if (n_sub > 100000)
      throw StepError("interior advection: Darcy velocity too large (field gas_density)");
  }
  const double h_adv = dt / n_sub;

  std::vector<double> flux(n + 1);
  for (int sub = 0; sub < (gas_active ? n_sub : 0); ++sub) {
    for (std::size_t i = 0; i < ng; ++i) {
      const Species& sp = *gas_[i];
      // face mass fluxes, kg/s, positive outward (+r)
      flux[0] = 0.0;
      for (std::size_t f = 1; f < n; ++f) {
        const double u = s.face_velocity[f];
        const double eps = 0.5 * (s.porosity[f - 1] + s.porosity[f]);
        const double rho_up = u >= 0.0 ? s.gas_density[(f - 1) * ng + i]
                                       : s.gas_density[f * ng + i];
        flux[f] = s.mesh.face_areas[f] * eps * rho_up * u;
      }
      {
        const double u = s.face_velocity[n];
        const double rho_up = u >= 0.0 ? s.gas_density[(n - 1) * ng + i]
                                       : (i < bc.rho_inf.size() ? bc.rho_inf[i] : 0.0);
        flux[n] = s.mesh.face_areas[n] * s.porosity[n - 1] * rho_up * u;
      }
      for (std::size_t c = 0; c < n; ++c) {
        const double dm = (flux[c] - flux[c + 1]) * h_adv;
        const double pore = s.porosity[c] * s.mesh.cell_volumes[c];
        s.gas_density[c * ng + i] += dm / pore;
        // enthalpy rides with the mass, upwinded
        double de = 0.0;
        if (c > 0)
          de += flux[c] * h_adv * sp.enthalpy(s.temperature[flux[c] >= 0.0 ? c - 1 : c]);
        if (c + 1 < n)
          de -= flux[c + 1] * h_adv * sp.enthalpy(s.temperature[flux[c + 1] >= 0.0 ? c : c + 1]);
        s.cell_energy[c] += de;
      }
      // surface face bookkeeping
      const double out = flux[n] * h_adv;
      const double h_carried =
        flux[n] >= 0.0 ? sp.enthalpy(s.temperature[n - 1]) : sp.enthalpy(bc.t_inf);
      s.cell_energy[n - 1] -= out * h_carried;
      result.mass_to_ambient[i] += out;
      result.enthalpy_to_ambient_species[i] += out * h_carried;
    }
  }

  // implicit diffusion per species
  if (gas_active) {
    std::vector<double> sub(n), diag(n), sup(n), rhs(n);
    for (std::size_t i = 0; i < ng; ++i) {
      const Species& sp = *gas_[i];
      const double diff = sp.diffusivity > 0.0 ? sp.diffusivity : 2.0e-5;
      for (std::size_t c = 0; c < n; ++c) {
        const double pore_v = s.porosity[c] * s.mesh.cell_volumes[c];
        sub[c] = sup[c] = 0.0;
        diag[c] = pore_v / dt;
        rhs[c] = pore_v / dt * s.gas_density[c * ng + i];
      }
      for (std::size_t f = 1; f < n; ++f) {
        const double eps = 0.5 * (s.porosity[f - 1] + s.porosity[f]);
        const double dx = s.mesh.cell_center(f) - s.mesh.cell_center(f - 1);
        const double g = s.mesh.face_areas[f] * diff * eps / dx;
        diag[f - 1] += g;
        sup[f - 1] -= g;
        diag[f] += g;
        sub[f] -= g;
      }
      // surface: series conductance of film transfer and the half cell
      const double beta = i < bc.beta.size() ? bc.beta[i] : 0.0;
      double g_surf = 0.0;
      if (beta > 0.0) {
        const double half = 0.5 * s.mesh.cell_width(n - 1);
        g_surf = s.mesh.face_areas[n] * s.porosity[n - 1] /
                 (1.0 / beta + half / diff);
      }
      const double rho_inf = i < bc.rho_inf.size() ? bc.rho_inf[i] : 0.0;
      const double imposed = i < bc.mass_flux.size() ? bc.mass_flux[i] : 0.0;
      diag[n - 1] += g_surf;
      rhs[n - 1] += g_surf * rho_inf + s.mesh.face_areas[n] * imposed;

      std::vector<double> x = rhs;
      solve_tridiagonal(sub, diag, sup, x);

      // post-solve flux bookkeeping (energy rides with mass, upwinded)
      for (std::size_t f = 1; f < n; ++f) {
        const double eps = 0.5 * (s.porosity[f - 1] + s.porosity[f]);
        const double dx = s.mesh.cell_center(f) - s.mesh.cell_center(f - 1);
        const double fl = -s.mesh.face_areas[f] * diff * eps * (x[f] - x[f - 1]) / dx * dt;
        const double h_up = sp.enthalpy(s.temperature[fl >= 0.0 ? f - 1 : f]);
        s.cell_energy[f - 1] -= fl * h_up;
        s.cell_energy[f] += fl * h_up;
      }
      {
        // convective film transfer and the imposed environment flux carry
        // enthalpy from their respective upwind sides
        const double out_conv = g_surf * (x[n - 1] - rho_inf) * dt;
        const double h_conv = out_conv >= 0.0 ? sp.enthalpy(s.temperature[n - 1])
                                              : sp.enthalpy(bc.t_inf);
        const double in_imposed = s.mesh.face_areas[n] * imposed * dt;
        const double h_imposed = in_imposed >= 0.0 ? sp.enthalpy(bc.t_inf)
                                                   : sp.enthalpy(s.temperature[n - 1]);
        s.cell_energy[n - 1] += -out_conv * h_conv + in_imposed * h_imposed;
        result.mass_to_ambient[i] += out_conv - in_imposed;
        result.enthalpy_to_ambient_species[i] += out_conv * h_conv - in_imposed * h_imposed;
      }
      for (std::size_t c = 0; c < n; ++c) {
        check_finite(x[c], "gas_density", c);
        if (x[c] < 0.0) {
          // only possible under a forced outflow that drains the cell;
          // book the unavailable mass as not having left
          const double deficit = -x[c] * s.porosity[c] * s.mesh.cell_volumes[c];
          result.mass_to_ambient[i] -= deficit;
          result.enthalpy_to_ambient_species[i] -= deficit * sp.enthalpy(s.temperature[c]);
          s.cell_energy[c] += deficit * sp.enthalpy(s.temperature[c]);
          x[c] = 0.0;
        }
        s.gas_density[c * ng + i] = x[c];
      }
    }
  }

  // 4. temperatures consistent with the transported energy, then implicit
  //    conduction (Picard on the nonlinear h <-> T closure)
  for (std::size_t c = 0; c < n; ++c)
    s.temperature[c] = invert_temperature(s, c, s.cell_energy[c]);

  {
    std::vector<double> t_iter = s.temperature;
    const std::vector<double> t_start = s.temperature;
    std::vector<double> sub(n), diag(n), sup(n), rhs(n), lam(n), cap(n);
    double alpha_eff = 0.0;
    const double half = 0.5 * s.mesh.cell_width(n - 1);

    for (int it = 0;; ++it) {
      if (it >= params_.max_picard_iterations)
        throw StepError("interior conduction: Picard iteration did not converge "
                        "(field temperature)");
      for (std::size_t c = 0; c < n; ++c) {
        lam[c] = effective_conductivity(s, c);
        // heat capacity of the cell contents at the current iterate
        double cp = 0.0;
        const std::size_t nc = condensed_count();
        for (std::size_t j = 0; j < nc; ++j)
          if (s.condensed_mass[c * nc + j] > tiny_mass)
            cp += s.condensed_mass[c * nc + j] * cond_[j]->heat_capacity(t_iter[c]);
        const double pore = s.porosity[c] * s.mesh.cell_volumes[c];
        for (std::size_t i = 0; i < ng; ++i)
          if (s.gas_density[c * ng + i] * pore > tiny_mass)
            cp += s.gas_density[c * ng + i] * pore * gas_[i]->heat_capacity(t_iter[c]);
        cap[c] = std::max(cp, 1e-12);
      }
      for (std::size_t c = 0; c < n; ++c) {
        sub[c] = sup[c] = 0.0;
        diag[c] = cap[c] / dt;
        rhs[c] = cap[c] / dt * t_start[c];
      }
      for (std::size_t f = 1; f < n; ++f) {
        const double dx = s.mesh.cell_center(f) - s.mesh.cell_center(f - 1);
        const double lam_f = 2.0 * lam[f - 1] * lam[f] / (lam[f - 1] + lam[f]);
        const double g = s.mesh.face_areas[f] * lam_f / dx;
        diag[f - 1] += g;
        sup[f - 1] -= g;
        diag[f] += g;
        sub[f] -= g;
      }
      alpha_eff = bc.alpha > 0.0 ? 1.0 / (1.0 / bc.alpha + half / lam[n - 1]) : 0.0;
      const double a_surf = s.mesh.face_areas[n];
      diag[n - 1] += a_surf * alpha_eff;
      rhs[n - 1] += a_surf * (alpha_eff * bc.t_inf - bc.q_rad - bc.q_cond);

      std::vector<double> x = rhs;
      solve_tridiagonal(sub, diag, sup, x);

      double delta = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        check_finite(x[c], "temperature", c);
        delta = std::max(delta, std::abs(x[c] - t_iter[c]) / std::max(x[c], 1.0));
        t_iter[c] = x[c];
      }
      if (delta < params_.picard_tolerance)
        break;
    }

    // conservative energy update from the converged conductive fluxes
    for (std::size_t f = 1; f < n; ++f) {
      const double dx = s.mesh.cell_center(f) - s.mesh.cell_center(f - 1);
      const double lam_f = 2.0 * lam[f - 1] * lam[f] / (lam[f - 1] + lam[f]);
      const double q = s.mesh.face_areas[f] * lam_f * (t_iter[f] - t_iter[f - 1]) / dx * dt;
      s.cell_energy[f - 1] += q;
      s.cell_energy[f] -= q;
    }
    const double a_surf = s.mesh.face_areas[n];
    const double q_conv = a_surf * alpha_eff * (bc.t_inf - t_iter[n - 1]) * dt;
    const double q_contact = -a_surf * (bc.q_rad + bc.q_cond) * dt;
    s.cell_energy[n - 1] += q_conv + q_contact;
    result.convective_heat_in = q_conv;
    result.contact_heat_in = q_contact;

    for (std::size_t c = 0; c < n; ++c)
      s.temperature[c] = invert_temperature(s, c, s.cell_energy[c]);
  }

  // 5. heat-limited phase changes (melting, drying)
  apply_phase_changes(s, dt, result);

  update_pressure(s);

  result.stored_energy = total_energy(s);
  result.stored_mass = total_mass(s);

  double expected = e_before + result.convective_heat_in + result.contact_heat_in +
                    result.source_energy - result.melt_enthalpy;
  for (std::size_t i = 0; i < ng; ++i)
    expected -= result.enthalpy_to_ambient_species[i];
  result.energy_balance_error = std::abs(result.stored_energy - expected) /
                                std::max(std::abs(result.stored_energy), 1.0);
  return result;
}

double InteriorModel::total_mass(const InteriorState& s) const {
  double m = 0.0;
  for (std::size_t c = 0; c < s.mesh.cells(); ++c)
    m += cell_mass(s, c);
  return m;
}

double InteriorModel::total_energy(const InteriorState& s) const {
  double e = 0.0;
  for (double v : s.cell_energy)
    e += v;
  return e;
}

double InteriorModel::species_mass(const InteriorState& s, const std::string& name) const {
  const std::size_t ng = gas_count(), nc = condensed_count();
  for (std::size_t j = 0; j < nc; ++j)
    if (cond_names_[j] == name) {
      double m = 0.0;
      for (std::size_t c = 0; c < s.mesh.cells(); ++c)
        m += s.condensed_mass[c * nc + j];
      return m;
    }
  for (std::size_t i = 0; i < ng; ++i)
    if (gas_names_[i] == name) {
      double m = 0.0;
      for (std::size_t c = 0; c < s.mesh.cells(); ++c)
        m += s.gas_density[c * ng + i] * s.porosity[c] * s.mesh.cell_volumes[c];
      return m;
    }
  throw ConfigError("species '" + name + "' not tracked by this particle model");
}

core::ElementMap InteriorModel::element_inventory(const InteriorState& s) const {
  core::ElementMap inv;
  const std::size_t ng = gas_count(), nc = condensed_count();
  for (std::size_t c = 0; c < s.mesh.cells(); ++c) {
    for (std::size_t j = 0; j < nc; ++j) {
      const double mol = s.condensed_mass[c * nc + j] / cond_[j]->molar_mass();
      for (const auto& [sym, cnt] : cond_[j]->elements())
        inv[sym] += mol * cnt;
    }
    const double pore = s.porosity[c] * s.mesh.cell_volumes[c];
    for (std::size_t i = 0; i < ng; ++i) {
      const double mol = s.gas_density[c * ng + i] * pore / gas_[i]->molar_mass();
      for (const auto& [sym, cnt] : gas_[i]->elements())
        inv[sym] += mol * cnt;
    }
  }
  return inv;
}

double InteriorModel::surface_temperature(const InteriorState& s,
                                          const ParticleBoundaryCondition& bc) const {
  const std::size_t n = s.mesh.cells();
  const double lam = effective_conductivity(s, n - 1);
  const double g2 = lam / (0.5 * s.mesh.cell_width(n - 1));
  return (g2 * s.temperature[n - 1] + bc.alpha * bc.t_inf - bc.q_rad - bc.q_cond) /
         (g2 + bc.alpha);
}

double InteriorModel::shrink(InteriorState& s, double surface_mass_loss) const {
  const std::size_t n = s.mesh.cells();
  if (surface_mass_loss < 0.0)
    throw ConfigError("shrink: surface mass loss must be non-negative");
  if (surface_mass_loss == 0.0)
    return s.mesh.radius();

  const double outer_mass = cell_mass(s, n - 1);
  const double outer_rho = outer_mass / s.mesh.cell_volumes[n - 1];
  if (outer_rho <= 0.0 || surface_mass_loss > outer_mass * (1.0 + 1e-12))
    throw StepError("shrink: surface mass loss exceeds the outer shell mass; "
                    "reduce the time step");

  const double dv = surface_mass_loss / outer_rho;
  const double v_new = std::max(s.mesh.total_volume() - dv, 0.0);
  const double r_new = radius_for_volume(s.mesh.geometry, v_new);
  const double width =
    s.reference_cell_width > 0.0 ? s.reference_cell_width : s.mesh.cell_width(0);
  if (r_new < width) {
    s.consumed = true;
    return r_new;
  }

  // Profiles are carried in normalized radius: with both meshes uniform and
  // the cell count unchanged, cell contents map one-to-one and every total is
  // preserved exactly. Only the metric (volumes, areas) is rebuilt.
  RadialMesh fresh = RadialMesh::uniform(s.mesh.geometry, r_new, n + 1);
  const std::size_t ng = gas_count();
  for (std::size_t c = 0; c < n; ++c) {
    // pore gas density is intensive: rescale so gas mass per cell is conserved
    const double scale = (s.porosity[c] * s.mesh.cell_volumes[c]) /
                         (s.porosity[c] * fresh.cell_volumes[c]);
    for (std::size_t i = 0; i < ng; ++i)
      s.gas_density[c * ng + i] *= scale;
  }
  s.mesh = std::move(fresh);
  update_pressure(s);
  return r_new;
}

} // namespace pyrobed::particle
