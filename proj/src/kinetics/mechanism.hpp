// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_KINETICS_MECHANISM_HPP
#define PYROBED_KINETICS_MECHANISM_HPP

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/species.hpp"

namespace pyrobed::kinetics {

struct ArrheniusParams {
  double pre_factor = 0.0;        // A
  double temp_exponent = 0.0;     // b
  double activation_energy = 0.0; // Ea, J/mol

  double rate(double temperature) const;
};

/// Equilibrium closure: either irreversible (reverse term dropped) or a
/// piecewise-linear K_eq,c table over temperature.
struct EquilibriumModel {
  bool irreversible = true;
  std::vector<double> temperatures;
  std::vector<double> values;

  double value(double temperature) const;
};

struct ReactionTerm {
  std::size_t species = 0; // index into the mechanism's species table
  double nu = 0.0;         // stoichiometric coefficient, > 0
};

enum class RateModel {
  finite_rate, // Arrhenius forward rate with equilibrium closure
  heat_limited // phase change driven by the enthalpy excess above activation
};

struct Reaction {
  std::string equation; // original text, for messages
  std::vector<ReactionTerm> reactants;
  std::vector<ReactionTerm> products;
  RateModel model = RateModel::finite_rate;
  ArrheniusParams arrhenius;
  EquilibriumModel equilibrium;
  // Reaction enthalpy: computed from species data unless overridden (J per
  // mole of reaction progress).
  std::optional<double> enthalpy_override;
  // heat_limited only: activation temperature, or "track the local water
  // saturation temperature" when from_saturation is set.
  bool activation_from_saturation = false;
  double activation_temperature = 0.0;

  /// Net progress rate q = k_f (prod c_R^nu' - prod c_P^nu'' / K_eq,c);
  /// species rates are nu-weighted with sign by side. Heat-limited reactions
  /// report zero here (their rate is set by the energy balance).
  double progress_rate(std::span<const double> c, double temperature) const;
};

/// Immutable reaction set sharing one species index. Rate evaluation is a
/// pure function and safe to call concurrently.
class ReactionMechanism {
public:
  ReactionMechanism() = default;

  static ReactionMechanism parse(const std::string& text, const std::string& source_name);

  const std::string& name() const { return name_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const std::vector<std::string>& species_names() const { return species_names_; }
  std::size_t species_count() const { return species_names_.size(); }
  const core::ElementMap& species_elements(std::size_t i) const { return elements_[i]; }
  bool has_species(const std::string& name) const { return index_.count(name) > 0; }
  std::size_t index_of(const std::string& name) const;

  /// dc/dt, mol/(m^3 s), for all indexed species at concentrations c.
  std::vector<double> rates(std::span<const double> c, double temperature) const;
  void add_rates(std::span<const double> c, double temperature, std::span<double> dcdt) const;

private:
  friend ReactionMechanism builtin_mechanism(const std::string&);
  void verify_element_balance() const;

  std::string name_;
  std::vector<std::string> species_names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<core::ElementMap> elements_;
  std::vector<Reaction> reactions_;
};

/// Mechanisms shipped with the engine: wo3-reduction, drying, pyrolysis,
/// char-gasification, char-oxidation. Unknown names raise a configuration
/// error listing the catalog.
ReactionMechanism builtin_mechanism(const std::string& name);
std::vector<std::string> builtin_mechanism_names();

/// Closed, isothermal batch-reactor trajectory; enforces non-negative
/// concentrations by halving the local step on overshoot.
struct BatchTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> concentrations; // one row per time
};

BatchTrajectory integrate_batch(const ReactionMechanism& mechanism, std::vector<double> c0,
                                double temperature, double t_end, double dt);

/// Water saturation temperature at pressure p (Clausius-Clapeyron around the
/// normal boiling point).
double saturation_temperature(double pressure);

} // namespace pyrobed::kinetics

#endif
