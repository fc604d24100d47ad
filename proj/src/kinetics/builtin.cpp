// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include "kinetics/mechanism.hpp"

#include "common/error.hpp"

namespace pyrobed::kinetics {

namespace {

// Staged hydrogen reduction of tungsten oxide. Stoichiometry of the four
// steps is fixed; rate constants and K_eq tables are engineering placeholders
// and are meant to be overridden from scenario configuration when better data
// is available.
constexpr const char* wo3_reduction_text = R"MECH(
mechanism wo3-reduction

reaction 1 WO3(s) + 0.1 H2(g) <=> 1 WO2.9(s) + 0.1 H2O(g)
  arrhenius 3.0e3 0.0 1.0e5
  equilibrium table 700 1.0e6 1500 1.0e6
  enthalpy from_species
end

reaction 1 WO2.9(s) + 0.18 H2(g) <=> 1 WO2.72(s) + 0.18 H2O(g)
  arrhenius 3.0e3 0.0 1.0e5
  equilibrium table 700 1.0e6 1500 1.0e6
  enthalpy from_species
end

reaction 1 WO2.72(s) + 0.72 H2(g) <=> 1 WO2(s) + 0.72 H2O(g)
  arrhenius 3.0e3 0.0 1.0e5
  equilibrium table 700 1.0e6 1500 1.0e6
  enthalpy from_species
end

reaction 1 WO2(s) + 2 H2(g) <=> 1 W(s) + 2 H2O(g)
  arrhenius 3.0e3 0.0 1.0e5
  equilibrium table 700 1.0e6 1500 1.0e6
  enthalpy from_species
end
)MECH";

// Free-water evaporation, rate limited by the enthalpy excess above the local
// saturation temperature.
constexpr const char* drying_text = R"MECH(
mechanism drying

reaction 1 H2O(l) -> 1 H2O(g)
  type heat_limited
  activation saturation
end
)MECH";

// Single-step devolatilization into char and a fixed volatile split
// (element-balanced for a CH1.4O0.6 feedstock). Arrhenius constants are
// literature placeholders for woody biomass.
constexpr const char* pyrolysis_text = R"MECH(
mechanism pyrolysis

elements BIOMASS(s) C 1 H 1.4 O 0.6

reaction 1 BIOMASS(s) -> 0.65 C(s) + 0.05 CH4(g) + 0.25 CO(g) + 0.05 CO2(g) + 0.35 H2(g) + 0.25 H2O(g)
  arrhenius 2.0e8 0.0 1.33e5
end
)MECH";

constexpr const char* char_gasification_text = R"MECH(
mechanism char-gasification

reaction 1 C(s) + 1 CO2(g) -> 2 CO(g)
  arrhenius 3.4e6 0.0 2.0e5
end

reaction 1 C(s) + 1 H2O(g) -> 1 CO(g) + 1 H2(g)
  arrhenius 1.5e6 0.0 1.9e5
end
)MECH";

constexpr const char* char_oxidation_text = R"MECH(
mechanism char-oxidation

reaction 1 C(s) + 1 O2(g) -> 1 CO2(g)
  arrhenius 5.0e5 0.0 1.6e5
end
)MECH";

struct BuiltinEntry {
  const char* name;
  const char* text;
};

constexpr BuiltinEntry builtin_table[] = {
  {"wo3-reduction", wo3_reduction_text},   {"drying", drying_text},
  {"pyrolysis", pyrolysis_text},           {"char-gasification", char_gasification_text},
  {"char-oxidation", char_oxidation_text},
};

} // namespace

std::vector<std::string> builtin_mechanism_names() {
  std::vector<std::string> out;
  for (const auto& e : builtin_table)
    out.emplace_back(e.name);
  return out;
}

ReactionMechanism builtin_mechanism(const std::string& name) {
  for (const auto& e : builtin_table)
    if (name == e.name)
      return ReactionMechanism::parse(e.text, std::string("builtin:") + e.name);
  std::string avail;
  for (const auto& e : builtin_table)
    avail += (avail.empty() ? "" : ", ") + std::string(e.name);
  throw ConfigError("unknown built-in mechanism '" + name + "'; available: " + avail);
}

} // namespace pyrobed::kinetics
