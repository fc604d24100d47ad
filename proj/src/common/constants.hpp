// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_COMMON_CONSTANTS_HPP
#define PYROBED_COMMON_CONSTANTS_HPP

namespace pyrobed::constants {

inline constexpr double gas_constant       = 8.31446261815324; // J/(mol K)
inline constexpr double stefan_boltzmann   = 5.670374419e-8;   // W/(m^2 K^4)
inline constexpr double standard_pressure  = 101325.0;         // Pa
inline constexpr double reference_temp     = 298.15;           // K
inline constexpr double water_molar_mass   = 0.01801528;       // kg/mol
inline constexpr double water_boiling_1atm = 373.15;           // K
// Heat of vaporization used by the Clausius-Clapeyron saturation estimate.
inline constexpr double water_latent_vap   = 2.2564e6;         // J/kg at 373.15 K

} // namespace pyrobed::constants

#endif
