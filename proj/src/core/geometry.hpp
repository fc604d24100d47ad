// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_CORE_GEOMETRY_HPP
#define PYROBED_CORE_GEOMETRY_HPP

#include <string>

#include "common/error.hpp"

namespace pyrobed::core {

/// Particle body class. The exponent n enters the radial metric r^n, so the
/// plate, cylinder and sphere share one discretization code path.
enum class ParticleGeometry : int { plate = 0, cylinder = 1, sphere = 2 };

inline int geometry_exponent(ParticleGeometry g) { return static_cast<int>(g); }

inline ParticleGeometry geometry_from_name(const std::string& s) {
  if (s == "plate")
    return ParticleGeometry::plate;
  if (s == "cylinder")
    return ParticleGeometry::cylinder;
  if (s == "sphere")
    return ParticleGeometry::sphere;
  throw ConfigError("unknown particle geometry '" + s + "' (expected plate, cylinder or sphere)");
}

} // namespace pyrobed::core

#endif
