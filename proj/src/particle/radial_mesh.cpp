// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include "particle/radial_mesh.hpp"

#include <cmath>
#include <numbers>

#include "common/error.hpp"

namespace pyrobed::particle {

using core::ParticleGeometry;

double metric_volume(ParticleGeometry g, double r) {
  switch (g) {
  case ParticleGeometry::plate:
    return r;
  case ParticleGeometry::cylinder:
    return std::numbers::pi * r * r;
  default:
    return 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }
}

double metric_area(ParticleGeometry g, double r) {
  switch (g) {
  case ParticleGeometry::plate:
    return 1.0;
  case ParticleGeometry::cylinder:
    return 2.0 * std::numbers::pi * r;
  default:
    return 4.0 * std::numbers::pi * r * r;
  }
}

double radius_for_volume(ParticleGeometry g, double v) {
  switch (g) {
  case ParticleGeometry::plate:
    return v;
  case ParticleGeometry::cylinder:
    return std::sqrt(v / std::numbers::pi);
  default:
    return std::cbrt(v * 3.0 / (4.0 * std::numbers::pi));
  }
}

double RadialMesh::total_volume() const { return metric_volume(geometry, radius()); }

RadialMesh RadialMesh::uniform(ParticleGeometry g, double radius, std::size_t node_count) {
  if (radius <= 0.0)
    throw ConfigError("radial mesh: radius must be positive");
  if (node_count < 3)
    throw ConfigError("radial mesh: need at least 3 node radii, got " +
                      std::to_string(node_count));
  RadialMesh m;
  m.geometry = g;
  m.node_radii.resize(node_count);
  const std::size_t cells = node_count - 1;
  for (std::size_t i = 0; i < node_count; ++i)
    m.node_radii[i] = radius * static_cast<double>(i) / static_cast<double>(cells);
  m.node_radii.back() = radius;
  m.cell_volumes.resize(cells);
  m.face_areas.resize(node_count);
  for (std::size_t i = 0; i < cells; ++i)
    m.cell_volumes[i] = metric_volume(g, m.node_radii[i + 1]) - metric_volume(g, m.node_radii[i]);
  for (std::size_t i = 0; i < node_count; ++i)
    m.face_areas[i] = metric_area(g, m.node_radii[i]);
  return m;
}

} // namespace pyrobed::particle
