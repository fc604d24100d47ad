// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_PARTICLE_RADIAL_MESH_HPP
#define PYROBED_PARTICLE_RADIAL_MESH_HPP

#include <cstddef>
#include <vector>

#include "core/geometry.hpp"

namespace pyrobed::particle {

/// One-dimensional finite-volume mesh over [0, R]. The metric follows the
/// geometry exponent n: volumes are per unit area for a plate, per unit
/// length for a cylinder, absolute for a sphere.
struct RadialMesh {
  core::ParticleGeometry geometry = core::ParticleGeometry::sphere;
  std::vector<double> node_radii;   // cell boundaries, ascending, [0 .. R]
  std::vector<double> cell_volumes; // between consecutive nodes
  std::vector<double> face_areas;   // metric area at each node radius

  std::size_t cells() const { return cell_volumes.size(); }
  double radius() const { return node_radii.back(); }
  double cell_width(std::size_t i) const { return node_radii[i + 1] - node_radii[i]; }
  double cell_center(std::size_t i) const { return 0.5 * (node_radii[i] + node_radii[i + 1]); }
  double total_volume() const;

  /// Uniformly spaced mesh with node_count node radii (node_count - 1 cells).
  static RadialMesh uniform(core::ParticleGeometry geometry, double radius,
                            std::size_t node_count);
};

/// Enclosed metric volume of radius r for the given geometry class.
double metric_volume(core::ParticleGeometry geometry, double r);
/// Metric area of the surface at radius r.
double metric_area(core::ParticleGeometry geometry, double r);
/// Inverse of metric_volume.
double radius_for_volume(core::ParticleGeometry geometry, double volume);

} // namespace pyrobed::particle

#endif
