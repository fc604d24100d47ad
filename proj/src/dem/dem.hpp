// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_DEM_DEM_HPP
#define PYROBED_DEM_DEM_HPP

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "common/vec3.hpp"

namespace pyrobed::dem {

struct RigidState {
  Vec3 position;
  Vec3 velocity;
  Vec3 angular_velocity;
  double mass = 0.0;
  double moment_of_inertia = 0.0;
  double radius = 0.0;
  bool fixed = false;
  int id = 0;
};

/// Infinite plane; the normal is unit length and points into the domain.
struct WallPlane {
  Vec3 point;
  Vec3 normal;
};

struct ContactModelParams {
  double normal_stiffness = 1.0e4;    // N/m
  double normal_damping = 0.0;        // N s/m
  double tangential_stiffness = 0.0;  // N/m
  double friction = 0.0;              // Coulomb coefficient
};

/// A particle-particle (j >= 0) or particle-wall (j = -1-wall_index) contact.
struct Contact {
  int i = -1;
  int j = -1;
  double overlap = 0.0;
  Vec3 normal;       // unit, from i toward the partner
  Vec3 rel_velocity; // of i relative to the partner, at the contact point
  Vec3 contact_point;
};

/// Non-touching pair within the heat-exchange cutoff.
struct NeighborPair {
  int i = 0;
  int j = 0;
  double distance = 0.0;
};

struct ContactSet {
  std::vector<Contact> contacts;
  std::vector<NeighborPair> neighbors; // includes touching pairs as well
};

/// Uniform-cell binning; expected O(N). Pairs are reported once (i < j) in
/// deterministic order. The neighbor list uses the pairwise cutoff
/// r_cut = cutoff_factor * (R_i + R_j).
ContactSet detect_contacts(std::span<const RigidState> particles,
                           std::span<const WallPlane> walls, double cutoff_factor = 1.5);

struct ForceTorque {
  Vec3 force;
  Vec3 torque;
};

/// Spring-dashpot normal force (repulsive only) and a tangential spring
/// capped by Coulomb friction. Returns the pair (on i, on partner); Newton's
/// third law is exact by construction. The tangential stretch is the
/// accumulated spring elongation tracked by the caller between steps.
std::pair<ForceTorque, ForceTorque> contact_force(const Contact& contact,
                                                  const ContactModelParams& params,
                                                  const Vec3& tangential_stretch = {});

/// Per-pair tangential spring memory keyed on the (i,j) pair; stale entries
/// are dropped when the pair separates.
class ContactHistory {
public:
  Vec3& stretch(int i, int j) { return data_[key(i, j)]; }
  void advance(const ContactSet& set, const ContactModelParams& params, double dt);
  std::size_t size() const { return data_.size(); }

private:
  static std::uint64_t key(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
  }
  std::map<std::uint64_t, Vec3> data_;
};

/// Velocity-Verlet integrator; keeps the previous accelerations so that one
/// force evaluation per step suffices. Fixed particles are left untouched.
class MotionIntegrator {
public:
  void step(std::span<RigidState> particles, std::span<const ForceTorque> forces, double dt);
  void reset() { initialized_ = false; }

private:
  std::vector<Vec3> prev_accel_, prev_ang_accel_;
  bool initialized_ = false;
};

/// Radiative flux between a pair for a given view factor, W/m^2.
double pair_radiative_flux(double view_factor, double t_p, double t_j);

/// Solid-angle view factor of a sphere of radius r_j seen from distance d.
double solid_angle_view_factor(double r_j, double distance);

struct HeatExchange {
  std::vector<double> q_cond; // W/m^2 per particle, positive = net leaving
  std::vector<double> q_rad;
};

/// Conductive and radiative exchange over the neighbor graph. Pair powers are
/// antisymmetric, so the ensemble conserves exchanged energy exactly.
HeatExchange inter_particle_heat(std::span<const RigidState> particles,
                                 std::span<const double> surface_temperature,
                                 std::span<const double> conductivity,
                                 std::span<const double> emissivity,
                                 std::span<const NeighborPair> neighbors);

} // namespace pyrobed::dem

#endif
