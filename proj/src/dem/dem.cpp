// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include "dem/dem.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "common/constants.hpp"
#include "common/error.hpp"

namespace pyrobed::dem {

namespace {

struct CellKey {
  long long x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.x) * 73856093u;
    h ^= static_cast<std::size_t>(k.y) * 19349663u;
    h ^= static_cast<std::size_t>(k.z) * 83492791u;
    return h;
  }
};

} // namespace

ContactSet detect_contacts(std::span<const RigidState> particles,
                           std::span<const WallPlane> walls, double cutoff_factor) {
  ContactSet out;
  const std::size_t n = particles.size();
  if (n == 0)
    return out;

  double r_max = 0.0;
  for (const auto& p : particles)
    r_max = std::max(r_max, p.radius);
  const double cell = std::max(cutoff_factor, 1.0) * 2.0 * r_max + 1e-300;

  std::unordered_map<CellKey, std::vector<int>, CellHash> bins;
  bins.reserve(n);
  auto key_of = [&](const Vec3& x) {
    return CellKey{static_cast<long long>(std::floor(x.x / cell)),
                   static_cast<long long>(std::floor(x.y / cell)),
                   static_cast<long long>(std::floor(x.z / cell))};
  };
  for (std::size_t i = 0; i < n; ++i)
    bins[key_of(particles[i].position)].push_back(static_cast<int>(i));

  auto rel_velocity_at = [&](const RigidState& a, const RigidState& b, const Vec3& point) {
    const Vec3 va = a.velocity + cross(a.angular_velocity, point - a.position);
    const Vec3 vb = b.velocity + cross(b.angular_velocity, point - b.position);
    return va - vb;
  };

  for (std::size_t ii = 0; ii < n; ++ii) {
    const auto& pi = particles[ii];
    const CellKey base = key_of(pi.position);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy)
        for (long long dz = -1; dz <= 1; ++dz) {
          auto it = bins.find(CellKey{base.x + dx, base.y + dy, base.z + dz});
          if (it == bins.end())
            continue;
          for (int jj : it->second) {
            if (jj <= static_cast<int>(ii))
              continue;
            const auto& pj = particles[jj];
            const Vec3 d = pj.position - pi.position;
            const double dist = norm(d);
            const double touch = pi.radius + pj.radius;
            if (dist >= cutoff_factor * touch)
              continue;
            out.neighbors.push_back({static_cast<int>(ii), jj, dist});
            const double overlap = touch - dist;
            if (overlap > 0.0) {
              Contact c;
              c.i = static_cast<int>(ii);
              c.j = jj;
              c.overlap = overlap;
              c.normal = dist > 0.0 ? d / dist : Vec3{1, 0, 0};
              c.contact_point = pi.position + c.normal * (pi.radius - 0.5 * overlap);
              c.rel_velocity = rel_velocity_at(pi, pj, c.contact_point);
              out.contacts.push_back(c);
            }
          }
        }
  }

  for (std::size_t w = 0; w < walls.size(); ++w) {
    const auto& wall = walls[w];
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = particles[i];
      const double dist = dot(p.position - wall.point, wall.normal);
      const double overlap = p.radius - dist;
      if (overlap <= 0.0)
        continue;
      Contact c;
      c.i = static_cast<int>(i);
      c.j = -1 - static_cast<int>(w);
      c.overlap = overlap;
      c.normal = -wall.normal;
      c.contact_point = p.position + c.normal * (p.radius - 0.5 * overlap);
      const Vec3 arm = c.contact_point - p.position;
      c.rel_velocity = p.velocity + cross(p.angular_velocity, arm);
      out.contacts.push_back(c);
    }
  }

  auto pair_less = [](const auto& a, const auto& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  };
  std::sort(out.contacts.begin(), out.contacts.end(), pair_less);
  std::sort(out.neighbors.begin(), out.neighbors.end(), pair_less);
  return out;
}

std::pair<ForceTorque, ForceTorque> contact_force(const Contact& contact,
                                                  const ContactModelParams& params,
                                                  const Vec3& tangential_stretch) {
  ForceTorque on_i, on_j;
  if (contact.overlap <= 0.0)
    return {on_i, on_j};

  const double approach = dot(contact.rel_velocity, contact.normal);
  double fn = params.normal_stiffness * contact.overlap + params.normal_damping * approach;
  fn = std::max(fn, 0.0); // the contact can only push

  Vec3 ft;
  if (params.tangential_stiffness > 0.0) {
    ft = -params.tangential_stiffness * tangential_stretch;
    const Vec3 ft_n = dot(ft, contact.normal) * contact.normal;
    ft -= ft_n; // keep it in the contact plane
    const double cap = params.friction * fn;
    const double mag = norm(ft);
    if (mag > cap)
      ft *= (mag > 0.0 ? cap / mag : 0.0);
  }

  on_i.force = -fn * contact.normal + ft;
  on_j.force = -on_i.force;
  return {on_i, on_j};
}

void ContactHistory::advance(const ContactSet& set, const ContactModelParams& params,
                             double dt) {
  std::map<std::uint64_t, Vec3> next;
  for (const auto& c : set.contacts) {
    const auto k = key(c.i, c.j);
    Vec3 xi;
    if (auto it = data_.find(k); it != data_.end())
      xi = it->second;
    Vec3 vt = c.rel_velocity - dot(c.rel_velocity, c.normal) * c.normal;
    xi += vt * dt;
    // saturate the spring at the Coulomb limit so it does not wind up
    if (params.tangential_stiffness > 0.0 && params.friction > 0.0) {
      const double fn = params.normal_stiffness * c.overlap;
      const double cap = params.friction * fn / params.tangential_stiffness;
      const double mag = norm(xi);
      if (mag > cap && mag > 0.0)
        xi *= cap / mag;
    }
    next[k] = xi;
  }
  data_ = std::move(next);
}

void MotionIntegrator::step(std::span<RigidState> particles,
                            std::span<const ForceTorque> forces, double dt) {
  const std::size_t n = particles.size();
  if (!initialized_ || prev_accel_.size() != n) {
    prev_accel_.assign(n, Vec3{});
    prev_ang_accel_.assign(n, Vec3{});
    for (std::size_t i = 0; i < n; ++i) {
      if (particles[i].fixed)
        continue;
      prev_accel_[i] = forces[i].force / particles[i].mass;
      prev_ang_accel_[i] = forces[i].torque / particles[i].moment_of_inertia;
    }
    initialized_ = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = particles[i];
    if (p.fixed)
      continue;
    const Vec3 a = forces[i].force / p.mass;
    const Vec3 aw = forces[i].torque / p.moment_of_inertia;
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.z))
      throw StepError("motion integration: non-finite force on particle " +
                      std::to_string(p.id));
    // velocity Verlet with stored accelerations: complete the previous
    // velocity half-step, then drift with the current acceleration
    p.velocity += 0.5 * dt * (prev_accel_[i] + a);
    p.angular_velocity += 0.5 * dt * (prev_ang_accel_[i] + aw);
    p.position += p.velocity * dt + (0.5 * dt * dt) * a;
    prev_accel_[i] = a;
    prev_ang_accel_[i] = aw;
  }
}

double solid_angle_view_factor(double r_j, double distance) {
  if (distance <= 0.0)
    throw GeometryError("view factor: coincident particle centers");
  const double ratio = std::min(r_j / distance, 1.0);
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - ratio * ratio)));
}

double pair_radiative_flux(double view_factor, double t_p, double t_j) {
  return view_factor * constants::stefan_boltzmann *
         (t_p * t_p * t_p * t_p - t_j * t_j * t_j * t_j);
}

HeatExchange inter_particle_heat(std::span<const RigidState> particles,
                                 std::span<const double> surface_temperature,
                                 std::span<const double> conductivity,
                                 std::span<const double> emissivity,
                                 std::span<const NeighborPair> neighbors) {
  const std::size_t n = particles.size();
  HeatExchange out;
  out.q_cond.assign(n, 0.0);
  out.q_rad.assign(n, 0.0);

  // raw solid-angle view factors, then a normalization pass so that no
  // particle radiates to more than its full view
  std::vector<double> f_sum(n, 0.0);
  std::vector<double> f_ij(neighbors.size()), f_ji(neighbors.size());
  for (std::size_t k = 0; k < neighbors.size(); ++k) {
    const auto& nb = neighbors[k];
    f_ij[k] = solid_angle_view_factor(particles[nb.j].radius, nb.distance);
    f_ji[k] = solid_angle_view_factor(particles[nb.i].radius, nb.distance);
    f_sum[nb.i] += f_ij[k];
    f_sum[nb.j] += f_ji[k];
  }
  std::vector<double> scale(n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    if (f_sum[i] > 1.0)
      scale[i] = 1.0 / f_sum[i];

  for (std::size_t k = 0; k < neighbors.size(); ++k) {
    const auto& nb = neighbors[k];
    const auto& pi = particles[nb.i];
    const auto& pj = particles[nb.j];
    const double t_i = surface_temperature[nb.i];
    const double t_j = surface_temperature[nb.j];
    const double a_i = 4.0 * 3.14159265358979323846 * pi.radius * pi.radius;
    const double a_j = 4.0 * 3.14159265358979323846 * pj.radius * pj.radius;

    // conduction through the contact spot, series resistance of both bodies
    const double overlap = std::max(0.0, pi.radius + pj.radius - nb.distance);
    const double dx = nb.distance - overlap;
    if (dx <= 0.0)
      throw GeometryError("inter-particle conduction: zero separation between particles " +
                          std::to_string(pi.id) + " and " + std::to_string(pj.id));
    const double series = 1.0 / (1.0 / conductivity[nb.i] + 1.0 / conductivity[nb.j]);
    const double r_min = std::min(pi.radius, pj.radius);
    const double a_pair = 3.14159265358979323846 * r_min * r_min;
    const double q_cond = series * a_pair * (t_i - t_j) / dx;
    out.q_cond[nb.i] += q_cond / a_i;
    out.q_cond[nb.j] -= q_cond / a_j;

    // radiation with a symmetric exchange area (reciprocity by construction)
    const double g = 0.5 * (a_i * f_ij[k] * scale[nb.i] + a_j * f_ji[k] * scale[nb.j]);
    const double q_rad = emissivity[nb.i] * emissivity[nb.j] * g *
                         constants::stefan_boltzmann *
                         (t_i * t_i * t_i * t_i - t_j * t_j * t_j * t_j);
    out.q_rad[nb.i] += q_rad / a_i;
    out.q_rad[nb.j] -= q_rad / a_j;
  }
  return out;
}

} // namespace pyrobed::dem
