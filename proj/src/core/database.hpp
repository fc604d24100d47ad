// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_CORE_DATABASE_HPP
#define PYROBED_CORE_DATABASE_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "core/material.hpp"
#include "core/species.hpp"

namespace pyrobed::core {

/// Species/material database. Text format is line oriented (see
/// docs/formats.md); the parser rejects unknown keys and reports line
/// numbers. Immutable after load, safe to share across workers.
class PropertyDatabase {
public:
  static PropertyDatabase parse(const std::string& text, const std::string& source_name);
  static PropertyDatabase load(const std::string& path);

  bool has_species(const std::string& name) const { return species_index_.count(name) > 0; }
  bool has_material(const std::string& name) const { return material_index_.count(name) > 0; }

  const Species& species(const std::string& name) const;
  const Material& material(const std::string& name) const;

  const std::vector<Species>& all_species() const { return species_; }
  const std::vector<Material>& all_materials() const { return materials_; }

  std::vector<std::string> species_names() const;

  /// Writes the database back out; reparsing the result reproduces
  /// bit-identical property evaluations.
  std::string serialize() const;

  void add_species(Species s);
  void add_material(Material m);

private:
  std::vector<Species> species_;
  std::vector<Material> materials_;
  std::unordered_map<std::string, std::size_t> species_index_;
  std::unordered_map<std::string, std::size_t> material_index_;
};

} // namespace pyrobed::core

#endif
