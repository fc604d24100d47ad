// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include "core/database.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "common/error.hpp"

namespace pyrobed::core {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#')
      break;
    out.push_back(tok);
  }
  return out;
}

double parse_number(const std::string& tok, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size())
      throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + tok + "'");
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

PropertyDatabase PropertyDatabase::parse(const std::string& text, const std::string& source) {
  PropertyDatabase db;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;

  enum class Block { none, species, material };
  Block block = Block::none;

  // species under construction
  std::string sp_name;
  double sp_molar_mass = 0.0;
  Phase sp_phase = Phase::gas;
  bool sp_phase_set = false, sp_mass_set = false;
  std::vector<PolyPiece> sp_pieces;
  ElementMap sp_elements;
  bool sp_elements_set = false;
  double sp_mu = 0.0, sp_lambda = 0.0, sp_diff = 0.0;

  Material mat;

  auto where = [&]() { return source + ":" + std::to_string(line_no); };

  auto finish_species = [&]() {
    if (!sp_mass_set)
      throw ConfigError(where() + ": species " + sp_name + " missing molar_mass");
    if (!sp_phase_set)
      throw ConfigError(where() + ": species " + sp_name + " missing phase");
    ElementMap elems = sp_elements_set ? sp_elements : parse_formula(sp_name);
    Species s(sp_name, sp_molar_mass, sp_phase, sp_pieces, elems);
    s.viscosity = sp_mu;
    s.conductivity = sp_lambda;
    s.diffusivity = sp_diff;
    db.add_species(std::move(s));
  };

  while (std::getline(stream, line)) {
    ++line_no;
    const auto tok = tokenize(line);
    if (tok.empty())
      continue;
    const std::string& key = tok[0];

    if (block == Block::none) {
      if (key == "species") {
        if (tok.size() != 2)
          throw ConfigError(where() + ": species record needs exactly one name");
        block = Block::species;
        sp_name = tok[1];
        sp_molar_mass = 0.0;
        sp_phase_set = sp_mass_set = sp_elements_set = false;
        sp_pieces.clear();
        sp_elements.clear();
        sp_mu = sp_lambda = sp_diff = 0.0;
      } else if (key == "material") {
        if (tok.size() != 2)
          throw ConfigError(where() + ": material record needs exactly one name");
        block = Block::material;
        mat = Material{};
        mat.name = tok[1];
        mat.melt_temperature = std::numeric_limits<double>::infinity();
      } else {
        throw ConfigError(where() + ": unknown key '" + key +
                          "' (expected 'species' or 'material')");
      }
      continue;
    }

    if (key == "end") {
      if (block == Block::species)
        finish_species();
      else {
        mat.validate();
        db.add_material(mat);
      }
      block = Block::none;
      continue;
    }

    if (block == Block::species) {
      if (key == "phase") {
        if (tok.size() != 2)
          throw ConfigError(where() + ": phase needs one value");
        if (tok[1] == "gas")
          sp_phase = Phase::gas;
        else if (tok[1] == "liquid")
          sp_phase = Phase::liquid;
        else if (tok[1] == "solid")
          sp_phase = Phase::solid;
        else
          throw ConfigError(where() + ": phase must be gas, liquid or solid");
        sp_phase_set = true;
      } else if (key == "molar_mass") {
        if (tok.size() != 2)
          throw ConfigError(where() + ": molar_mass needs one value");
        sp_molar_mass = parse_number(tok[1], where());
        sp_mass_set = true;
      } else if (key == "elements") {
        if (tok.size() < 3 || tok.size() % 2 == 0)
          throw ConfigError(where() + ": elements needs symbol/count pairs");
        sp_elements.clear();
        for (std::size_t i = 1; i + 1 < tok.size(); i += 2)
          sp_elements[tok[i]] = parse_number(tok[i + 1], where());
        sp_elements_set = true;
      } else if (key == "viscosity" || key == "conductivity" || key == "diffusivity") {
        if (tok.size() != 2)
          throw ConfigError(where() + ": " + key + " needs one value");
        const double v = parse_number(tok[1], where());
        if (v <= 0.0)
          throw ConfigError(where() + ": " + key + " must be positive");
        (key == "viscosity" ? sp_mu : key == "conductivity" ? sp_lambda : sp_diff) = v;
      } else if (key == "range") {
        if (tok.size() != 10)
          throw ConfigError(where() + ": range needs T_lo T_hi and 7 coefficients");
        PolyPiece p;
        p.t_min = parse_number(tok[1], where());
        p.t_max = parse_number(tok[2], where());
        for (int i = 0; i < 7; ++i)
          p.a[i] = parse_number(tok[3 + i], where());
        sp_pieces.push_back(p);
      } else {
        throw ConfigError(where() + ": unknown species key '" + key + "'");
      }
      continue;
    }

    // material block
    if (tok.size() != 2)
      throw ConfigError(where() + ": material key '" + key + "' needs one value");
    if (key == "intrinsic_density")
      mat.intrinsic_density = parse_number(tok[1], where());
    else if (key == "conductivity")
      mat.conductivity = parse_number(tok[1], where());
    else if (key == "porosity")
      mat.porosity = parse_number(tok[1], where());
    else if (key == "permeability")
      mat.permeability = parse_number(tok[1], where());
    else if (key == "emissivity")
      mat.emissivity = parse_number(tok[1], where());
    else if (key == "melt_temperature")
      mat.melt_temperature = parse_number(tok[1], where());
    else if (key == "latent_heat_fusion")
      mat.latent_heat_fusion = parse_number(tok[1], where());
    else if (key == "solid_species")
      mat.solid_species = tok[1];
    else if (key == "melt_species")
      mat.melt_species = tok[1];
    else
      throw ConfigError(where() + ": unknown material key '" + key + "'");
  }

  if (block != Block::none)
    throw ConfigError(source + ": unterminated record (missing 'end')");
  return db;
}

PropertyDatabase PropertyDatabase::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open property database '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const Species& PropertyDatabase::species(const std::string& name) const {
  auto it = species_index_.find(name);
  if (it == species_index_.end()) {
    std::string avail;
    for (const auto& s : species_)
      avail += (avail.empty() ? "" : ", ") + s.name();
    throw ConfigError("unknown species '" + name + "'; available: " + avail);
  }
  return species_[it->second];
}

const Material& PropertyDatabase::material(const std::string& name) const {
  auto it = material_index_.find(name);
  if (it == material_index_.end()) {
    std::string avail;
    for (const auto& m : materials_)
      avail += (avail.empty() ? "" : ", ") + m.name;
    throw ConfigError("unknown material '" + name + "'; available: " + avail);
  }
  return materials_[it->second];
}

std::vector<std::string> PropertyDatabase::species_names() const {
  std::vector<std::string> out;
  out.reserve(species_.size());
  for (const auto& s : species_)
    out.push_back(s.name());
  return out;
}

void PropertyDatabase::add_species(Species s) {
  if (species_index_.count(s.name()))
    throw ConfigError("duplicate species '" + s.name() + "'");
  species_index_[s.name()] = species_.size();
  species_.push_back(std::move(s));
}

void PropertyDatabase::add_material(Material m) {
  if (material_index_.count(m.name))
    throw ConfigError("duplicate material '" + m.name + "'");
  material_index_[m.name] = materials_.size();
  materials_.push_back(std::move(m));
}

std::string PropertyDatabase::serialize() const {
  std::ostringstream os;
  for (const auto& s : species_) {
    os << "species " << s.name() << "\n";
    os << "  phase " << phase_name(s.phase()) << "\n";
    os << "  molar_mass " << format_number(s.molar_mass()) << "\n";
    os << "  elements";
    for (const auto& [sym, count] : s.elements())
      os << " " << sym << " " << format_number(count);
    os << "\n";
    if (s.viscosity > 0.0)
      os << "  viscosity " << format_number(s.viscosity) << "\n";
    if (s.conductivity > 0.0)
      os << "  conductivity " << format_number(s.conductivity) << "\n";
    if (s.diffusivity > 0.0)
      os << "  diffusivity " << format_number(s.diffusivity) << "\n";
    for (const auto& p : s.pieces()) {
      os << "  range " << format_number(p.t_min) << " " << format_number(p.t_max);
      for (double a : p.a)
        os << " " << format_number(a);
      os << "\n";
    }
    os << "end\n\n";
  }
  for (const auto& m : materials_) {
    os << "material " << m.name << "\n";
    os << "  intrinsic_density " << format_number(m.intrinsic_density) << "\n";
    os << "  conductivity " << format_number(m.conductivity) << "\n";
    os << "  porosity " << format_number(m.porosity) << "\n";
    os << "  permeability " << format_number(m.permeability) << "\n";
    os << "  emissivity " << format_number(m.emissivity) << "\n";
    os << "  melt_temperature " << format_number(m.melt_temperature) << "\n";
    os << "  latent_heat_fusion " << format_number(m.latent_heat_fusion) << "\n";
    os << "  solid_species " << m.solid_species << "\n";
    if (!m.melt_species.empty())
      os << "  melt_species " << m.melt_species << "\n";
    os << "end\n\n";
  }
  return os.str();
}

} // namespace pyrobed::core
