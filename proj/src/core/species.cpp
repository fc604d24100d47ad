// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include "core/species.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "common/constants.hpp"
#include "common/error.hpp"

namespace pyrobed::core {

std::string phase_name(Phase p) {
  switch (p) {
  case Phase::gas:
    return "gas";
  case Phase::liquid:
    return "liquid";
  default:
    return "solid";
  }
}

ElementMap parse_formula(const std::string& formula) {
  // The phase suffix "(s)" / "(l)" / "(g)" is not part of the formula.
  std::string body = formula.substr(0, formula.find('('));
  ElementMap out;
  std::size_t i = 0;
  while (i < body.size()) {
    if (!std::isupper(static_cast<unsigned char>(body[i])))
      throw ConfigError("cannot parse chemical formula '" + formula + "' at position " +
                        std::to_string(i));
    std::string symbol(1, body[i]);
    ++i;
    while (i < body.size() && std::islower(static_cast<unsigned char>(body[i]))) {
      symbol += body[i];
      ++i;
    }
    std::size_t start = i;
    while (i < body.size() &&
           (std::isdigit(static_cast<unsigned char>(body[i])) || body[i] == '.'))
      ++i;
    double count = 1.0;
    if (i > start)
      count = std::stod(body.substr(start, i - start));
    out[symbol] += count;
  }
  return out;
}

Species::Species(std::string name, double molar_mass, Phase phase, std::vector<PolyPiece> pieces,
                 ElementMap elements)
  : name_(std::move(name))
  , molar_mass_(molar_mass)
  , phase_(phase)
  , pieces_(std::move(pieces))
  , elements_(std::move(elements)) {
  if (molar_mass_ <= 0.0)
    throw ConfigError("species " + name_ + ": molar mass must be positive");
  if (pieces_.empty())
    throw ConfigError("species " + name_ + ": no polynomial ranges given");
  for (const auto& p : pieces_)
    if (!(p.t_max > p.t_min))
      throw ConfigError("species " + name_ + ": empty temperature range");
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].t_min <= pieces_[i - 1].t_min)
      throw ConfigError("species " + name_ + ": ranges must be sorted ascending");
    if (std::abs(pieces_[i].t_min - pieces_[i - 1].t_max) > 1e-9 * pieces_[i].t_min)
      throw ConfigError("species " + name_ + ": ranges must be contiguous, gap at " +
                        std::to_string(pieces_[i - 1].t_max) + " K");
    // Continuity contracts at piece boundaries.
    const double tb = pieces_[i].t_min;
    const double eps = 1e-9 * tb;
    const double hl = enthalpy(tb - eps), hr = enthalpy(tb + eps);
    if (std::abs(hl - hr) > 1e-3 * std::max(std::abs(hl), 1.0))
      throw ConfigError("species " + name_ + ": enthalpy discontinuity at " +
                        std::to_string(tb) + " K exceeds 0.1%");
    const double cl = heat_capacity(tb - eps), cr = heat_capacity(tb + eps);
    if (std::abs(cl - cr) > 1e-2 * std::max(std::abs(cl), 1.0))
      throw ConfigError("species " + name_ + ": heat-capacity discontinuity at " +
                        std::to_string(tb) + " K exceeds 1%");
  }
  // Physical positivity of cp is enforced at load time on a sample grid.
  for (const auto& p : pieces_) {
    for (int k = 0; k <= 64; ++k) {
      const double t = p.t_min + (p.t_max - p.t_min) * k / 64.0;
      if (heat_capacity(t) <= 0.0)
        throw ConfigError("species " + name_ + ": non-positive heat capacity at " +
                          std::to_string(t) + " K");
    }
  }
}

const PolyPiece& Species::piece_for(double t) const {
  if (t < pieces_.front().t_min || t > pieces_.back().t_max) {
    std::ostringstream os;
    os << "temperature " << t << " K out of range [" << pieces_.front().t_min << ", "
       << pieces_.back().t_max << "] K for species " << name_;
    throw RangeError(os.str());
  }
  for (const auto& p : pieces_)
    if (t <= p.t_max)
      return p;
  return pieces_.back();
}

double Species::molar_enthalpy(double t) const {
  const auto& a = piece_for(t).a;
  const double poly =
    a[0] + t * (a[1] / 2 + t * (a[2] / 3 + t * (a[3] / 4 + t * a[4] / 5))) + a[5] / t;
  return constants::gas_constant * t * poly;
}

double Species::molar_heat_capacity(double t) const {
  const auto& a = piece_for(t).a;
  return constants::gas_constant * (a[0] + t * (a[1] + t * (a[2] + t * (a[3] + t * a[4]))));
}

double Species::enthalpy(double t) const { return molar_enthalpy(t) / molar_mass_; }

double Species::heat_capacity(double t) const { return molar_heat_capacity(t) / molar_mass_; }

} // namespace pyrobed::core
