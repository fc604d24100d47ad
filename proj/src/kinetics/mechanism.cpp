// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include "kinetics/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "common/constants.hpp"
#include "common/error.hpp"

namespace pyrobed::kinetics {

double ArrheniusParams::rate(double t) const {
  return pre_factor * std::pow(t, temp_exponent) *
         std::exp(-activation_energy / (constants::gas_constant * t));
}

double EquilibriumModel::value(double t) const {
  if (irreversible)
    return std::numeric_limits<double>::infinity();
  if (temperatures.size() == 1)
    return values.front();
  if (t <= temperatures.front())
    return values.front();
  if (t >= temperatures.back())
    return values.back();
  auto it = std::upper_bound(temperatures.begin(), temperatures.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - temperatures.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - temperatures[lo]) / (temperatures[hi] - temperatures[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

double Reaction::progress_rate(std::span<const double> c, double t) const {
  if (model == RateModel::heat_limited)
    return 0.0;
  double forward = 1.0;
  for (const auto& term : reactants)
    forward *= std::pow(c[term.species], term.nu);
  double reverse = 0.0;
  const double keq = equilibrium.value(t);
  if (std::isfinite(keq)) {
    reverse = 1.0;
    for (const auto& term : products)
      reverse *= std::pow(c[term.species], term.nu);
    reverse /= keq;
  }
  return arrhenius.rate(t) * (forward - reverse);
}

std::size_t ReactionMechanism::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    std::string avail;
    for (const auto& s : species_names_)
      avail += (avail.empty() ? "" : ", ") + s;
    throw ConfigError("mechanism " + name_ + ": species '" + name +
                      "' not in index; available: " + avail);
  }
  return it->second;
}

void ReactionMechanism::add_rates(std::span<const double> c, double t,
                                  std::span<double> dcdt) const {
  for (const auto& r : reactions_) {
    const double q = r.progress_rate(c, t);
    if (q == 0.0)
      continue;
    for (const auto& term : r.reactants)
      dcdt[term.species] -= term.nu * q;
    for (const auto& term : r.products)
      dcdt[term.species] += term.nu * q;
  }
}

std::vector<double> ReactionMechanism::rates(std::span<const double> c, double t) const {
  if (c.size() != species_names_.size())
    throw ConfigError("mechanism " + name_ + ": concentration vector has " +
                      std::to_string(c.size()) + " entries, expected " +
                      std::to_string(species_names_.size()));
  std::vector<double> dcdt(species_names_.size(), 0.0);
  add_rates(c, t, dcdt);
  return dcdt;
}

void ReactionMechanism::verify_element_balance() const {
  for (const auto& r : reactions_) {
    std::set<std::string> symbols;
    core::ElementMap lhs, rhs;
    for (const auto& term : r.reactants)
      for (const auto& [sym, n] : elements_[term.species]) {
        lhs[sym] += term.nu * n;
        symbols.insert(sym);
      }
    for (const auto& term : r.products)
      for (const auto& [sym, n] : elements_[term.species]) {
        rhs[sym] += term.nu * n;
        symbols.insert(sym);
      }
    for (const auto& sym : symbols) {
      const double a = lhs[sym], b = rhs[sym];
      if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), 1.0}))
        throw ConfigError("mechanism " + name_ + ": reaction '" + r.equation +
                          "' does not balance element " + sym + " (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
    }
  }
}

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

double number(const std::string& tok, const std::string& where) {
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

} // namespace

ReactionMechanism ReactionMechanism::parse(const std::string& text, const std::string& source) {
  ReactionMechanism mech;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  bool in_reaction = false;
  Reaction current;
  std::unordered_map<std::string, core::ElementMap> element_overrides;

  auto where = [&]() { return source + ":" + std::to_string(line_no); };

  auto intern = [&](const std::string& sp) -> std::size_t {
    auto it = mech.index_.find(sp);
    if (it != mech.index_.end())
      return it->second;
    const std::size_t id = mech.species_names_.size();
    mech.index_[sp] = id;
    mech.species_names_.push_back(sp);
    auto ov = element_overrides.find(sp);
    mech.elements_.push_back(ov != element_overrides.end() ? ov->second
                                                           : core::parse_formula(sp));
    return id;
  };

  // "nu A + nu B -> nu C" (or <=> for reversible); returns whether reversible
  auto parse_equation = [&](const std::vector<std::string>& tok) {
    current = Reaction{};
    std::string eq;
    for (std::size_t i = 1; i < tok.size(); ++i)
      eq += (i > 1 ? " " : "") + tok[i];
    current.equation = eq;
    bool reversible = false;
    std::vector<ReactionTerm>* side = &current.reactants;
    double pending_nu = -1.0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const std::string& t = tok[i];
      if (t == "+")
        continue;
      if (t == "->" || t == "<=>") {
        if (pending_nu >= 0.0)
          throw ConfigError(where() + ": dangling coefficient before '" + t + "'");
        reversible = (t == "<=>");
        side = &current.products;
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(t.c_str(), &end);
      if (end && *end == '\0') {
        if (pending_nu >= 0.0)
          throw ConfigError(where() + ": two coefficients in a row");
        if (v <= 0.0)
          throw ConfigError(where() + ": stoichiometric coefficients must be positive");
        pending_nu = v;
        continue;
      }
      if (pending_nu < 0.0)
        throw ConfigError(where() + ": species '" + t + "' needs an explicit coefficient");
      side->push_back({intern(t), pending_nu});
      pending_nu = -1.0;
    }
    if (pending_nu >= 0.0)
      throw ConfigError(where() + ": dangling coefficient at end of equation");
    if (current.reactants.empty() || current.products.empty())
      throw ConfigError(where() + ": reaction needs both sides");
    current.equilibrium.irreversible = !reversible;
    if (reversible) {
      // a reversible reaction must supply an equilibrium table
      current.equilibrium.temperatures.clear();
    }
  };

  while (std::getline(stream, line)) {
    ++line_no;
    const auto tok = tokenize(line);
    if (tok.empty())
      continue;
    const std::string& key = tok[0];

    if (!in_reaction) {
      if (key == "mechanism") {
        if (tok.size() != 2)
          throw ConfigError(where() + ": mechanism needs one name");
        mech.name_ = tok[1];
      } else if (key == "elements") {
        if (tok.size() < 4 || tok.size() % 2 != 0)
          throw ConfigError(where() + ": elements needs a species then symbol/count pairs");
        core::ElementMap m;
        for (std::size_t i = 2; i + 1 < tok.size(); i += 2)
          m[tok[i]] = number(tok[i + 1], where());
        element_overrides[tok[1]] = m;
      } else if (key == "reaction") {
        parse_equation(tok);
        in_reaction = true;
      } else {
        throw ConfigError(where() + ": unknown key '" + key + "'");
      }
      continue;
    }

    if (key == "end") {
      if (current.model == RateModel::finite_rate && !current.equilibrium.irreversible &&
          current.equilibrium.temperatures.empty())
        throw ConfigError(where() + ": reversible reaction '" + current.equation +
                          "' needs an equilibrium table");
      mech.reactions_.push_back(current);
      in_reaction = false;
    } else if (key == "arrhenius") {
      if (tok.size() != 4)
        throw ConfigError(where() + ": arrhenius needs A b Ea");
      current.arrhenius.pre_factor = number(tok[1], where());
      current.arrhenius.temp_exponent = number(tok[2], where());
      current.arrhenius.activation_energy = number(tok[3], where());
    } else if (key == "equilibrium") {
      if (tok.size() < 2)
        throw ConfigError(where() + ": equilibrium needs 'table T K ...'");
      if (tok[1] != "table")
        throw ConfigError(where() + ": only 'equilibrium table' is supported");
      if (tok.size() < 4 || tok.size() % 2 != 0)
        throw ConfigError(where() + ": equilibrium table needs T/K pairs");
      current.equilibrium.irreversible = false;
      current.equilibrium.temperatures.clear();
      current.equilibrium.values.clear();
      for (std::size_t i = 2; i + 1 < tok.size(); i += 2) {
        current.equilibrium.temperatures.push_back(number(tok[i], where()));
        current.equilibrium.values.push_back(number(tok[i + 1], where()));
      }
      for (std::size_t i = 1; i < current.equilibrium.temperatures.size(); ++i)
        if (current.equilibrium.temperatures[i] <= current.equilibrium.temperatures[i - 1])
          throw ConfigError(where() + ": equilibrium table temperatures must increase");
    } else if (key == "enthalpy") {
      if (tok.size() != 2)
        throw ConfigError(where() + ": enthalpy needs 'from_species' or a value in J/mol");
      if (tok[1] == "from_species")
        current.enthalpy_override.reset();
      else
        current.enthalpy_override = number(tok[1], where());
    } else if (key == "type") {
      if (tok.size() != 2 || (tok[1] != "finite_rate" && tok[1] != "heat_limited"))
        throw ConfigError(where() + ": type must be finite_rate or heat_limited");
      current.model = tok[1] == "heat_limited" ? RateModel::heat_limited : RateModel::finite_rate;
    } else if (key == "activation") {
      if (tok.size() != 2)
        throw ConfigError(where() + ": activation needs 'saturation' or a temperature");
      if (tok[1] == "saturation")
        current.activation_from_saturation = true;
      else {
        current.activation_from_saturation = false;
        current.activation_temperature = number(tok[1], where());
      }
    } else {
      throw ConfigError(where() + ": unknown reaction key '" + key + "'");
    }
  }

  if (in_reaction)
    throw ConfigError(source + ": unterminated reaction (missing 'end')");
  if (mech.name_.empty())
    throw ConfigError(source + ": missing 'mechanism <name>' header");
  mech.verify_element_balance();
  return mech;
}

double saturation_temperature(double pressure) {
  if (pressure <= 0.0)
    throw ConfigError("saturation temperature needs positive pressure");
  const double rv = constants::gas_constant / constants::water_molar_mass;
  const double inv = 1.0 / constants::water_boiling_1atm -
                     rv * std::log(pressure / constants::standard_pressure) /
                       constants::water_latent_vap;
  return 1.0 / inv;
}

BatchTrajectory integrate_batch(const ReactionMechanism& mech, std::vector<double> c,
                                double temperature, double t_end, double dt) {
  if (dt <= 0.0)
    throw ConfigError("integrate_batch: dt must be positive");
  const std::size_t n = c.size();
  BatchTrajectory out;
  out.times.push_back(0.0);
  out.concentrations.push_back(c);

  std::vector<double> k1(n), k2(n), trial(n);
  double t = 0.0;
  while (t < t_end - 1e-15 * t_end) {
    double h = std::min(dt, t_end - t);
    // Heun step with halving on negative overshoot
    for (int attempt = 0;; ++attempt) {
      if (attempt > 60)
        throw StepError("integrate_batch: step size underflow at t = " + std::to_string(t));
      std::fill(k1.begin(), k1.end(), 0.0);
      mech.add_rates(c, temperature, k1);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = c[i] + h * k1[i];
        if (!std::isfinite(trial[i]))
          throw StepError("integrate_batch: non-finite rate for species " +
                          mech.species_names()[i]);
        if (trial[i] < 0.0)
          ok = false;
      }
      if (ok) {
        std::fill(k2.begin(), k2.end(), 0.0);
        mech.add_rates(trial, temperature, k2);
        for (std::size_t i = 0; i < n; ++i) {
          trial[i] = c[i] + 0.5 * h * (k1[i] + k2[i]);
          if (trial[i] < 0.0)
            ok = false;
        }
      }
      if (ok) {
        c = trial;
        t += h;
        break;
      }
      h *= 0.5;
    }
    out.times.push_back(t);
    out.concentrations.push_back(c);
  }
  return out;
}

} // namespace pyrobed::kinetics
