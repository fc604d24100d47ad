// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "common/rng.hpp"
#include "core/database.hpp"

using namespace pyrobed;
using namespace pyrobed::core;

namespace {

// Independent oracle: direct NASA-7 evaluation from the published
// 7-coefficient table, written before the library path existed. Coefficients
// are hard-coded here on purpose so the test does not share data parsing with
// the implementation it checks.
constexpr double kGasConstant = 8.31446261815324;

double nasa7_h_mol(const double (&a)[7], double t) {
  return kGasConstant * t *
         (a[0] + a[1] * t / 2 + a[2] * t * t / 3 + a[3] * t * t * t / 4 +
          a[4] * t * t * t * t / 5 + a[5] / t);
}

double nasa7_cp_mol(const double (&a)[7], double t) {
  return kGasConstant * (a[0] + a[1] * t + a[2] * t * t + a[3] * t * t * t + a[4] * t * t * t * t);
}

// H2O(g), 200-1000 K piece of the standard table.
constexpr double kH2OLow[7] = {4.19864056e+00, -2.03643410e-03, 6.52040211e-06,
                               -5.48797062e-09, 1.77197817e-12, -3.02937267e+04,
                               -8.49032208e-01};
// N2, 300-1000 K piece.
constexpr double kN2Low[7] = {3.29867700e+00, 1.40824040e-03, -3.96322200e-06,
                              5.64151500e-09, -2.44485400e-12, -1.02089990e+03,
                              3.95037200e+00};

PropertyDatabase shipped_db() {
  return PropertyDatabase::load(std::string(PYROBED_SOURCE_DIR) + "/data/species.db");
}

} // namespace

TEST_CASE("enthalpy at the reference temperature is the formation enthalpy") {
  const auto db = shipped_db();
  const auto& h2o = db.species("H2O(g)");
  // -241.826 kJ/mol is the standard formation enthalpy of water vapour.
  CHECK(h2o.molar_enthalpy(298.15) == doctest::Approx(-241826.0).epsilon(2e-4));
  const auto& h2 = db.species("H2(g)");
  CHECK(h2.molar_enthalpy(298.15) == doctest::Approx(0.0).scale(1e3).epsilon(1e-3));
}

TEST_CASE("H2O(g) enthalpy at 500 K matches the independent polynomial oracle") {
  const auto db = shipped_db();
  const auto& h2o = db.species("H2O(g)");
  const double oracle = nasa7_h_mol(kH2OLow, 500.0) / 0.01801528;
  // frozen value computed with the oracle ahead of the implementation
  const double frozen = -13038920.199051;
  CHECK(oracle == doctest::Approx(frozen).epsilon(1e-12));
  CHECK(h2o.enthalpy(500.0) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("N2 heat capacity at 300 K matches the independent polynomial oracle") {
  const auto db = shipped_db();
  const auto& n2 = db.species("N2(g)");
  const double oracle = nasa7_cp_mol(kN2Low, 300.0) / 0.0280134;
  const double frozen = 1037.9133656814968;
  CHECK(oracle == doctest::Approx(frozen).epsilon(1e-12));
  CHECK(n2.heat_capacity(300.0) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("finite differences of h reproduce cp within 0.5%") {
  const auto db = shipped_db();
  const double delta = 0.1;
  for (const auto& name : {"H2O(g)", "N2(g)", "CO2(g)", "H2O(s)", "WO2(s)"}) {
    const auto& s = db.species(name);
    for (double t : {300.0, 500.0, 900.0, 1400.0}) {
      if (t <= s.t_min() + delta || t >= s.t_max() - delta)
        continue;
      const double fd = (s.enthalpy(t + delta) - s.enthalpy(t - delta)) / (2 * delta);
      CHECK(fd == doctest::Approx(s.heat_capacity(t)).epsilon(5e-3));
    }
  }
}

TEST_CASE("evalEnthalpy difference equals the integral of cp within 0.1%") {
  const auto db = shipped_db();
  const auto& s = db.species("CO(g)");
  const double t1 = 350.0, t2 = 1450.0;
  // composite Simpson quadrature of cp
  const int n = 2000;
  const double h = (t2 - t1) / n;
  double integral = s.heat_capacity(t1) + s.heat_capacity(t2);
  for (int i = 1; i < n; ++i)
    integral += (i % 2 ? 4.0 : 2.0) * s.heat_capacity(t1 + i * h);
  integral *= h / 3.0;
  CHECK(s.enthalpy(t2) - s.enthalpy(t1) == doctest::Approx(integral).epsilon(1e-3));
}

TEST_CASE("out-of-range temperature raises a range error naming the species") {
  const auto db = shipped_db();
  const auto& s = db.species("H2O(g)");
  CHECK_THROWS_WITH_AS(s.enthalpy(5.0), doctest::Contains("H2O(g)"), RangeError);
  CHECK_THROWS_AS(s.heat_capacity(1e5), RangeError);
}

TEST_CASE("cp positivity and h continuity are enforced at load time") {
  const std::string bad_cp = R"(species X(g)
  phase gas
  molar_mass 0.028
  elements N 2
  range 300 1000 -1.0 0 0 0 0 0 0
end
)";
  CHECK_THROWS_AS(PropertyDatabase::parse(bad_cp, "test"), ConfigError);

  const std::string discontinuous = R"(species X(g)
  phase gas
  molar_mass 0.028
  elements N 2
  range 300 1000 3.5 0 0 0 0 -1000 0
  range 1000 2000 3.5 0 0 0 0 -5000 0
end
)";
  CHECK_THROWS_AS(PropertyDatabase::parse(discontinuous, "test"), ConfigError);
}

TEST_CASE("parser rejects unknown keys") {
  const std::string text = R"(species X(g)
  phase gas
  molar_mass 0.028
  colour blue
end
)";
  CHECK_THROWS_WITH_AS(PropertyDatabase::parse(text, "test"), doctest::Contains("colour"),
                       ConfigError);
}

TEST_CASE("database round-trip reproduces evaluations bit-exactly") {
  const auto db = shipped_db();
  const auto text = db.serialize();
  const auto db2 = PropertyDatabase::parse(text, "round-trip");
  Rng rng(987654321);
  for (const auto& s : db.all_species()) {
    const auto& s2 = db2.species(s.name());
    for (int i = 0; i < 100; ++i) {
      const double t = rng.uniform(s.t_min(), s.t_max());
      CHECK(s.enthalpy(t) == s2.enthalpy(t));
      CHECK(s.heat_capacity(t) == s2.heat_capacity(t));
    }
  }
  CHECK(db2.all_materials().size() == db.all_materials().size());
}

TEST_CASE("h is monotonically increasing wherever cp is positive") {
  const auto db = shipped_db();
  for (const auto& s : db.all_species()) {
    double prev = s.enthalpy(s.t_min());
    const int n = 257;
    for (int i = 1; i <= n; ++i) {
      const double t = s.t_min() + (s.t_max() - s.t_min()) * i / n;
      const double h = s.enthalpy(t);
      CHECK(h > prev);
      prev = h;
    }
  }
}

TEST_CASE("formula parsing handles fractional subscripts") {
  const auto m = parse_formula("WO2.9(s)");
  CHECK(m.at("W") == doctest::Approx(1.0));
  CHECK(m.at("O") == doctest::Approx(2.9));
  const auto bio = parse_formula("CH1.4O0.6");
  CHECK(bio.at("C") == doctest::Approx(1.0));
  CHECK(bio.at("H") == doctest::Approx(1.4));
  CHECK(bio.at("O") == doctest::Approx(0.6));
}

TEST_CASE("ice, water and steam are thermodynamically consistent") {
  const auto db = shipped_db();
  const auto& ice = db.species("H2O(s)");
  const auto& liq = db.species("H2O(l)");
  // latent heat of fusion embedded in the database
  CHECK(liq.enthalpy(273.15) - ice.enthalpy(273.15) == doctest::Approx(334.0e3).epsilon(1e-9));
  const auto& mat = db.material("ice");
  CHECK(mat.latent_heat_fusion == doctest::Approx(334.0e3));
  CHECK(mat.melt_temperature == doctest::Approx(273.15));
}
