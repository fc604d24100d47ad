// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "common/error.hpp"
#include "kinetics/mechanism.hpp"

using namespace pyrobed;
using namespace pyrobed::kinetics;

namespace {

ReactionMechanism simple_ab(double a_pre, bool reversible, double keq = 1.0) {
  std::string text = "mechanism ab\nreaction 1 A(g) ";
  text += reversible ? "<=>" : "->";
  text += " 1 B(g)\n  arrhenius " + std::to_string(a_pre) + " 0 0\n";
  if (reversible)
    text += "  equilibrium table 200 " + std::to_string(keq) + " 2000 " + std::to_string(keq) +
            "\n";
  text += "end\n";
  // element balance: A and B both parse as one pseudo-element each; give
  // explicit identical compositions instead.
  text = "mechanism ab\nelements A(g) X 1\nelements B(g) X 1\n" + text.substr(13);
  return ReactionMechanism::parse(text, "test");
}

} // namespace

TEST_CASE("hand-evaluated rate: A->B with k_f=2, c_A=3") {
  auto mech = simple_ab(2.0, false);
  const auto r = mech.rates(std::vector<double>{3.0, 0.0}, 400.0);
  CHECK(r[mech.index_of("A(g)")] == doctest::Approx(-6.0).epsilon(1e-14));
  CHECK(r[mech.index_of("B(g)")] == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("rates vanish at the equilibrium quotient") {
  auto mech = simple_ab(5.0, true, 4.0);
  // Q = c_B / c_A = 4 = K_eq
  const auto r = mech.rates(std::vector<double>{1.0, 4.0}, 500.0);
  CHECK(r[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("zero reactant concentration stops an irreversible reaction") {
  auto mech = simple_ab(7.0, false);
  const auto r = mech.rates(std::vector<double>{0.0, 2.0}, 500.0);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
}

TEST_CASE("sign of the net rate follows 1 - Q/K_eq") {
  auto mech = simple_ab(3.0, true, 2.0);
  // Q < K: forward
  auto r = mech.rates(std::vector<double>{1.0, 1.0}, 500.0);
  CHECK(r[0] < 0.0);
  CHECK(r[1] > 0.0);
  // Q > K: reverse
  r = mech.rates(std::vector<double>{1.0, 3.0}, 500.0);
  CHECK(r[0] > 0.0);
  CHECK(r[1] < 0.0);
}

TEST_CASE("participant rates are proportional to stoichiometric coefficients") {
  const std::string text = R"(mechanism multi
elements A(g) X 1
elements B(g) Y 1
elements C(g) X 1 Y 3

reaction 1 A(g) + 3 B(g) -> 1 C(g)
  arrhenius 11.0 0 0
end
)";
  auto mech = ReactionMechanism::parse(text, "test");
  const auto r = mech.rates(std::vector<double>{2.0, 5.0, 0.1}, 600.0);
  const std::size_t a = mech.index_of("A(g)"), b = mech.index_of("B(g)"),
                    c = mech.index_of("C(g)");
  CHECK(r[b] / r[a] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(r[c] / r[a] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("element mass is conserved by the rate vector") {
  auto mech = builtin_mechanism("wo3-reduction");
  std::vector<double> c(mech.species_count(), 0.5);
  const auto r = mech.rates(c, 1100.0);
  // per element: sum_k dc_k/dt * count_k = 0
  std::map<std::string, double> balance, scale;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const auto& [sym, n] : mech.species_elements(i)) {
      balance[sym] += r[i] * n;
      scale[sym] += std::abs(r[i] * n);
    }
  for (const auto& [sym, v] : balance)
    CHECK(std::abs(v) <= 1e-12 * std::max(scale[sym], 1.0));
}

TEST_CASE("Arrhenius rate is strictly increasing in T for positive Ea") {
  ArrheniusParams k{1.0e5, 0.0, 8.0e4};
  double prev = k.rate(300.0);
  for (double t = 350.0; t <= 2000.0; t += 50.0) {
    CHECK(k.rate(t) > prev);
    prev = k.rate(t);
  }
}

TEST_CASE("built-in wo3 chain carries the four-step stoichiometry") {
  auto mech = builtin_mechanism("wo3-reduction");
  REQUIRE(mech.reactions().size() == 4);
  const double h2_per_step[4] = {0.1, 0.18, 0.72, 2.0};
  double total_h2o = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& r = mech.reactions()[k];
    double nu_h2 = 0.0, nu_h2o = 0.0;
    for (const auto& term : r.reactants)
      if (mech.species_names()[term.species] == "H2(g)")
        nu_h2 = term.nu;
    for (const auto& term : r.products)
      if (mech.species_names()[term.species] == "H2O(g)")
        nu_h2o = term.nu;
    CHECK(nu_h2 == doctest::Approx(h2_per_step[k]));
    CHECK(nu_h2o == doctest::Approx(h2_per_step[k]));
    total_h2o += nu_h2o;
  }
  // WO2 -> W releases exactly 2 mol H2O per mol WO2; the full chain 3 per WO3.
  CHECK(h2_per_step[3] == 2.0);
  CHECK(total_h2o == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("unknown built-in mechanism lists the catalog") {
  CHECK_THROWS_WITH_AS(builtin_mechanism("nope"), doctest::Contains("wo3-reduction"),
                       ConfigError);
}

TEST_CASE("drying mechanism reports zero concentration-driven rate") {
  auto mech = builtin_mechanism("drying");
  std::vector<double> c(mech.species_count(), 10.0);
  // below (and even above) saturation the kinetic rate is zero: the
  // evaporation rate is set by the energy balance, not by concentrations
  for (double t : {300.0, 500.0})
    for (double r : mech.rates(c, t))
      CHECK(r == 0.0);
  CHECK(mech.reactions().front().activation_from_saturation);
}

TEST_CASE("mechanism loading is idempotent") {
  auto m1 = builtin_mechanism("pyrolysis");
  auto m2 = builtin_mechanism("pyrolysis");
  std::vector<double> c(m1.species_count(), 0.3);
  const auto r1 = m1.rates(c, 800.0);
  const auto r2 = m2.rates(c, 800.0);
  for (std::size_t i = 0; i < r1.size(); ++i)
    CHECK(r1[i] == r2[i]);
}

TEST_CASE("batch: starting at equilibrium stays there") {
  auto mech = simple_ab(2.0, true, 1.0);
  auto traj = integrate_batch(mech, {1.0, 1.0}, 500.0, 2.0, 0.01);
  for (const auto& row : traj.concentrations) {
    CHECK(row[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("batch: A<=>B with K_eq=4 terminates at c_B/c_A = 4") {
  auto mech = simple_ab(2.0, true, 4.0);
  auto traj = integrate_batch(mech, {1.0, 0.0}, 500.0, 20.0, 0.005);
  const auto& last = traj.concentrations.back();
  CHECK(last[1] / last[0] == doctest::Approx(4.0).epsilon(1e-3));
  // mass conserved
  CHECK(last[0] + last[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("batch: irreversible first-order decay matches exp(-k t)") {
  const double k = 3.0;
  auto mech = simple_ab(k, false);
  const double dt = 0.01 / k;
  auto traj = integrate_batch(mech, {1.0, 0.0}, 500.0, 1.0, dt);
  for (std::size_t i = 0; i < traj.times.size(); i += 37) {
    const double expected = std::exp(-k * traj.times[i]);
    CHECK(traj.concentrations[i][0] == doctest::Approx(expected).epsilon(5e-3));
  }
  CHECK(traj.concentrations.back()[0] ==
        doctest::Approx(std::exp(-k * traj.times.back())).epsilon(5e-3));
}

TEST_CASE("batch enforces non-negative concentrations") {
  // stiff irreversible decay with a deliberately large dt
  auto mech = simple_ab(100.0, false);
  auto traj = integrate_batch(mech, {1.0, 0.0}, 500.0, 0.5, 0.1);
  for (const auto& row : traj.concentrations) {
    CHECK(row[0] >= 0.0);
    CHECK(row[1] >= 0.0);
  }
  CHECK(traj.concentrations.back()[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("element-unbalanced reactions are rejected") {
  const std::string text = R"(mechanism broken
reaction 1 H2O(g) -> 1 H2(g)
  arrhenius 1 0 0
end
)";
  CHECK_THROWS_AS(ReactionMechanism::parse(text, "test"), ConfigError);
}

TEST_CASE("saturation temperature matches steam-table anchors") {
  CHECK(saturation_temperature(101325.0) == doctest::Approx(373.15).epsilon(1e-6));
  // 2.4 bar: about 126 C
  CHECK(saturation_temperature(2.4e5) == doctest::Approx(399.4).epsilon(5e-3));
}
