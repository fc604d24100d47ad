// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

// Independent oracle for transient conduction in a sphere with a convective
// boundary: the classical eigenfunction series. Test-only code; it shares
// nothing with the finite-volume path it is used to check.

#ifndef PYROBED_TESTS_CONDUCTION_ORACLE_HPP
#define PYROBED_TESTS_CONDUCTION_ORACLE_HPP

#include <cmath>
#include <vector>

namespace oracle {

/// Roots of 1 - z cot z = Bi, one per interval ((k-1)pi, k pi).
inline std::vector<double> sphere_eigenvalues(double biot, int count) {
  std::vector<double> roots;
  const double pi = 3.14159265358979323846;
  auto f = [&](double z) { return 1.0 - z / std::tan(z) - biot; };
  for (int k = 1; k <= count; ++k) {
    double lo = (k - 1) * pi + 1e-9;
    double hi = k * pi - 1e-9;
    // f(lo+) = -Bi < 0 (k=1) and f decreases through the asymptote; bisect
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) > 0.0)
        hi = mid;
      else
        lo = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

/// Dimensionless temperature theta = (T - T_inf)/(T0 - T_inf) at radius
/// fraction x = r/R and Fourier number fo = a t / R^2.
inline double sphere_theta(double biot, double x, double fo, int terms = 50) {
  const auto zs = sphere_eigenvalues(biot, terms);
  double theta = 0.0;
  for (double z : zs) {
    const double cn = 4.0 * (std::sin(z) - z * std::cos(z)) / (2.0 * z - std::sin(2.0 * z));
    const double radial = x < 1e-12 ? 1.0 : std::sin(z * x) / (z * x);
    theta += cn * std::exp(-z * z * fo) * radial;
  }
  return theta;
}

} // namespace oracle

#endif
