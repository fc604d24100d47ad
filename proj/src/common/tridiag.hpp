// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_COMMON_TRIDIAG_HPP
#define PYROBED_COMMON_TRIDIAG_HPP

#include <vector>

#include "common/error.hpp"

namespace pyrobed {

/// Thomas algorithm. a = sub-diagonal (a[0] unused), b = diagonal,
/// c = super-diagonal (c[n-1] unused), d = right-hand side; solution
/// overwrites d. Scratch vectors are caller-provided to avoid per-call
/// allocation in inner loops.
inline void solve_tridiagonal(std::vector<double>& a, std::vector<double>& b,
                              std::vector<double>& c, std::vector<double>& d) {
  const std::size_t n = b.size();
  if (n == 0)
    return;
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    d[i] -= m * d[i - 1];
  }
  if (b[n - 1] == 0.0)
    throw StepError("tridiagonal solve: singular matrix");
  d[n - 1] /= b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

} // namespace pyrobed

#endif
