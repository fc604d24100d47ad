// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_COMMON_ERROR_HPP
#define PYROBED_COMMON_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pyrobed {

/// All engine errors derive from Error so the C API can map them to a
/// status code in one place.
class Error : public std::runtime_error {
public:
  enum class Kind {
    config,   // bad input files, invalid parameters
    range,    // property evaluated outside its validity range
    step,     // a solver step failed (divergence, non-convergence)
    geometry, // degenerate geometric configuration
    coupling, // particle/grid exchange failure
    io        // filesystem problems
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

  /// Process exit code convention: 2 for configuration problems, 3 for
  /// runtime solver failures.
  int exit_code() const { return (kind_ == Kind::config || kind_ == Kind::io) ? 2 : 3; }

private:
  Kind kind_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(Kind::config, what) {}
};

class RangeError : public Error {
public:
  explicit RangeError(const std::string& what) : Error(Kind::range, what) {}
};

class StepError : public Error {
public:
  explicit StepError(const std::string& what) : Error(Kind::step, what) {}
};

class GeometryError : public Error {
public:
  explicit GeometryError(const std::string& what) : Error(Kind::geometry, what) {}
};

class CouplingError : public Error {
public:
  explicit CouplingError(const std::string& what) : Error(Kind::coupling, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(Kind::io, what) {}
};

} // namespace pyrobed

#endif
