// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nwa {

enum class ErrorKind {
  kConfig,                  // invalid configuration or argument combination
  kData,                    // unreadable / malformed / empty input data
  kCalibrationInsufficient, // a channel has fewer than two strict minima
  kCoverage,                // a cluster received no judge tag
  kDimension,               // matrix shape mismatch
};

/// Single exception type for the core. The C API maps `kind()` onto status
/// codes; everything else just propagates.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace nwa
