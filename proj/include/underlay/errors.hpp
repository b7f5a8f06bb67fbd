// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <stdexcept>

namespace underlay {

// Malformed input data: CSV rows, config syntax, CLI usage. Messages carry a
// "<source>:<line>:" prefix where a location is known.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An estimator cannot produce a fit: rank-deficient regression, too few
// samples, or samples with no spread.
class degeneracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A required configuration key is absent.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative numerics hit the iteration cap without converging.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace underlay
