// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <cmath>

namespace underlay {

// dB <-> linear power ratio. The same mapping converts dBm to milliwatts, so
// differences of dBm quantities feed straight into db_to_linear.
inline double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

}  // namespace underlay
