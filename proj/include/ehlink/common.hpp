// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace ehlink {

using cplx = std::complex<double>;
using RandomStream = std::mt19937_64;

// Raised for invalid experiment configurations (exit code 1 at the CLI).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Gaussian tail Q(x) = P[N(0,1) > x]
inline double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

inline void require(bool cond, const char* msg) {
    if (!cond) throw ConfigError(msg);
}

} // namespace ehlink
