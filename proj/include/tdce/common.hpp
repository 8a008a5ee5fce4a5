#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdce {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Malformed or inconsistent user configuration (maps to CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested design point cannot be met by any parameter choice
/// (maps to CLI exit code 3).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPlanck = 6.62607015e-34;       // J*s
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace tdce
