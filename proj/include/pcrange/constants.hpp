#pragma once

#include <numbers>

namespace pcrange::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Exact SI values.
inline constexpr double speed_of_light = 299792458.0;     // m/s
inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double boltzmann = 1.380649e-23;         // J/K

}  // namespace pcrange::constants
