#pragma once

namespace remimo::constants {

// CODATA 2018 exact values.
inline constexpr double c = 299792458.0;        // speed of light, m/s
inline constexpr double k_B = 1.380649e-23;     // Boltzmann constant, J/K

// Reference temperature used for sky-noise evaluation, K.
inline constexpr double T0 = 296.0;

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace remimo::constants
