#pragma once

// CODATA 2018 values. Tests pin these so derived numbers stay reproducible.
namespace trimode::consts {

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double epsilon0 = 8.8541878128e-12; // F/m

inline constexpr const char* table_version = "CODATA-2018";

} // namespace trimode::consts
