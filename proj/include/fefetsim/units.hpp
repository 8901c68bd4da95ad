#pragma once

namespace fefet {

// Vacuum permittivity, F/m.
inline constexpr double kEps0 = 8.8541878128e-12;

// Thermal voltage at 300 K, V.
inline constexpr double kThermalVoltage300K = 0.02585;

// Unit helpers. Internally everything is SI: m, s, V, A, C/m^2, V/m, F/m^2.
constexpr double nanometres(double v) { return v * 1e-9; }
constexpr double microseconds(double v) { return v * 1e-6; }
constexpr double nanoseconds(double v) { return v * 1e-9; }
constexpr double mv_per_cm_to_v_per_m(double mv_cm) { return mv_cm * 1e8; }
constexpr double uc_per_cm2_to_c_per_m2(double uc_cm2) { return uc_cm2 * 1e-2; }

}  // namespace fefet
