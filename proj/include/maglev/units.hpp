#pragma once

#include <numbers>

// Unit conversions at the config/CLI boundary. Internally everything is SI
// (m, kg, s, T, Pa, A, rad/s); config keys carry their unit in the name.
namespace maglev::units {

inline constexpr double mbar_to_pa(double mbar) { return mbar * 100.0; }
inline constexpr double pa_to_mbar(double pa) { return pa / 100.0; }
inline constexpr double um_to_m(double um) { return um * 1e-6; }
inline constexpr double m_to_um(double m) { return m * 1e6; }
inline constexpr double nm_to_m(double nm) { return nm * 1e-9; }
inline constexpr double mm_to_m(double mm) { return mm * 1e-3; }
inline constexpr double mt_to_t(double mt) { return mt * 1e-3; }
inline constexpr double ma_to_a(double ma) { return ma * 1e-3; }
inline constexpr double hz_to_rad(double hz) { return 2.0 * std::numbers::pi * hz; }
inline constexpr double rad_to_hz(double rad) { return rad / (2.0 * std::numbers::pi); }

}  // namespace maglev::units
