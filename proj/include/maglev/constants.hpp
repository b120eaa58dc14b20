#pragma once

#include <numbers>

namespace maglev {

/// Fundamental constants in SI units. A value object so tests can inject
/// modified values (e.g. switch gravity off); defaults are the CODATA-style
/// values used everywhere else.
struct Constants {
    double mu0 = 4.0 * std::numbers::pi * 1e-7;  // vacuum permeability [T*m/A]
    double kB = 1.380649e-23;                    // Boltzmann constant [J/K]
    double hbar = 1.054571817e-34;               // reduced Planck constant [J*s]
    double sigma_sb = 5.670374419e-8;            // Stefan-Boltzmann [W/m^2/K^4]
    double g_accel = 9.80665;                    // standard gravity [m/s^2]
    double gamma_e = 2.0 * std::numbers::pi * 28e9;  // electron gyromagnetic ratio [rad/s/T]

    [[nodiscard]] bool valid() const {
        return mu0 > 0 && kB > 0 && hbar > 0 && sigma_sb > 0 && g_accel >= 0 && gamma_e > 0;
    }
};

inline const Constants& constants() {
    static const Constants defaults{};
    return defaults;
}

}  // namespace maglev
