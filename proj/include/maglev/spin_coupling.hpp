#pragma once

#include "maglev/constants.hpp"
#include "maglev/particle.hpp"

#include <vector>

namespace maglev::spin {

/// NV-coupling proposal parameters. Spin oriented along x; the magnet
/// librates about y with the moment tipping along x.
struct SpinConfig {
    double d = 0.7e-6;          // spin-to-surface distance [m]
    double t2_star = 0.5e-3;    // spin dephasing time [s]
    double gamma_lib_assumed = 2.0 * 3.14159265358979323846 * 1e-3;  // [rad/s]
    double t_bath = 4.0;        // [K]

    SpinConfig() = default;
    SpinConfig(double d_m, double t2_star_s, double gamma_lib_rad_s, double t_bath_K);

    [[nodiscard]] double gamma_s() const;  // spin linewidth 2 pi / T2* [rad/s]
};

/// Zero-point angular fluctuation sqrt(hbar / (2 I omega_lib)).
double theta_zpf(const Particle& p, double omega_lib, const Constants& c = constants());

/// Single-spin coupling rate g0 = (1/6) gamma_e mu0 M a^3/(a+d)^3 theta_zpf
/// with M = B_sat / mu0.
double coupling_g0(const Particle& p, const SpinConfig& spin, double omega_lib,
                   const Constants& c = constants());

/// Bose occupation (exp(hbar omega / kB T) - 1)^-1.
double thermal_occupation(double omega, double t_bath, const Constants& c = constants());

/// Gamma_lib = n_th gamma_lib.
double heating_rate(double n_th, double gamma_lib_assumed);

/// Quantum cooperativity C_q = 4 g0^2 / (gamma_s Gamma_lib).
double cooperativity(double g0, const SpinConfig& spin, double gamma_heat);

/// Standard sideband cooling rate 4 g0^2 / gamma_s [rad/s].
double cooling_rate(double g0, const SpinConfig& spin);

/// The source expression C_q / (gamma_lib n_th), reproduced verbatim; note it
/// carries units of seconds, not a rate. Kept side by side with cooling_rate
/// rather than silently corrected.
double si_cooling_expression(double c_q, const SpinConfig& spin, double n_th);

struct Fig5bRow {
    double b0;          // [T]
    double omega_lib;   // [rad/s]
    double g0;          // [rad/s]
    double gamma_heat;  // [rad/s]
    double c_q;
    bool sideband_resolved;  // omega_lib > gamma_s
    bool coupling_dominates; // g0 > Gamma_lib
};

/// Rates vs the bias field B0 for the given magnet at fixed spin distance.
std::vector<Fig5bRow> coupling_vs_field(const std::vector<double>& b0_grid, const Particle& p,
                                        const SpinConfig& spin, const Constants& c = constants());

struct CooperativityMap {
    std::vector<double> radius;    // row axis [m]
    std::vector<double> distance;  // column axis [m]
    std::vector<double> c_q;       // row-major
    /// Per-radius distance where C_q crosses 1 (log-interpolated); NaN when
    /// the row never crosses.
    std::vector<double> contour_d;
    double b0;  // bias field the map was computed at [T]
};

inline constexpr double kMinStandoff = 10e-9;  // d -> 0 divergence guard

/// C_q over (radius, distance) at fixed B0. The magnet template supplies
/// material parameters; radius is swept.
CooperativityMap cooperativity_map(const std::vector<double>& radius_grid,
                                   const std::vector<double>& distance_grid,
                                   const Particle& magnet_template, const SpinConfig& spin,
                                   double b0, const Constants& c = constants());

}  // namespace maglev::spin
