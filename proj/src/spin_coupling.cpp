#include "maglev/spin_coupling.hpp"

#include "maglev/trap_model.hpp"
#include "maglev/util.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace maglev::spin {

SpinConfig::SpinConfig(double d_m, double t2_star_s, double gamma_lib_rad_s, double t_bath_K)
    : d(d_m), t2_star(t2_star_s), gamma_lib_assumed(gamma_lib_rad_s), t_bath(t_bath_K) {
    if (!(d > 0.0)) throw std::invalid_argument("spin distance must be > 0");
    if (!(t2_star > 0.0)) throw std::invalid_argument("T2* must be > 0");
    if (!(gamma_lib_assumed >= 0.0)) throw std::invalid_argument("gamma_lib must be >= 0");
    if (!(t_bath > 0.0)) throw std::invalid_argument("bath temperature must be > 0");
}

double SpinConfig::gamma_s() const { return 2.0 * std::numbers::pi / t2_star; }

double theta_zpf(const Particle& p, double omega_lib, const Constants& c) {
    if (!(omega_lib > 0.0)) throw std::domain_error("theta_zpf: omega_lib must be > 0");
    return std::sqrt(c.hbar / (2.0 * p.moment_of_inertia() * omega_lib));
}

double coupling_g0(const Particle& p, const SpinConfig& spin, double omega_lib,
                   const Constants& c) {
    const double magnetization = p.bsat0 / c.mu0;  // M = B_sat / mu0
    const double ratio = p.radius / (p.radius + spin.d);
    return (1.0 / 6.0) * c.gamma_e * c.mu0 * magnetization * ratio * ratio * ratio *
           theta_zpf(p, omega_lib, c);
}

double thermal_occupation(double omega, double t_bath, const Constants& c) {
    if (!(omega > 0.0) || !(t_bath > 0.0))
        throw std::domain_error("thermal_occupation: omega and t_bath must be > 0");
    return 1.0 / std::expm1(c.hbar * omega / (c.kB * t_bath));
}

double heating_rate(double n_th, double gamma_lib_assumed) {
    if (n_th < 0.0 || gamma_lib_assumed < 0.0)
        throw std::domain_error("heating_rate: inputs must be >= 0");
    return n_th * gamma_lib_assumed;
}

double cooperativity(double g0, const SpinConfig& spin, double gamma_heat) {
    if (!(gamma_heat > 0.0)) throw std::domain_error("cooperativity: heating rate must be > 0");
    return 4.0 * g0 * g0 / (spin.gamma_s() * gamma_heat);
}

double cooling_rate(double g0, const SpinConfig& spin) { return 4.0 * g0 * g0 / spin.gamma_s(); }

double si_cooling_expression(double c_q, const SpinConfig& spin, double n_th) {
    if (!(spin.gamma_lib_assumed > 0.0) || !(n_th > 0.0))
        throw std::domain_error("si_cooling_expression: denominators must be > 0");
    return c_q / (spin.gamma_lib_assumed * n_th);
}

std::vector<Fig5bRow> coupling_vs_field(const std::vector<double>& b0_grid, const Particle& p,
                                        const SpinConfig& spin, const Constants& c) {
    std::vector<Fig5bRow> rows(b0_grid.size());
    parallel_for(b0_grid.size(), [&](std::size_t i) {
        const double b0 = b0_grid[i];
        Fig5bRow r{};
        r.b0 = b0;
        r.omega_lib = trap::libration_mode(b0, p, c);
        r.g0 = coupling_g0(p, spin, r.omega_lib, c);
        const double n_th = thermal_occupation(r.omega_lib, spin.t_bath, c);
        r.gamma_heat = heating_rate(n_th, spin.gamma_lib_assumed);
        r.c_q = cooperativity(r.g0, spin, r.gamma_heat);
        r.sideband_resolved = r.omega_lib > spin.gamma_s();
        r.coupling_dominates = r.g0 > r.gamma_heat;
        rows[i] = r;
    });
    return rows;
}

CooperativityMap cooperativity_map(const std::vector<double>& radius_grid,
                                   const std::vector<double>& distance_grid,
                                   const Particle& magnet_template, const SpinConfig& spin,
                                   double b0, const Constants& c) {
    CooperativityMap map;
    map.radius = radius_grid;
    map.distance = distance_grid;
    map.b0 = b0;
    map.c_q.assign(radius_grid.size() * distance_grid.size(), 0.0);

    parallel_for(radius_grid.size(), [&](std::size_t i) {
        Particle magnet = magnet_template;
        magnet.radius = radius_grid[i];
        const double omega_lib = trap::libration_mode(b0, magnet, c);
        const double n_th = thermal_occupation(omega_lib, spin.t_bath, c);
        const double gamma_heat = heating_rate(n_th, spin.gamma_lib_assumed);
        for (std::size_t j = 0; j < distance_grid.size(); ++j) {
            SpinConfig s = spin;
            s.d = std::max(distance_grid[j], kMinStandoff);
            const double g0 = coupling_g0(magnet, s, omega_lib, c);
            map.c_q[i * distance_grid.size() + j] = cooperativity(g0, s, gamma_heat);
        }
    });

    // C_q is monotone decreasing in d along a row; log-interpolate the
    // crossing of C_q = 1
    map.contour_d.assign(radius_grid.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < radius_grid.size(); ++i) {
        for (std::size_t j = 0; j + 1 < distance_grid.size(); ++j) {
            const double c0 = map.c_q[i * distance_grid.size() + j];
            const double c1 = map.c_q[i * distance_grid.size() + j + 1];
            if ((c0 - 1.0) * (c1 - 1.0) <= 0.0 && c0 != c1) {
                const double t = std::log(c0) / (std::log(c0) - std::log(c1));
                map.contour_d[i] =
                    distance_grid[j] + t * (distance_grid[j + 1] - distance_grid[j]);
                break;
            }
        }
    }
    return map;
}

}  // namespace maglev::spin
