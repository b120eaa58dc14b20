#include "maglev/dissipation.hpp"

#include "maglev/units.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace maglev::dissipation {

double mean_free_path(const GasEnvironment& gas, const Constants& c) {
    if (gas.pressure == 0.0) return std::numeric_limits<double>::infinity();
    return c.kB * gas.t_bath / (std::numbers::sqrt2 * gas.cross_section() * gas.pressure);
}

double gas_viscosity(const GasEnvironment& gas, const Constants& c) {
    return 2.0 * std::sqrt(gas.m_gas * c.kB * gas.t_bath) /
           (3.0 * std::sqrt(std::numbers::pi) * gas.cross_section());
}

double knudsen_number(const Particle& p, const GasEnvironment& gas, const Constants& c) {
    return mean_free_path(gas, c) / p.radius;
}

double gamma_translational(const Particle& p, const GasEnvironment& gas, const Constants& c) {
    if (!(gas.pressure > 0.0)) throw std::domain_error("gamma_translational: pressure must be > 0");
    const double kn = knudsen_number(p, gas, c);
    const double ck = 0.31 * kn / (0.785 + 1.152 * kn + kn * kn);
    const double hz = 3.0 * gas_viscosity(gas, c) * (p.radius / p.mass()) * 0.619 /
                      (0.619 + kn) * (1.0 + ck);
    return 2.0 * std::numbers::pi * hz;
}

double gamma_librational(const Particle& p, const GasEnvironment& gas, const Constants& c) {
    const double hz = 30.0 * gas.c_acc * gas_viscosity(gas, c) * gas.cross_section() *
                      gas.pressure /
                      (8.0 * std::numbers::pi * std::numbers::sqrt2 * c.kB * gas.t_bath *
                       p.density * p.radius);
    return 2.0 * std::numbers::pi * hz;
}

DampingReport damping_report(const Particle& p, const GasEnvironment& gas, const Constants& c) {
    DampingReport r;
    r.mean_free_path = mean_free_path(gas, c);
    r.viscosity = gas_viscosity(gas, c);
    r.kn = r.mean_free_path / p.radius;
    r.gamma_com = gas.pressure > 0.0 ? gamma_translational(p, gas, c) : 0.0;
    r.gamma_lib = gamma_librational(p, gas, c);
    r.lib_valid = r.kn > 100.0;
    return r;
}

double q_factor(double omega, double gamma) {
    if (gamma < 0.0) throw std::domain_error("q_factor: gamma must be >= 0");
    if (gamma == 0.0) return std::numeric_limits<double>::infinity();
    return omega / gamma;
}

EddyCurrentResult eddy_current_magnet(const Particle& p, double omega_value, double bpp) {
    if (!(omega_value > 0.0) || !(bpp > 0.0))
        throw std::invalid_argument("eddy_current_magnet: inputs must be positive");
    const double a3 = p.radius * p.radius * p.radius;
    const double j = omega_value * p.sigma_el * a3 * bpp;
    const double a9 = a3 * a3 * a3;
    const double power = omega_value * omega_value * p.sigma_el * a9 * bpp * bpp;
    return {j, power};
}

double q_from_loss(double freq_hz, double mass, double velocity_amplitude, double p_loss) {
    if (!(p_loss > 0.0)) throw std::domain_error("q_from_loss: p_loss must be > 0");
    return 2.0 * std::numbers::pi * freq_hz * (0.5 * mass * velocity_amplitude * velocity_amplitude) /
           p_loss;
}

std::vector<QvsPressureRow> q_vs_pressure_curve(const Particle& p, const GasEnvironment& gas_ref,
                                                double omega_com, double omega_lib,
                                                const std::vector<double>& pressures_mbar,
                                                const Constants& c) {
    std::vector<QvsPressureRow> rows;
    rows.reserve(pressures_mbar.size());
    for (const double pm : pressures_mbar) {
        if (!(pm > 0.0)) throw std::invalid_argument("q_vs_pressure_curve: pressures must be > 0");
        GasEnvironment gas = gas_ref;
        gas.pressure = units::mbar_to_pa(pm);
        const auto rep = damping_report(p, gas, c);
        QvsPressureRow row{};
        row.pressure_mbar = pm;
        row.kn = rep.kn;
        row.q_translational = q_factor(omega_com, rep.gamma_com);
        row.valid_lib = rep.lib_valid;
        row.q_librational = rep.lib_valid ? q_factor(omega_lib, rep.gamma_lib)
                                          : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace maglev::dissipation
