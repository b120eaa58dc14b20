#pragma once

#include "maglev/constants.hpp"
#include "maglev/particle.hpp"

#include <vector>

namespace maglev::dissipation {

/// Gas-damping summary for one (particle, gas) pair.
struct DampingReport {
    double gamma_com = 0.0;        // translational damping rate [rad/s]
    double gamma_lib = 0.0;        // librational damping rate [rad/s]
    double kn = 0.0;               // Knudsen number
    double mean_free_path = 0.0;   // [m]
    double viscosity = 0.0;        // mu_nu [Pa*s]
    bool lib_valid = false;        // free-molecular requirement Kn > 100
};

/// l = kB T / (sqrt(2) sigma_gas P). Zero pressure returns +infinity.
double mean_free_path(const GasEnvironment& gas, const Constants& c = constants());

/// Dilute-gas viscosity mu_nu = 2 sqrt(m kB T) / (3 sqrt(pi) sigma_gas).
double gas_viscosity(const GasEnvironment& gas, const Constants& c = constants());

double knudsen_number(const Particle& p, const GasEnvironment& gas,
                      const Constants& c = constants());

/// Translational gas damping, all Kn:
/// gamma/2pi = 3 mu_nu (a/m) 0.619/(0.619+Kn) (1+c_K),
/// c_K = 0.31 Kn / (0.785 + 1.152 Kn + Kn^2). Returned angular [rad/s].
double gamma_translational(const Particle& p, const GasEnvironment& gas,
                           const Constants& c = constants());

/// Librational gas damping in the free-molecular regime:
/// gamma/2pi = 30 c_acc mu_nu sigma_gas P / (8 pi sqrt(2) kB T rho a).
/// Only valid for Kn > 100; see DampingReport::lib_valid.
double gamma_librational(const Particle& p, const GasEnvironment& gas,
                         const Constants& c = constants());

DampingReport damping_report(const Particle& p, const GasEnvironment& gas,
                             const Constants& c = constants());

/// Q = omega / gamma; gamma = 0 returns +infinity.
double q_factor(double omega, double gamma);

/// Eddy currents induced in the magnet by the drive field. omega_value is
/// used as the bare number that enters the scaling formulas; pass either the
/// drive frequency in Hz or in rad/s depending on the convention wanted.
struct EddyCurrentResult {
    double j_ind;  // induced current density [A/m^2]
    double p_ind;  // dissipated power [W]
};
EddyCurrentResult eddy_current_magnet(const Particle& p, double omega_value, double bpp);

/// Q from an externally supplied (e.g. finite-element) loss power:
/// Q = 2 pi f * (1/2 m v^2) / P_loss.
double q_from_loss(double freq_hz, double mass, double velocity_amplitude, double p_loss);

struct QvsPressureRow {
    double pressure_mbar;
    double q_translational;
    double q_librational;  // NaN where the free-molecular requirement fails
    double kn;
    bool valid_lib;
};

/// Q curves over a pressure grid at fixed mode frequencies [rad/s].
std::vector<QvsPressureRow> q_vs_pressure_curve(const Particle& p, const GasEnvironment& gas_ref,
                                                double omega_com, double omega_lib,
                                                const std::vector<double>& pressures_mbar,
                                                const Constants& c = constants());

}  // namespace maglev::dissipation
