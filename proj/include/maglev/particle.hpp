#pragma once

#include "maglev/constants.hpp"

namespace maglev {

/// Ferromagnetic microsphere. Immutable after construction; construction
/// validates the invariants and throws std::invalid_argument on violation.
struct Particle {
    double radius = 6.5e-6;      // a [m]
    double density = 3.6e3;      // rho_m [kg/m^3]
    double bsat0 = 0.45;         // remanent field B_sat(T0) [T]
    double zeta_th = -1.3e-3;    // thermal coefficient of remanence [1/K]
    double sigma_el = 0.67e6;    // electrical conductivity [S/m]
    double alpha_abs = 0.184;    // absorptivity at the readout wavelength
    double epsilon_em = 0.184;   // emissivity at the thermal wavelength
    double t0 = 300.0;           // reference temperature [K]

    Particle() = default;
    Particle(double radius_m, double density_kg_m3, double bsat_T,
             double zeta_th_per_K = -1.3e-3, double sigma_el_S_m = 0.67e6,
             double alpha = 0.184, double epsilon = 0.184, double t0_K = 300.0);

    [[nodiscard]] double volume() const;             // (4/3) pi a^3 [m^3]
    [[nodiscard]] double mass() const;               // rho_m V [kg]
    [[nodiscard]] double moment_of_inertia() const;  // (2/5) m a^2, solid sphere [kg*m^2]
    /// Dipole moment B_sat V / mu0 at the given remanent field [A*m^2].
    [[nodiscard]] double dipole_moment(double bsat, const Constants& c = constants()) const;
    [[nodiscard]] double dipole_moment(const Constants& c = constants()) const {
        return dipole_moment(bsat0, c);
    }
};

/// Residual-gas environment around the trap.
struct GasEnvironment {
    double pressure = 100.0;       // P_gas [Pa]
    double t_bath = 300.0;         // bath temperature [K]
    double m_gas = 4.81e-26;       // mean molecular mass (28.97 g/mol air) [kg]
    double d_m = 0.372e-9;         // mean molecular diameter [m]
    double c_acc = 0.65;           // thermal accommodation factor

    GasEnvironment() = default;
    GasEnvironment(double pressure_pa, double t_bath_K, double m_gas_kg = 4.81e-26,
                   double d_m_m = 0.372e-9, double c_acc_ = 0.65);

    [[nodiscard]] double cross_section() const;  // sigma_gas = pi d_m^2 [m^2]
};

}  // namespace maglev
