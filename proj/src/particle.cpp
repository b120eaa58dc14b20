#include "maglev/particle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maglev {

Particle::Particle(double radius_m, double density_kg_m3, double bsat_T, double zeta_th_per_K,
                   double sigma_el_S_m, double alpha, double epsilon, double t0_K)
    : radius(radius_m),
      density(density_kg_m3),
      bsat0(bsat_T),
      zeta_th(zeta_th_per_K),
      sigma_el(sigma_el_S_m),
      alpha_abs(alpha),
      epsilon_em(epsilon),
      t0(t0_K) {
    if (!(radius > 0.0)) throw std::invalid_argument("particle radius must be > 0");
    if (!(density > 0.0)) throw std::invalid_argument("particle density must be > 0");
    if (!(bsat0 > 0.0)) throw std::invalid_argument("particle bsat must be > 0");
    if (!(alpha_abs >= 0.0 && alpha_abs <= 1.0))
        throw std::invalid_argument("absorptivity must be in [0,1]");
    if (!(epsilon_em >= 0.0 && epsilon_em <= 1.0))
        throw std::invalid_argument("emissivity must be in [0,1]");
    if (!(sigma_el >= 0.0)) throw std::invalid_argument("conductivity must be >= 0");
    if (!(t0 > 0.0)) throw std::invalid_argument("reference temperature must be > 0");
}

double Particle::volume() const { return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius; }

double Particle::mass() const { return density * volume(); }

double Particle::moment_of_inertia() const { return 0.4 * mass() * radius * radius; }

double Particle::dipole_moment(double bsat, const Constants& c) const {
    if (!(bsat > 0.0)) throw std::domain_error("dipole_moment: bsat must be > 0");
    return bsat * volume() / c.mu0;
}

GasEnvironment::GasEnvironment(double pressure_pa, double t_bath_K, double m_gas_kg, double d_m_m,
                               double c_acc_)
    : pressure(pressure_pa), t_bath(t_bath_K), m_gas(m_gas_kg), d_m(d_m_m), c_acc(c_acc_) {
    if (!(pressure >= 0.0)) throw std::invalid_argument("gas pressure must be >= 0");
    if (!(t_bath > 0.0)) throw std::invalid_argument("bath temperature must be > 0");
    if (!(m_gas > 0.0)) throw std::invalid_argument("gas molecular mass must be > 0");
    if (!(d_m > 0.0)) throw std::invalid_argument("gas molecular diameter must be > 0");
    if (!(c_acc > 0.0 && c_acc <= 1.0))
        throw std::invalid_argument("accommodation factor must be in (0,1]");
}

double GasEnvironment::cross_section() const { return std::numbers::pi * d_m * d_m; }

}  // namespace maglev
